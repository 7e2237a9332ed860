#include <benchmark/benchmark.h>

#include "aec/entangler.hpp"
#include "aec/repair.hpp"
#include "aec/rng.hpp"

using namespace aec;

namespace {

Payload random_payload(Rng& rng, std::size_t size) {
  Payload payload(size);
  for (auto& byte : payload) byte = static_cast<std::uint8_t>(rng.next_u64());
  return payload;
}

void BM_Entangle(benchmark::State& state) {
  const CodeParams params = CodeParams::validate(3, 2, 5);
  const std::size_t block_size = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Payload data = random_payload(rng, block_size);
  Entangler entangler(params, block_size);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entangler.entangle(data));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(block_size));
}
BENCHMARK(BM_Entangle)->Arg(4096)->Arg(65536);

void BM_RepairNode(benchmark::State& state) {
  const CodeParams params = CodeParams::validate(3, 5, 5);
  const std::size_t block_size = 4096;
  Rng rng(2);
  BlockStore store(params, block_size);
  Entangler entangler(params, block_size);
  for (int i = 0; i < 200; ++i) {
    EntangleResult result = entangler.entangle(random_payload(rng, block_size));
    store.put(result.node, Payload(block_size, 0));
    for (EntangledParity& parity : result.parities) {
      store.put(parity.id, std::move(parity.payload));
    }
  }
  store.set_counter(200);
  store.set_available(BlockId::node(100), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(repair_node(100, store, params));
  }
}
BENCHMARK(BM_RepairNode);

}  // namespace
