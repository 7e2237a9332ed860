// aecode: encode and repair files against an entanglement block store, run
// disaster-recovery sweeps against RS and replication baselines, search for
// minimal erasure patterns, and print anti-tampering parity sets.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aec/block_store.hpp"
#include "aec/entangler.hpp"
#include "aec/lattice.hpp"
#include "aec/me_analysis.hpp"
#include "aec/repair.hpp"
#include "aec/scenario.hpp"
#include "aec/tamper.hpp"

namespace fs = std::filesystem;
using namespace aec;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("AECODE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

std::vector<std::uint64_t> default_seeds() {
  if (const char* env = std::getenv("AECODE_SEED")) {
    return {std::strtoull(env, nullptr, 10)};
  }
  return {1, 2, 3, 4, 5};
}

CodeParams params_from(int alpha, int s, int p) {
  if (alpha == 1 && s == 0 && p == 0) return CodeParams::validate(1, 1, 0);
  return CodeParams::validate(alpha, s, p);
}

Payload read_block(std::istream& in, std::size_t block_size, bool& eof) {
  Payload data(block_size, 0);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(block_size));
  const auto got = in.gcount();
  eof = got == 0;
  return data;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return file;
}

// ---------------------------------------------------------------------------

int cmd_encode(const std::string& input, std::int64_t synthetic,
               const CodeParams& params, std::size_t block_size,
               const std::string& store_path, std::uint64_t seed) {
  BlockStore store(params, block_size);
  Entangler entangler(params, block_size);

  const auto ingest = [&](std::span<const std::uint8_t> data) {
    EntangleResult result = entangler.entangle(data);
    store.put(result.node, Payload(data.begin(), data.end()));
    for (EntangledParity& parity : result.parities) {
      store.put(parity.id, std::move(parity.payload));
    }
  };

  std::uint64_t input_bytes = 0;
  if (!input.empty()) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file " + input);
    for (;;) {
      bool eof = false;
      std::streampos before = in.tellg();
      Payload data = read_block(in, block_size, eof);
      if (eof) break;
      (void)before;
      ingest(data);
    }
    input_bytes = static_cast<std::uint64_t>(fs::file_size(input));
  } else {
    Rng rng(seed);
    for (std::int64_t b = 0; b < synthetic; ++b) {
      Payload data(block_size);
      for (auto& byte : data) byte = static_cast<std::uint8_t>(rng.next_u64());
      ingest(data);
    }
    input_bytes = static_cast<std::uint64_t>(synthetic) * block_size;
  }

  store.set_counter(entangler.counter());
  store.set_input_size(input_bytes);
  store.save(store_path);

  const std::int64_t data_blocks = entangler.counter();
  std::printf("store=%s\n", store_path.c_str());
  std::printf("data_blocks=%lld\n", static_cast<long long>(data_blocks));
  std::printf("parity_blocks=%lld\n",
              static_cast<long long>(data_blocks * params.alpha));
  std::printf("block_size=%zu\n", block_size);
  std::printf("storage_overhead=%.0f%%\n",
              ae_additional_storage_percent(params.alpha));
  return 0;
}

int cmd_repair(const std::string& store_path, const std::string& erase,
               const std::string& extract, RepairMode mode, int max_rounds) {
  BlockStore store = BlockStore::load(store_path);
  const CodeParams params = store.params();

  if (!erase.empty()) {
    std::stringstream stream(erase);
    std::string token;
    while (std::getline(stream, token, ',')) {
      const auto id = parse_id(token, params);
      if (!id) throw std::runtime_error("bad block id: " + token);
      store.set_available(*id, false);
    }
  }

  const std::size_t missing = store.missing_ids().size();
  const RepairReport report = repair_all(store, params, mode, max_rounds);
  store.save(store_path);

  std::printf("missing_blocks=%zu\n", missing);
  for (std::size_t r = 0; r < report.rounds.size(); ++r) {
    std::printf("round_%zu_repairs=%lld\n", r + 1,
                static_cast<long long>(report.rounds[r].repaired_blocks));
  }
  std::printf("unrecovered=%lld\n", static_cast<long long>(report.unrecovered_blocks));
  if (report.unrecovered_blocks > 0) {
    for (const BlockId& id : store.missing_ids()) {
      std::printf("lost=%s\n", canonical_id(id, params).c_str());
    }
  }

  if (!extract.empty()) {
    if (report.unrecovered_data > 0) {
      std::fprintf(stderr, "cannot extract: data blocks remain unrecovered\n");
      return 2;
    }
    std::ofstream out(extract, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open extract file " + extract);
    std::uint64_t remaining = store.input_size();
    for (BlockIndex i = 1; i <= store.counter() && remaining > 0; ++i) {
      const BlockRecord* rec = store.find(BlockId::node(i));
      const std::uint64_t take =
          std::min<std::uint64_t>(remaining, rec->payload.size());
      out.write(reinterpret_cast<const char*>(rec->payload.data()),
                static_cast<std::streamsize>(take));
      remaining -= take;
    }
    std::printf("extracted=%s\n", extract.c_str());
  }
  return report.unrecovered_blocks == 0 ? 0 : 1;
}

int cmd_simulate(const std::vector<std::string>& scheme_labels,
                 std::int64_t blocks, bool paper_scale, std::uint32_t locations,
                 const std::vector<int>& fraction_percents,
                 const std::vector<std::uint64_t>& seeds, RepairMode mode,
                 const std::string& out_path, int jobs) {
  std::vector<SchemeSpec> schemes;
  for (const std::string& label : scheme_labels) {
    const auto scheme = SchemeSpec::parse(label);
    if (!scheme) throw std::runtime_error("bad scheme: " + label);
    schemes.push_back(*scheme);
  }
  std::vector<double> fractions;
  for (const int percent : fraction_percents) {
    if (percent < 0 || percent > 100) throw std::runtime_error("bad fraction");
    fractions.push_back(percent / 100.0);
  }
  if (paper_scale) blocks = 1'000'000;

  const std::vector<SweepRow> rows =
      sweep(schemes, blocks, locations, fractions, seeds, mode, jobs);

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  write_sweep_csv(out, rows);
  out.flush();

  // Per-scheme summary: mean data loss / vulnerable / rounds by fraction.
  std::printf("# %lld data blocks, %u locations, %zu seeds\n",
              static_cast<long long>(blocks), locations, seeds.size());
  for (const SchemeSpec& scheme : schemes) {
    std::printf("%-12s", scheme.label().c_str());
    for (const double fraction : fractions) {
      double loss = 0.0, vulnerable = 0.0, rounds = 0.0;
      int n = 0;
      for (const SweepRow& row : rows) {
        if (row.config.scheme.label() != scheme.label() ||
            row.config.fraction != fraction) {
          continue;
        }
        loss += static_cast<double>(row.metrics.data_loss);
        vulnerable += static_cast<double>(row.metrics.vulnerable_data);
        rounds += static_cast<double>(row.metrics.rounds);
        ++n;
      }
      if (n > 0) {
        std::printf("  %3.0f%%: loss=%.1f vuln=%.1f rounds=%.1f",
                    fraction * 100.0, loss / n, vulnerable / n, rounds / n);
      }
    }
    std::printf("\n");
  }
  return 0;
}

int cmd_analyze_me(const std::vector<std::string>& code_labels,
                   const std::vector<int>& xs, BlockIndex window, int max_size,
                   const std::string& out_path) {
  std::vector<MeCsvRow> rows;
  for (const std::string& label : code_labels) {
    const auto scheme = SchemeSpec::parse(label);
    if (!scheme || scheme->kind != SchemeSpec::Kind::Ae) {
      throw std::runtime_error("analyze-me expects ae(...) codes, got " + label);
    }
    for (const int x : xs) {
      MeCsvRow row;
      row.params = scheme->ae;
      row.x = x;
      row.result = min_me_size(scheme->ae, x, window, max_size);
      rows.push_back(std::move(row));
    }
  }

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  write_me_csv(out, rows);
  out.flush();
  for (const MeCsvRow& row : rows) {
    std::printf("%s x=%d min_size=%s%s\n", row.params.label().c_str(), row.x,
                row.result.min_size ? std::to_string(*row.result.min_size).c_str()
                                    : "none",
                row.result.complete ? "" : " (budget exceeded)");
  }
  return 0;
}

int cmd_tamper(const CodeParams& params, BlockIndex node, BlockIndex window_end) {
  const std::vector<BlockId> blocks = tamper_set(node, window_end, params);
  for (const BlockId& id : blocks) {
    std::printf("%s\n", canonical_id(id, params).c_str());
  }
  std::printf("count=%zu\n", blocks.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "aecode: alpha entanglement codes - streaming encoder, two-block "
      "repair decoder, disaster-recovery simulator and minimal-erasure "
      "analyzer"};
  app.require_subcommand(1);

  // Shared code parameters.
  int alpha = 3, s = 2, p = 5;
  std::size_t block_size = 4096;

  // encode
  auto* encode = app.add_subcommand("encode", "split input into blocks and entangle");
  std::string encode_input;
  std::int64_t synthetic = 0;
  std::string encode_store;
  encode->add_option("--input", encode_input, "input file to encode");
  encode->add_option("--synthetic", synthetic, "encode N random blocks instead");
  encode->add_option("--alpha", alpha, "parities per data block (1..3)");
  encode->add_option("--s", s, "horizontal strands");
  encode->add_option("--p", p, "helical strands per class");
  encode->add_option("--block-size", block_size, "block size in bytes");
  encode->add_option("--out", encode_store, "block store directory")->required();

  // repair
  auto* repair = app.add_subcommand("repair", "repair missing blocks in a store");
  std::string repair_store, repair_erase, repair_extract, maintenance = "full";
  int max_rounds = 100;
  repair->add_option("--store", repair_store, "block store directory")->required();
  repair->add_option("--erase", repair_erase, "comma-separated ids to mark lost");
  repair->add_option("--extract", repair_extract, "reassemble data into this file");
  repair->add_option("--maintenance", maintenance, "full|minimal");
  repair->add_option("--max-rounds", max_rounds, "repair round cap");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "disaster-recovery sweep");
  std::vector<std::string> schemes = {"ae(1)",    "ae(2,2,5)", "ae(3,2,5)",
                                      "rs(10,4)", "rs(8,2)",   "rs(5,5)",
                                      "rs(4,12)", "rep(2)",    "rep(3)",
                                      "rep(4)"};
  std::int64_t blocks = 100'000;
  bool paper_scale = false;
  std::uint32_t locations = 100;
  std::vector<int> fractions = {10, 20, 30, 40, 50};
  std::vector<std::uint64_t> seeds = default_seeds();
  std::string sim_out;
  int jobs = 1;
  simulate->add_option("--schemes", schemes,
                       "schemes to compare, e.g. ae(3,2,5) rs(10,4) rep(3)");
  simulate->add_option("--blocks", blocks, "data blocks per scenario");
  simulate->add_flag("--paper-scale", paper_scale, "run with 1e6 data blocks");
  simulate->add_option("--locations", locations, "failure domains");
  simulate->add_option("--fractions", fractions, "disaster sizes in percent");
  simulate->add_option("--seeds", seeds, "seeds (default 1..5 or AECODE_SEED)");
  simulate->add_option("--maintenance", maintenance, "full|minimal");
  simulate->add_option("--out", sim_out, "CSV output path (default stdout)");
  simulate->add_option("--jobs", jobs, "worker threads");

  // analyze-me
  auto* analyze = app.add_subcommand("analyze-me", "minimal erasure search");
  std::vector<std::string> codes = {"ae(1)", "ae(2,2,2)", "ae(3,1,4)"};
  std::vector<int> xs = {2};
  std::int64_t window = 60;
  int max_size = 20;
  std::string me_out;
  analyze->add_option("--codes", codes, "ae(...) settings to analyze");
  analyze->add_option("--x", xs, "data-loss counts to search for");
  analyze->add_option("--window", window, "lattice window in nodes (<= 60)");
  analyze->add_option("--max-size", max_size, "pattern size cap (<= 20)");
  analyze->add_option("--out", me_out, "CSV output path (default stdout)");

  // tamper
  auto* tamper = app.add_subcommand("tamper", "parities an attacker must rewrite");
  BlockIndex tamper_node = 1, tamper_end = 1;
  tamper->add_option("--alpha", alpha, "parities per data block (1..3)");
  tamper->add_option("--s", s, "horizontal strands");
  tamper->add_option("--p", p, "helical strands per class");
  tamper->add_option("--node", tamper_node, "targeted data block index")->required();
  tamper->add_option("--window-end", tamper_end, "last lattice index considered")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed()) {
      if (encode_input.empty() == (synthetic == 0)) {
        throw std::runtime_error("encode needs exactly one of --input / --synthetic");
      }
      return cmd_encode(encode_input, synthetic, params_from(alpha, s, p),
                        block_size, encode_store, default_seed());
    }
    const RepairMode mode = maintenance == "minimal"
                                ? RepairMode::MinimalMaintenance
                                : RepairMode::FullMaintenance;
    if (maintenance != "full" && maintenance != "minimal") {
      throw std::runtime_error("--maintenance must be full or minimal");
    }
    if (repair->parsed()) {
      return cmd_repair(repair_store, repair_erase, repair_extract, mode, max_rounds);
    }
    if (simulate->parsed()) {
      return cmd_simulate(schemes, blocks, paper_scale, locations, fractions,
                          seeds, mode, sim_out, jobs);
    }
    if (analyze->parsed()) {
      return cmd_analyze_me(codes, xs, window, max_size, me_out);
    }
    if (tamper->parsed()) {
      return cmd_tamper(params_from(alpha, s, p), tamper_node, tamper_end);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
