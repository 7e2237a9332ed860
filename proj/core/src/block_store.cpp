#include "aec/block_store.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include "aec/lattice.hpp"

namespace aec {

BlockStore::BlockStore(const CodeParams& params, std::size_t block_size)
    : params_(params), block_size_(block_size) {}

void BlockStore::put(const BlockId& id, Payload payload) {
  BlockRecord rec;
  rec.payload = std::move(payload);
  blocks_[id] = std::move(rec);
}

void BlockStore::put_placeholder(const BlockId& id, bool available) {
  BlockRecord rec;
  rec.available = available;
  blocks_[id] = std::move(rec);
}

bool BlockStore::available(const BlockId& id) const {
  const auto it = blocks_.find(id);
  return it != blocks_.end() && it->second.available;
}

const BlockRecord* BlockStore::find(const BlockId& id) const {
  const auto it = blocks_.find(id);
  return it == blocks_.end() ? nullptr : &it->second;
}

void BlockStore::set_available(const BlockId& id, bool available) {
  const auto it = blocks_.find(id);
  if (it == blocks_.end()) throw std::out_of_range("unknown block id");
  it->second.available = available;
}

void BlockStore::set_location(const BlockId& id, std::int32_t location) {
  const auto it = blocks_.find(id);
  if (it == blocks_.end()) throw std::out_of_range("unknown block id");
  it->second.location = location;
}

void BlockStore::mark_repaired(const BlockId& id, Payload payload) {
  const auto it = blocks_.find(id);
  if (it == blocks_.end()) throw std::out_of_range("unknown block id");
  it->second.payload = std::move(payload);
  it->second.available = true;
  it->second.repaired = true;
}

std::vector<BlockId> BlockStore::missing_ids() const {
  std::vector<BlockId> missing;
  for (const auto& [id, rec] : blocks_) {
    if (!rec.available) missing.push_back(id);
  }
  std::sort(missing.begin(), missing.end());
  return missing;
}

namespace {

constexpr const char* kManifestName = "manifest.txt";
constexpr const char* kBlocksDir = "blocks";

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw std::runtime_error("bad manifest value for " + key + ": " + text);
  }
}

}  // namespace

void BlockStore::save(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir / kBlocksDir);

  std::ofstream manifest(dir / kManifestName, std::ios::trunc);
  if (!manifest) throw std::runtime_error("cannot write manifest in " + dir.string());
  manifest << "format=aec-store-1\n"
           << "alpha=" << params_.alpha << "\n"
           << "s=" << params_.s << "\n"
           << "p=" << params_.p << "\n"
           << "block_size=" << block_size_ << "\n"
           << "counter=" << counter_ << "\n"
           << "input_size=" << input_size_ << "\n";
  manifest.close();

  for (const auto& [id, rec] : blocks_) {
    const fs::path file = dir / kBlocksDir / canonical_id(id, params_);
    if (!rec.available) {
      fs::remove(file);
      continue;
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write block file " + file.string());
    out.write(reinterpret_cast<const char*>(rec.payload.data()),
              static_cast<std::streamsize>(rec.payload.size()));
  }
}

BlockStore BlockStore::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::ifstream manifest(dir / kManifestName);
  if (!manifest) throw std::runtime_error("no manifest in " + dir.string());

  int alpha = 0, s = 0, p = 0;
  std::uint64_t block_size = 0, counter = 0, input_size = 0;
  std::string line;
  while (std::getline(manifest, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "alpha") alpha = static_cast<int>(parse_u64(value, key));
    else if (key == "s") s = static_cast<int>(parse_u64(value, key));
    else if (key == "p") p = static_cast<int>(parse_u64(value, key));
    else if (key == "block_size") block_size = parse_u64(value, key);
    else if (key == "counter") counter = parse_u64(value, key);
    else if (key == "input_size") input_size = parse_u64(value, key);
  }
  const CodeParams params = CodeParams::validate(alpha, s, p);

  BlockStore store(params, block_size);
  store.counter_ = static_cast<BlockIndex>(counter);
  store.input_size_ = input_size;

  const auto read_block = [&](const BlockId& id) {
    const fs::path file = dir / kBlocksDir / canonical_id(id, params);
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      store.put_placeholder(id, false);
      return;
    }
    Payload payload((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    if (payload.size() != block_size) {
      throw std::runtime_error("block file " + file.string() + " has wrong size");
    }
    store.put(id, std::move(payload));
  };

  for (BlockIndex i = 1; i <= store.counter_; ++i) {
    read_block(BlockId::node(i));
    for (StrandClass cls : params.classes()) {
      read_block(make_output_edge(i, cls, params));
    }
  }
  return store;
}

}  // namespace aec
