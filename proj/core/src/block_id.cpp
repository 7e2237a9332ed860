#include "aec/block_id.hpp"

#include <charconv>

#include "aec/lattice.hpp"

namespace aec {

std::size_t BlockIdHash::operator()(const BlockId& id) const {
  // splitmix64 finalizer over the packed fields
  std::uint64_t x = (static_cast<std::uint64_t>(id.i) << 20) ^
                    (static_cast<std::uint64_t>(id.j) << 2) ^
                    (static_cast<std::uint64_t>(id.cls) << 1) ^
                    static_cast<std::uint64_t>(id.kind);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return static_cast<std::size_t>(x);
}

std::string canonical_id(const BlockId& id, const CodeParams& params) {
  if (id.is_node()) return "d" + std::to_string(id.i);
  std::string out = "p" + std::to_string(id.i) + "-" + std::to_string(id.j);
  if (edge_class_multiplicity(id.i, id.j, params) > 1) {
    out += "-";
    out += to_string(id.cls);
  }
  return out;
}

namespace {

std::optional<BlockIndex> parse_index(std::string_view text) {
  BlockIndex value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    return std::nullopt;
  }
  return value;
}

std::optional<StrandClass> parse_class(std::string_view text) {
  if (text == "h") return StrandClass::H;
  if (text == "rh") return StrandClass::RH;
  if (text == "lh") return StrandClass::LH;
  return std::nullopt;
}

}  // namespace

std::optional<BlockId> parse_id(std::string_view text, const CodeParams& params) {
  if (text.size() < 2) return std::nullopt;
  if (text[0] == 'd') {
    auto i = parse_index(text.substr(1));
    if (!i) return std::nullopt;
    return BlockId::node(*i);
  }
  if (text[0] != 'p') return std::nullopt;
  text.remove_prefix(1);

  const auto dash1 = text.find('-');
  if (dash1 == std::string_view::npos) return std::nullopt;
  const auto i = parse_index(text.substr(0, dash1));
  if (!i) return std::nullopt;

  std::string_view rest = text.substr(dash1 + 1);
  const auto dash2 = rest.find('-');
  std::optional<StrandClass> explicit_cls;
  if (dash2 != std::string_view::npos) {
    explicit_cls = parse_class(rest.substr(dash2 + 1));
    if (!explicit_cls) return std::nullopt;
    rest = rest.substr(0, dash2);
  }
  const auto j = parse_index(rest);
  if (!j) return std::nullopt;

  if (explicit_cls) {
    if (output_parity_index(*i, *explicit_cls, params) != *j) return std::nullopt;
    return BlockId::edge(*explicit_cls, *i, *j);
  }
  // Infer the class; reject when ambiguous (those ids always carry the tag).
  std::optional<StrandClass> found;
  for (StrandClass cls : params.classes()) {
    if (output_parity_index(*i, cls, params) == *j) {
      if (found) return std::nullopt;
      found = cls;
    }
  }
  if (!found) return std::nullopt;
  return BlockId::edge(*found, *i, *j);
}

}  // namespace aec
