#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace aec {

using BlockIndex = std::int64_t;

/// A strand is an alternating chain of data and parity blocks. Horizontal
/// strands run along the lattice rows; the two helical classes wind around
/// the lattice with slope 1 in opposite directions.
enum class StrandClass : std::uint8_t { H = 0, RH = 1, LH = 2 };

enum class NodeCategory : std::uint8_t { Top, Central, Bottom };

const char* to_string(StrandClass cls);
const char* to_string(NodeCategory cat);

class ParamError : public std::invalid_argument {
 public:
  enum class Kind { InvalidAlpha, DeformedLattice, BadSingle };

  ParamError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Code parameters AE(alpha, s, p).
///
///   alpha  parities produced per data block (1..3)
///   s      number of horizontal strands
///   p      number of helical strands per class
///
/// Valid settings: alpha=1 forces s=1, p=0 (a single chain); for alpha>1
/// the lattice is well formed only when p >= s.
struct CodeParams {
  int alpha = 1;
  int s = 1;
  int p = 0;

  /// Checks the constraints above and throws ParamError naming the violated
  /// rule otherwise.
  static CodeParams validate(int alpha, int s, int p);

  int strand_count() const { return s + (alpha - 1) * p; }

  /// Strand classes in use, in the fixed order H, RH, LH. Double
  /// entanglements use the right-handed class as the canonical helical
  /// class.
  std::span<const StrandClass> classes() const {
    static constexpr std::array<StrandClass, 3> all = {
        StrandClass::H, StrandClass::RH, StrandClass::LH};
    return std::span<const StrandClass>(all.data(),
                                        static_cast<std::size_t>(alpha));
  }

  /// Number of strands of one class (s for H, p for the helical classes).
  int strands_of(StrandClass cls) const {
    return cls == StrandClass::H ? s : p;
  }

  bool operator==(const CodeParams&) const = default;

  std::string label() const;  // e.g. "ae(3,2,5)"
};

}  // namespace aec
