#include "aec/params.hpp"

namespace aec {

const char* to_string(StrandClass cls) {
  switch (cls) {
    case StrandClass::H: return "h";
    case StrandClass::RH: return "rh";
    case StrandClass::LH: return "lh";
  }
  return "?";
}

const char* to_string(NodeCategory cat) {
  switch (cat) {
    case NodeCategory::Top: return "top";
    case NodeCategory::Central: return "central";
    case NodeCategory::Bottom: return "bottom";
  }
  return "?";
}

CodeParams CodeParams::validate(int alpha, int s, int p) {
  if (alpha < 1 || alpha > 3) {
    throw ParamError(ParamError::Kind::InvalidAlpha,
                     "alpha must be 1, 2 or 3 (got " + std::to_string(alpha) + ")");
  }
  if (alpha == 1) {
    if (s != 1 || p != 0) {
      throw ParamError(ParamError::Kind::BadSingle,
                       "single entanglements use one chain: s=1, p=0 (got s=" +
                           std::to_string(s) + ", p=" + std::to_string(p) + ")");
    }
  } else {
    if (s < 1) {
      throw ParamError(ParamError::Kind::DeformedLattice,
                       "s must be >= 1 (got " + std::to_string(s) + ")");
    }
    if (p < s) {
      throw ParamError(ParamError::Kind::DeformedLattice,
                       "p < s deforms the lattice (got s=" + std::to_string(s) +
                           ", p=" + std::to_string(p) + ")");
    }
  }
  return CodeParams{alpha, s, p};
}

std::string CodeParams::label() const {
  if (alpha == 1) return "ae(1,-,-)";
  return "ae(" + std::to_string(alpha) + "," + std::to_string(s) + "," +
         std::to_string(p) + ")";
}

}  // namespace aec
