#pragma once

#include <string>
#include <string_view>

#include "portgnn/errors.hpp"

namespace portgnn {

// The three message-passing disciplines: set broadcast, multiset broadcast,
// and per-port vectors under a consistent port numbering.
enum class ModelKind { SB, MB, VVC };

inline std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::SB: return "sb";
    case ModelKind::MB: return "mb";
    case ModelKind::VVC: return "vvc";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "sb" || s == "SB") return ModelKind::SB;
  if (s == "mb" || s == "MB") return ModelKind::MB;
  if (s == "vvc" || s == "VVC") return ModelKind::VVC;
  throw InvalidParams("unknown model kind: " + std::string(s));
}

}  // namespace portgnn
