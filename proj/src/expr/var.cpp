#include "odeinv/expr/var.hpp"

#include <algorithm>
#include <cctype>

#include "odeinv/error.hpp"

namespace odeinv {

VarId VarId::jet(int component, int order) {
  if (component < 1 || component > 0xFFFF || order < 0 || order > 0xFFFF) {
    throw ShapeError("jet index out of range: y" + std::to_string(component) + "_" +
                     std::to_string(order));
  }
  VarId v;
  v.kind_ = VarKind::Jet;
  v.comp_ = static_cast<std::uint16_t>(component);
  v.order_ = static_cast<std::uint16_t>(order);
  return v;
}

VarId VarId::aux(std::string_view name) {
  if (name.empty() || name.size() > kMaxAuxName) {
    throw ParseError("auxiliary symbol name must have 1.." + std::to_string(kMaxAuxName) +
                     " characters: '" + std::string(name) + "'");
  }
  if (looks_like_jet_syntax(name)) {
    throw ParseError("auxiliary symbol '" + std::string(name) + "' clashes with jet syntax");
  }
  VarId v;
  v.kind_ = VarKind::Aux;
  std::copy(name.begin(), name.end(), v.name_.begin());
  return v;
}

std::string VarId::str() const {
  switch (kind_) {
    case VarKind::X:
      return "x";
    case VarKind::Jet:
      return "y" + std::to_string(comp_) + "_" + std::to_string(order_);
    case VarKind::Aux:
      return std::string(name());
  }
  return {};
}

bool looks_like_jet_syntax(std::string_view name) {
  if (name == "x") return true;
  if (name.size() < 4 || name[0] != 'y') return false;
  auto us = name.find('_');
  if (us == std::string_view::npos || us == 1 || us + 1 == name.size()) return false;
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  return digits(name.substr(1, us - 1)) && digits(name.substr(us + 1));
}

}  // namespace odeinv
