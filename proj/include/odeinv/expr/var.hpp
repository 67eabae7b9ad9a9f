#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace odeinv {

enum class VarKind : std::uint8_t { X = 0, Jet = 1, Aux = 2 };

/// A coordinate on jet space (x or y^i_r) or an auxiliary formal symbol.
///
/// Variables are totally ordered: x < y1_0 < y1_1 < ... < y2_0 < ... < aux
/// symbols in alphabetical order. Monomial orders and printing use this.
class VarId {
 public:
  static constexpr std::size_t kMaxAuxName = 11;

  constexpr VarId() = default;

  static VarId x() { return VarId{}; }
  static VarId jet(int component, int order);
  /// Throws ParseError when the name is empty, too long, or collides with
  /// jet-variable surface syntax.
  static VarId aux(std::string_view name);

  VarKind kind() const noexcept { return kind_; }
  bool is_x() const noexcept { return kind_ == VarKind::X; }
  bool is_jet() const noexcept { return kind_ == VarKind::Jet; }
  bool is_aux() const noexcept { return kind_ == VarKind::Aux; }

  /// 1-based component index i of y^i_r.
  int component() const noexcept { return comp_; }
  /// Derivative order r of y^i_r.
  int order() const noexcept { return order_; }
  std::string_view name() const noexcept { return std::string_view(name_.data()); }

  std::string str() const;

  friend auto operator<=>(const VarId&, const VarId&) = default;
  friend bool operator==(const VarId&, const VarId&) = default;

 private:
  VarKind kind_ = VarKind::X;
  std::uint16_t comp_ = 0;
  std::uint16_t order_ = 0;
  std::array<char, kMaxAuxName + 1> name_{};
};

/// True when `name` would be read by the parser as x or a jet variable.
bool looks_like_jet_syntax(std::string_view name);

}  // namespace odeinv
