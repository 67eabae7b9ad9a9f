#pragma once

#include <functional>
#include <string>
#include <vector>

#include "odeinv/expr/expr.hpp"

namespace odeinv {

/// Dense matrix of expressions, row-major.
class MatrixExpr {
 public:
  MatrixExpr() = default;
  MatrixExpr(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static MatrixExpr zero(std::size_t n) { return MatrixExpr(n, n); }
  static MatrixExpr identity(std::size_t n);
  static MatrixExpr scalar(std::size_t n, const Expr& s);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Expr& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Expr>& entries() const noexcept { return a_; }

  friend MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b);
  friend MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b);
  friend MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b);
  friend MatrixExpr operator*(const Expr& s, const MatrixExpr& a);
  MatrixExpr operator-() const;
  MatrixExpr& operator+=(const MatrixExpr& b) { return *this = *this + b; }
  MatrixExpr& operator-=(const MatrixExpr& b) { return *this = *this - b; }

  MatrixExpr map(const std::function<Expr(const Expr&)>& f) const;
  MatrixExpr transpose() const;
  Expr trace() const;
  Expr determinant() const;
  MatrixExpr adjugate() const;
  /// Throws DivisionByZero for a singular matrix.
  MatrixExpr inverse() const;

  /// Syntactic zero test of every entry (exact when no aux symbols occur).
  bool is_zero(bool allow_syntactic = false) const;
  bool has_aux() const;

  friend bool operator==(const MatrixExpr&, const MatrixExpr&) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Expr> a_;
};

/// [a, b] = ab - ba.
MatrixExpr commutator(const MatrixExpr& a, const MatrixExpr& b);

}  // namespace odeinv
