#include "odeinv/expr/matrix.hpp"

#include "odeinv/error.hpp"

namespace odeinv {

namespace {

void require_same_shape(const MatrixExpr& a, const MatrixExpr& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string("matrix shape mismatch in ") + op);
  }
}

MatrixExpr minor_matrix(const MatrixExpr& a, std::size_t skip_r, std::size_t skip_c) {
  MatrixExpr m(a.rows() - 1, a.cols() - 1);
  for (std::size_t i = 0, mi = 0; i < a.rows(); ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0, mj = 0; j < a.cols(); ++j) {
      if (j == skip_c) continue;
      m(mi, mj++) = a(i, j);
    }
    ++mi;
  }
  return m;
}

}  // namespace

MatrixExpr MatrixExpr::identity(std::size_t n) { return scalar(n, Expr(1)); }

MatrixExpr MatrixExpr::scalar(std::size_t n, const Expr& s) {
  MatrixExpr m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b) {
  require_same_shape(a, b, "+");
  MatrixExpr r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b) {
  require_same_shape(a, b, "-");
  MatrixExpr r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix shape mismatch in *");
  MatrixExpr r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Expr& ail = a(i, l);
      if (ail.is_syntactic_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(l, j).is_syntactic_zero()) r(i, j) += ail * b(l, j);
      }
    }
  }
  return r;
}

MatrixExpr operator*(const Expr& s, const MatrixExpr& a) {
  MatrixExpr r = a;
  for (auto& e : r.a_) e = s * e;
  return r;
}

MatrixExpr MatrixExpr::operator-() const {
  MatrixExpr r = *this;
  for (auto& e : r.a_) e = -e;
  return r;
}

MatrixExpr MatrixExpr::map(const std::function<Expr(const Expr&)>& f) const {
  MatrixExpr r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f(a_[i]);
  return r;
}

MatrixExpr MatrixExpr::transpose() const {
  MatrixExpr r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

Expr MatrixExpr::trace() const {
  if (!is_square()) throw ShapeError("trace of a non-square matrix");
  Expr t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Expr MatrixExpr::determinant() const {
  if (!is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return Expr(1);
  if (n == 1) return a_[0];
  if (n == 2) return a_[0] * a_[3] - a_[1] * a_[2];
  if (n <= 4) {
    Expr d;
    for (std::size_t j = 0; j < n; ++j) {
      if ((*this)(0, j).is_syntactic_zero()) continue;
      Expr term = (*this)(0, j) * minor_matrix(*this, 0, j).determinant();
      d += (j % 2 == 0) ? term : -term;
    }
    return d;
  }
  // Gaussian elimination over the field of rational functions.
  MatrixExpr w = *this;
  Expr det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c).is_syntactic_zero()) ++p;
    if (p == n) return Expr();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w(i, c).is_syntactic_zero()) continue;
      Expr f = w(i, c) / w(c, c);
      for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

MatrixExpr MatrixExpr::adjugate() const {
  if (!is_square()) throw ShapeError("adjugate of a non-square matrix");
  const std::size_t n = rows_;
  MatrixExpr r(n, n);
  if (n == 1) {
    r(0, 0) = Expr(1);
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr c = minor_matrix(*this, j, i).determinant();
      r(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return r;
}

MatrixExpr MatrixExpr::inverse() const {
  Expr d = determinant();
  if (d.is_syntactic_zero()) throw DivisionByZero();
  return d.inverse() * adjugate();
}

bool MatrixExpr::is_zero(bool allow_syntactic) const {
  for (const auto& e : a_) {
    if (!e.is_zero(allow_syntactic)) return false;
  }
  return true;
}

bool MatrixExpr::has_aux() const {
  for (const auto& e : a_) {
    if (e.has_aux()) return true;
  }
  return false;
}

std::string MatrixExpr::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

MatrixExpr commutator(const MatrixExpr& a, const MatrixExpr& b) { return a * b - b * a; }

}  // namespace odeinv
