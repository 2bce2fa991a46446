#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ohmlab/rational.hpp"

namespace ohmlab {

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix over a commutative ring T.  T must be constructible
// from int and provide +, -, *; field algorithms additionally need /, and
// Bareiss needs exact_div(T, T).  is_zero(T) is found by ADL or overload.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T(0))
      : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix submatrix(const std::vector<std::size_t>& rs,
                   const std::vector<std::size_t>& cs) const {
    Matrix m(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    Matrix<decltype(f(std::declval<T>()))> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix m(x);
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] + y.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix m(x);
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] - y.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& x) {
    Matrix m(x);
    for (auto& v : m.a_) v = T(0) - v;
    return m;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const T& xik = x(i, k);
        if (is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.c_; ++j) m(i, j) = m(i, j) + xik * y(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& x) {
    Matrix m(x);
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

 private:
  static void check_same(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using RatMatrix = Matrix<Rational>;

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

// Fraction-free elimination; every division is exact in an integral domain.
template <class T>
T det_bareiss(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return T(1);
  int sign = 1;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return T(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  return sign < 0 ? T(T(0) - m(n - 1, n - 1)) : T(m(n - 1, n - 1));
}

// Gaussian elimination over a field.
template <class T>
T det(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det of non-square matrix");
  T d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m(p, k))) ++p;
    if (p == n) return T(0);
    if (p != k) {
      m.swap_rows(k, p);
      d = T(0) - d;
    }
    d = d * m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      T f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
    }
  }
  return d;
}

// Solves A X = B over a field; throws SingularMatrix when A is singular.
template <class T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
  const std::size_t n = a.rows();
  if (n != a.cols() || b.rows() != n) throw std::invalid_argument("solve shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(a(p, k))) ++p;
    if (p == n) throw SingularMatrix("singular matrix in solve");
    a.swap_rows(k, p);
    b.swap_rows(k, p);
    T inv = T(1) / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) = a(k, j) * inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) = b(k, j) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || is_zero(a(i, k))) continue;
      T f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) - f * b(k, j);
    }
  }
  return b;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

// Schur complement of the block indexed by `elim`:
// M[keep,keep] - M[keep,elim] M[elim,elim]^{-1} M[elim,keep].
template <class T>
Matrix<T> schur_complement(const Matrix<T>& m, const std::vector<std::size_t>& keep,
                           const std::vector<std::size_t>& elim) {
  Matrix<T> a = m.submatrix(keep, keep);
  if (elim.empty()) return a;
  Matrix<T> b = m.submatrix(keep, elim);
  Matrix<T> c = m.submatrix(elim, elim);
  Matrix<T> bt = m.submatrix(elim, keep);
  return a - b * solve(c, bt);
}

// Pfaffian of a skew-symmetric matrix over a field, by congruence elimination.
template <class T>
T pfaffian(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("pfaffian of non-square matrix");
  if (n % 2) return T(0);
  T pf(1);
  for (std::size_t k = 0; k < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && is_zero(m(k, p))) ++p;
    if (p == n) return T(0);
    if (p != k + 1) {
      m.swap_rows(k + 1, p);
      m.swap_cols(k + 1, p);
      pf = T(0) - pf;
    }
    const T piv = m(k, k + 1);
    pf = pf * piv;
    for (std::size_t i = k + 2; i < n; ++i) {
      // Clear m(k,i) using column k+1, then m(k+1,i) using column k.
      if (!is_zero(m(k, i))) {
        T f = m(k, i) / piv;
        for (std::size_t r = k; r < n; ++r) m(r, i) = m(r, i) - f * m(r, k + 1);
        for (std::size_t c = k; c < n; ++c) m(i, c) = m(i, c) - f * m(k + 1, c);
      }
      if (!is_zero(m(k + 1, i))) {
        T f = m(k + 1, i) / (T(0) - piv);
        for (std::size_t r = k; r < n; ++r) m(r, i) = m(r, i) - f * m(r, k);
        for (std::size_t c = k; c < n; ++c) m(i, c) = m(i, c) - f * m(k, c);
      }
    }
  }
  return pf;
}

}  // namespace ohmlab
