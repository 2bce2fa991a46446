#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/rational.hpp"

namespace ohmlab {

// Dense univariate polynomial over Q; c[i] is the coefficient of x^i and the
// leading coefficient is nonzero (the zero polynomial has no coefficients).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  UPoly(int k) : UPoly(Rational(k)) {}  // NOLINT
  UPoly(const Rational& k) {           // NOLINT
    if (sgn(k) != 0) c_.push_back(k);
  }
  static UPoly x(int power = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a) { return UPoly() - a; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // a = q b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  UPoly derivative() const;
  UPoly monic() const;
  Rational eval(const Rational& x) const;
  std::complex<long double> eval(std::complex<long double> x) const;

  LaurentPoly to_laurent(int shift = 0) const;
  std::string str() const;

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline bool is_zero(const UPoly& p) { return p.zero(); }

// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);
UPoly exact_div(const UPoly& a, const UPoly& b);

// One-variable Laurent polynomial in z1 written as z^shift * poly.
std::pair<UPoly, int> to_upoly(const LaurentPoly& p);

// Yun decomposition: p = lead * prod f[i]^(i+1), each f[i] monic square-free.
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

// Number of distinct real roots of a square-free p in the open interval (0, inf).
// Requires p(0) != 0.
int sturm_positive_roots(const UPoly& p);

// Rational function in one variable: num/den with gcd 1 and monic den.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(int k) : num_(k), den_(1) {}  // NOLINT
  RatFunc(const Rational& k) : num_(k), den_(1) {}  // NOLINT
  RatFunc(const UPoly& n, const UPoly& d);
  static RatFunc from_laurent(const LaurentPoly& p);
  static RatFunc ratio(const LaurentPoly& n, const LaurentPoly& d);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool zero() const { return num_.zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  Rational eval(const Rational& x) const;
  std::complex<long double> eval(std::complex<long double> x) const;
  std::string str() const;

 private:
  UPoly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.zero(); }

}  // namespace ohmlab
