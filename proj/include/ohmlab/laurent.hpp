#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>

#include "ohmlab/rational.hpp"

namespace ohmlab {

// Exponent vector; one-variable polynomials leave the second slot at 0.
using Exp = std::array<int, 2>;

inline Exp operator+(const Exp& a, const Exp& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Exp operator-(const Exp& a, const Exp& b) { return {a[0] - b[0], a[1] - b[1]}; }

// Sparse Laurent polynomial in z1, z2 over Q.  No zero coefficients are stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT: ring literal
  LaurentPoly(const Rational& c) {                  // NOLINT
    if (sgn(c) != 0) t_[{0, 0}] = c;
  }

  static LaurentPoly monomial(Exp e, const Rational& c = 1) {
    LaurentPoly p;
    if (sgn(c) != 0) p.t_[e] = c;
    return p;
  }
  // z1 (k = 0) or z2 (k = 1) raised to `power`.
  static LaurentPoly var(int k, int power = 1) {
    return monomial(k == 0 ? Exp{power, 0} : Exp{0, power});
  }

  const std::map<Exp, Rational>& terms() const { return t_; }
  bool zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exp{0, 0}); }
  Rational coeff(const Exp& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff({0, 0}); }
  bool uses_second_var() const;
  // Min and max exponent of variable k; (0,0) for the zero polynomial.
  std::pair<int, int> degree_range(int k) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly() - a; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(unsigned k) const;
  // Multiplies every exponent by the monomial z^e.
  LaurentPoly shifted(const Exp& e) const;
  // p(z1, z2) -> p(1/z1, 1/z2).
  LaurentPoly inverted() const;
  bool is_symmetric() const { return *this == inverted(); }
  // p(z1, z2) -> p(z1^a z2^b, z1^c z2^d).
  LaurentPoly substitute(int a, int b, int c, int d) const;

  Rational eval(const Rational& z1, const Rational& z2 = 1) const;
  std::complex<double> eval(std::complex<double> z1, std::complex<double> z2 = 1.0) const;

  std::string str() const;

 private:
  std::map<Exp, Rational> t_;
};

inline bool is_zero(const LaurentPoly& p) { return p.zero(); }

// Exact quotient a / b; throws std::domain_error if b does not divide a.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

// 2 - z - 1/z in variable k.
LaurentPoly cycle_weight(int k = 0);
// 2 - z1^a z2^b - z1^-a z2^-b.
LaurentPoly cycle_weight(const Exp& h);

}  // namespace ohmlab
