#include "ohmlab/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace ohmlab {

bool LaurentPoly::uses_second_var() const {
  for (const auto& [e, c] : t_)
    if (e[1] != 0) return true;
  return false;
}

std::pair<int, int> LaurentPoly::degree_range(int k) const {
  if (t_.empty()) return {0, 0};
  int lo = t_.begin()->first[k], hi = lo;
  for (const auto& [e, c] : t_) {
    lo = std::min(lo, e[k]);
    hi = std::max(hi, e[k]);
  }
  return {lo, hi};
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) {
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) {
    auto [it, fresh] = t_.try_emplace(e, -c);
    if (!fresh) {
      it->second -= c;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      Rational v = ca * cb;
      auto [it, fresh] = p.t_.try_emplace(ea + eb, v);
      if (!fresh) it->second += v;
    }
  for (auto it = p.t_.begin(); it != p.t_.end();)
    it = sgn(it->second) == 0 ? p.t_.erase(it) : std::next(it);
  return p;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r(1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exp& s) const {
  LaurentPoly p;
  for (const auto& [e, c] : t_) p.t_.emplace(e + s, c);
  return p;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly p;
  for (const auto& [e, c] : t_) p.t_.emplace(Exp{-e[0], -e[1]}, c);
  return p;
}

LaurentPoly LaurentPoly::substitute(int a, int b, int c, int d) const {
  LaurentPoly p;
  for (const auto& [e, v] : t_)
    p += monomial({a * e[0] + c * e[1], b * e[0] + d * e[1]}, v);
  return p;
}

namespace {
Rational rpow(const Rational& x, int k) {
  if (k < 0) {
    if (sgn(x) == 0) throw std::domain_error("evaluation of negative power at 0");
    return rpow(Rational(1) / x, -k);
  }
  Rational r(1);
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k));
  r.canonicalize();
  return r;
}
}  // namespace

Rational LaurentPoly::eval(const Rational& z1, const Rational& z2) const {
  Rational s(0);
  for (const auto& [e, c] : t_) s += c * rpow(z1, e[0]) * rpow(z2, e[1]);
  return s;
}

std::complex<double> LaurentPoly::eval(std::complex<double> z1, std::complex<double> z2) const {
  std::complex<double> s = 0;
  for (const auto& [e, c] : t_) s += c.get_d() * std::pow(z1, e[0]) * std::pow(z2, e[1]);
  return s;
}

std::string LaurentPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = a == 1 && (e[0] != 0 || e[1] != 0);
    if (!unit) os << to_string(a);
    bool need_star = !unit;
    for (int k = 0; k < 2; ++k) {
      if (e[k] == 0) continue;
      os << (need_star ? "*" : "") << "z" << (k + 1);
      if (e[k] != 1) os << "^" << e[k];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.zero()) throw std::domain_error("division by zero polynomial");
  if (a.zero()) return {};
  // Shift both to genuine polynomials, then divide under lex order on N^2.
  Exp la{a.degree_range(0).first, a.degree_range(1).first};
  Exp lb{b.degree_range(0).first, b.degree_range(1).first};
  LaurentPoly r = a.shifted({-la[0], -la[1]});
  LaurentPoly d = b.shifted({-lb[0], -lb[1]});
  const auto& [ld, cd] = *d.terms().rbegin();
  LaurentPoly q;
  while (!r.zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    Exp qe = lr - ld;
    if (qe[0] < 0 || qe[1] < 0) throw std::domain_error("inexact polynomial division");
    LaurentPoly t = LaurentPoly::monomial(qe, cr / cd);
    q += t;
    r -= t * d;
  }
  return q.shifted(la - lb);
}

LaurentPoly cycle_weight(int k) {
  return LaurentPoly(2) - LaurentPoly::var(k, 1) - LaurentPoly::var(k, -1);
}

LaurentPoly cycle_weight(const Exp& h) {
  return LaurentPoly(2) - LaurentPoly::monomial(h) - LaurentPoly::monomial({-h[0], -h[1]});
}

}  // namespace ohmlab
