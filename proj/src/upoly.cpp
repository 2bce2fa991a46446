#include "ohmlab/upoly.hpp"

#include <sstream>
#include <stdexcept>

namespace ohmlab {

UPoly UPoly::x(int power) {
  std::vector<Rational> c(power + 1);
  c[power] = 1;
  return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.zero() || b.zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(r[i]) == 0) continue;
    Rational f = r[i] / b.c_[db];
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
  }
  r.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (zero()) return {};
  std::vector<Rational> c = c_;
  Rational l = c.back();
  for (auto& v : c) v /= l;
  return UPoly(std::move(c));
}

Rational UPoly::eval(const Rational& x) const {
  Rational s(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

std::complex<long double> UPoly::eval(std::complex<long double> x) const {
  std::complex<long double> s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    s = s * x + static_cast<long double>(it->get_d());
  return s;
}

LaurentPoly UPoly::to_laurent(int shift) const {
  LaurentPoly p;
  for (std::size_t i = 0; i < c_.size(); ++i)
    p += LaurentPoly::monomial({static_cast<int>(i) + shift, 0}, c_[i]);
  return p;
}

std::string UPoly::str() const { return to_laurent().str(); }

UPoly gcd(UPoly a, UPoly b) {
  while (!b.zero()) {
    UPoly r = UPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = UPoly::divmod(a, b);
  if (!r.zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

std::pair<UPoly, int> to_upoly(const LaurentPoly& p) {
  if (p.uses_second_var()) throw std::invalid_argument("expected a one-variable polynomial");
  if (p.zero()) return {UPoly(), 0};
  auto [lo, hi] = p.degree_range(0);
  std::vector<Rational> c(hi - lo + 1);
  for (const auto& [e, v] : p.terms()) c[e[0] - lo] = v;
  return {UPoly(std::move(c)), lo};
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  std::vector<UPoly> out;
  if (p.degree() <= 0) return out;
  UPoly f = p.monic();
  UPoly d = f.derivative();
  UPoly a = gcd(f, d);
  UPoly b = exact_div(f, a);
  UPoly c = exact_div(d, a);
  UPoly e = c - b.derivative();
  while (b.degree() > 0) {
    UPoly g = gcd(b, e);
    out.push_back(g);
    b = exact_div(b, g);
    c = exact_div(e, g);
    e = c - b.derivative();
  }
  // Trailing trivial factors carry no roots; keep positions meaningful.
  return out;
}

namespace {
int sign_changes(const std::vector<int>& s) {
  int n = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++n;
    last = v;
  }
  return n;
}
}  // namespace

int sturm_positive_roots(const UPoly& p) {
  if (p.degree() <= 0) return 0;
  if (sgn(p.coeff(0)) == 0) throw std::invalid_argument("sturm_positive_roots needs p(0) != 0");
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().zero()) {
    UPoly r = UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    seq.push_back(-r);
  }
  seq.pop_back();
  std::vector<int> at0, atinf;
  for (const auto& q : seq) {
    at0.push_back(sgn(q.coeff(0)));
    atinf.push_back(sgn(q.lead()));
  }
  return sign_changes(at0) - sign_changes(atinf);
}

RatFunc::RatFunc(const UPoly& n, const UPoly& d) {
  if (d.zero()) throw std::domain_error("rational function with zero denominator");
  if (n.zero()) {
    num_ = UPoly();
    den_ = UPoly(1);
    return;
  }
  UPoly g = gcd(n, d);
  num_ = exact_div(n, g);
  den_ = exact_div(d, g);
  Rational l = den_.lead();
  num_ = UPoly(Rational(1) / l) * num_;
  den_ = den_.monic();
}

RatFunc RatFunc::from_laurent(const LaurentPoly& p) { return ratio(p, LaurentPoly(1)); }

RatFunc RatFunc::ratio(const LaurentPoly& n, const LaurentPoly& d) {
  auto [pn, sn] = to_upoly(n);
  auto [pd, sd] = to_upoly(d);
  int s = sn - sd;
  if (s >= 0) return RatFunc(pn * UPoly::x(s), pd);
  return RatFunc(pn, pd * UPoly::x(-s));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

Rational RatFunc::eval(const Rational& x) const { return num_.eval(x) / den_.eval(x); }
std::complex<long double> RatFunc::eval(std::complex<long double> x) const {
  return num_.eval(x) / den_.eval(x);
}

std::string RatFunc::str() const {
  if (den_ == UPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace ohmlab
