#pragma once

#include <string>

#include "ohmlab/rational.hpp"

namespace ohmlab {

// Gaussian rational re + i im; used for exact unitary connections.
struct GaussQ {
  Rational re = 0, im = 0;

  GaussQ() = default;
  GaussQ(int k) : re(k) {}  // NOLINT
  GaussQ(const Rational& r, const Rational& i = 0) : re(r), im(i) {}  // NOLINT

  GaussQ conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussQ operator-(const GaussQ& a) { return {-a.re, -a.im}; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
    Rational n = b.norm2();
    GaussQ p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  std::string str() const { return to_string(re) + (sgn(im) < 0 ? "" : "+") + to_string(im) + "i"; }
};

inline bool is_zero(const GaussQ& z) { return is_zero(z.re) && is_zero(z.im); }
inline GaussQ exact_div(const GaussQ& a, const GaussQ& b) { return a / b; }

inline GaussQ gauss_pow(GaussQ z, int k) {
  if (k < 0) {
    z = GaussQ(1) / z;
    k = -k;
  }
  GaussQ r(1);
  for (; k > 0; --k) r = r * z;
  return r;
}

}  // namespace ohmlab
