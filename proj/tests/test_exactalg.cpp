#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/roots.hpp"
#include "ohmlab/upoly.hpp"

using namespace ohmlab;

namespace {

// Leibniz expansion; exponential but independent of any elimination code.
template <class T>
T leibniz_det(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total(0);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, p[i]);
    total = inv % 2 ? T(total - term) : T(total + term);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Expansion along the first row.
Rational expand_pfaffian(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Rational s = 0;
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k < n; ++k)
      if (k != j) idx.push_back(k);
    Rational t = a(0, j) * expand_pfaffian(a.submatrix(idx, idx));
    s += (j % 2 == 1) ? t : Rational(-t);
  }
  return s;
}

Rational rnd(std::mt19937& g, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi), q(1, 4);
  return frac(d(g), q(g));
}

}  // namespace

TEST_CASE("rational parsing is strict and canonical") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("2/-3"), InputError);
}

TEST_CASE("determinants agree with Leibniz expansion") {
  std::mt19937 g(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = (trial % 3 == 0 && (i + j) % 3 == 0) ? Rational(0) : rnd(g);
    Rational ref = leibniz_det(m);
    CHECK(det(m) == ref);
    CHECK(det_bareiss(m) == ref);
  }
}

TEST_CASE("K4 reduced Laplacian counts 16 spanning trees") {
  RatMatrix l(3, 3, Rational(-1));
  for (int i = 0; i < 3; ++i) l(i, i) = 3;
  CHECK(det_bareiss(l) == 16);
}

TEST_CASE("solve, inverse and Schur complement") {
  std::mt19937 g(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 5;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rnd(g);
      m(i, i) += 30;  // diagonally dominant, so every principal block is invertible
    }
    CHECK(m * inverse(m) == RatMatrix::identity(n));
    std::vector<std::size_t> keep{0}, elim;
    for (std::size_t i = 1; i < n; ++i) elim.push_back(i);
    RatMatrix s = schur_complement(m, keep, elim);
    CHECK(det(m) == det(m.submatrix(elim, elim)) * s(0, 0));
  }
  RatMatrix sing(2, 2, Rational(1));
  CHECK_THROWS_AS(inverse(sing), SingularMatrix);
}

TEST_CASE("Pfaffian matches expansion and squares to the determinant") {
  std::mt19937 g(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 * (1 + trial % 4);
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = (trial % 2 && j == i + 1) ? Rational(0) : rnd(g);
        a(j, i) = -a(i, j);
      }
    Rational pf = pfaffian(a);
    CHECK(pf == expand_pfaffian(a));
    CHECK(pf * pf == det(a));
  }
  RatMatrix j2(2, 2);
  j2(0, 1) = 1;
  j2(1, 0) = -1;
  CHECK(pfaffian(j2) == 1);
}

TEST_CASE("Laurent arithmetic and exact division") {
  auto z1 = LaurentPoly::var(0), z2 = LaurentPoly::var(1);
  LaurentPoly p = LaurentPoly(3) * z1 * z1 - LaurentPoly::var(0, -1) + z2 * LaurentPoly::var(0, -2);
  LaurentPoly q = LaurentPoly(2) - z1 - LaurentPoly::var(1, -1);
  CHECK(exact_div(p * q, q) == p);
  CHECK(exact_div(p * q, p) == q);
  CHECK_THROWS_AS(exact_div(p, q), std::domain_error);
  CHECK(cycle_weight(0).is_symmetric());
  CHECK(cycle_weight(Exp{1, -1}).eval(Rational(2), Rational(3)) == Rational(2) - Rational(2, 3) - Rational(3, 2));
  CHECK((z1 * z2).pow(3) == LaurentPoly::monomial({3, 3}));
  CHECK(p.substitute(0, 1, 1, 0).inverted().substitute(0, 1, 1, 0).inverted() == p);

  // Bareiss over the Laurent ring against Leibniz.
  Matrix<LaurentPoly> m(3, 3);
  m(0, 0) = LaurentPoly(4);
  m(0, 1) = -z1 - 1;
  m(0, 2) = -LaurentPoly::var(1, -1);
  m(1, 0) = -LaurentPoly::var(0, -1) - 1;
  m(1, 1) = LaurentPoly(3);
  m(1, 2) = LaurentPoly(-1);
  m(2, 0) = -z2;
  m(2, 1) = LaurentPoly(-1);
  m(2, 2) = z1 + z2 + 2;
  CHECK(det_bareiss(m) == leibniz_det(m));
}

TEST_CASE("square-free decomposition and Sturm counts") {
  // (x-1)^2 (x^2 - 4x + 1)
  UPoly p = (UPoly::x() - 1) * (UPoly::x() - 1) * (UPoly::x(2) - UPoly(4) * UPoly::x() + 1);
  auto f = squarefree_decomposition(p);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == UPoly::x(2) - UPoly(4) * UPoly::x() + 1);
  CHECK(f[1] == UPoly::x() - 1);
  CHECK(sturm_positive_roots(f[0]) == 2);
  CHECK(sturm_positive_roots(UPoly::x(2) + 1) == 0);
  CHECK(sturm_positive_roots(UPoly::x(2) - 1) == 1);

  RootReport r = real_roots(p.to_laurent(-2));
  CHECK(r.degree == 4);
  CHECK(r.shift == -2);
  CHECK_FALSE(r.squarefree);
  CHECK(r.positive_real == 4);
  CHECK(r.positive_real_distinct == 3);
  auto v = r.positive_real_values();
  REQUIRE(v.size() == 4);
  CHECK(std::abs(v[0] - (2 - std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(v[1] - 1) < 1e-12);
  CHECK(std::abs(v[2] - 1) < 1e-12);
  CHECK(std::abs(v[3] - (2 + std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("rational functions normalise") {
  UPoly x = UPoly::x();
  RatFunc a(x * x - 1, UPoly(2) * (x - 1));
  CHECK(a.num() == UPoly(Rational(1, 2)) * (x + 1));
  CHECK(a.den() == UPoly(1));
  RatFunc b = RatFunc(1) / RatFunc(x, UPoly(1));
  CHECK((a * b).eval(Rational(3)) == Rational(2, 3));
  CHECK((a - a).zero());
  CHECK(RatFunc::ratio(LaurentPoly::var(0, -1), LaurentPoly(1) + LaurentPoly::var(0)).eval(Rational(2)) ==
        Rational(1, 6));
}
