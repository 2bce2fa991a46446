#include "ohmlab/surfaces.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ohmlab/combinatorics.hpp"
#include "ohmlab/laplacian.hpp"

namespace ohmlab {

namespace {

[[noreturn]] void domain(const std::string& m) { throw NetworkError(ErrorKind::Domain, m); }

using cld = std::complex<long double>;
using cd = std::complex<double>;

// Roots of sum c[i] x^i (complex coefficients), leading zeros trimmed.
std::vector<cld> complex_roots(std::vector<cld> c) {
  long double scale = 0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  while (!c.empty() && std::abs(c.back()) <= 1e-13L * scale) c.pop_back();
  std::size_t low = 0;
  while (low < c.size() && std::abs(c[low]) <= 1e-13L * scale) ++low;
  std::vector<cld> roots;
  for (std::size_t i = 0; i < low; ++i) roots.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(low));
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    cld v = -c[i] / c[n];
    comp(i, n - 1) = cd(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
  for (int i = 0; i < n; ++i) {
    cld z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 60; ++it) {
      cld f = 0, d = 0;
      for (int k = n; k >= 0; --k) {
        d = d * z + f;
        f = f * z + c[k];
      }
      if (std::abs(d) == 0) break;
      cld step = f / d;
      z -= step;
      if (std::abs(step) <= 1e-19L * std::max<long double>(1, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

cld det_lu(std::vector<std::vector<cld>> a) {
  const std::size_t n = a.size();
  cld d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (std::abs(a[p][k]) == 0) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      d = -d;
    }
    d *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      cld f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return d;
}

struct Term {
  int i, j;
  long double c;
};

std::vector<Term> terms_of(const LaurentPoly& p) {
  std::vector<Term> t;
  for (const auto& [e, c] : p.terms()) t.push_back({e[0], e[1], static_cast<long double>(c.get_d())});
  return t;
}

cld ipow(cld z, int k) {
  cld r = 1;
  const cld b = k < 0 ? cld(1) / z : z;
  for (int i = 0; i < std::abs(k); ++i) r *= b;
  return r;
}

// p and its partials at (z1, z2); with `reflect`, the polynomial
// p(s1/z1, s2/z2) instead.
std::array<cld, 3> eval_partials(const std::vector<Term>& t, cld z1, cld z2, bool reflect, long double s1,
                                 long double s2) {
  std::array<cld, 3> out{0, 0, 0};
  for (const auto& [i, j, c] : t) {
    const int a = reflect ? -i : i, b = reflect ? -j : j;
    cld k = c;
    if (reflect) k *= std::pow(s1, static_cast<long double>(i)) * std::pow(s2, static_cast<long double>(j));
    cld v = k * ipow(z1, a) * ipow(z2, b);
    out[0] += v;
    out[1] += static_cast<long double>(a) * v / z1;
    out[2] += static_cast<long double>(b) * v / z2;
  }
  return out;
}

}  // namespace

LaurentPoly char_poly(const Network& net) {
  if (net.surface != Surface::Annulus && net.surface != Surface::Torus)
    domain("characteristic polynomial needs an annulus or torus network");
  LaurentPoly p = det_bareiss(line_laplacian(net));
  if (!p.is_symmetric()) throw std::logic_error("characteristic polynomial is not reciprocal");
  if (p.eval(Rational(1), Rational(1)) != 0) throw std::logic_error("characteristic polynomial does not vanish at 1");
  return p;
}

AnnulusRootVerdict annulus_root_report(const LaurentPoly& p) {
  if (p.uses_second_var()) domain("annulus root report needs a one-variable polynomial");
  AnnulusRootVerdict v;
  v.report = real_roots(p);
  auto [q, shift] = to_upoly(p);
  auto factors = squarefree_decomposition(q);
  const UPoly z_minus_1(std::vector<Rational>{-1, 1});
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const UPoly& f = factors[i];
    if (f.degree() <= 0) continue;
    if (i == 1 && f == z_minus_1) continue;
    v.witness = "factor " + f.str() + " has multiplicity " + std::to_string(i + 1);
    return v;
  }
  if (factors.size() < 2 || factors[1] != z_minus_1) {
    v.witness = "z = 1 is not a double root";
    return v;
  }
  if (v.report.positive_real != v.report.degree) {
    v.witness = std::to_string(v.report.degree - v.report.positive_real) + " of " + std::to_string(v.report.degree) +
                " roots are not positive real";
    return v;
  }
  v.pass = true;
  return v;
}

UPoly chebyshev_ch(int n) {
  if (n < 0) throw std::invalid_argument("Ch_n needs n >= 0");
  UPoly a(2), b = UPoly::x();
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    UPoly c = UPoly::x() * b - a;
    a = b;
    b = c;
  }
  return b;
}

LaurentPoly cylinder_closed_form(int m, int n) {
  if (m < 1 || n < 1) domain("cylinder closed form needs m, n >= 1");
  RatMatrix r = RatMatrix::identity(m);
  for (int i = 0; i < m; ++i) r(i, i) = 2;
  for (int i = 0; i + 1 < m; ++i) {
    r(i, i) += 1, r(i + 1, i + 1) += 1;
    r(i, i + 1) -= 1, r(i + 1, i) -= 1;
  }
  // Ch_n(R) by Horner.
  const UPoly ch = chebyshev_ch(n);
  RatMatrix c(m, m);
  for (int k = ch.degree(); k >= 0; --k) c = c * r + ch.coeff(k) * RatMatrix::identity(m);
  Matrix<UPoly> s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s(i, j) = i == j ? c(i, j) - UPoly::x() : UPoly(c(i, j));
  const UPoly d = det_bareiss(s);  // in s = z + 1/z
  const LaurentPoly zs = LaurentPoly::var(0) + LaurentPoly::var(0, -1);
  LaurentPoly out, power(1);
  for (int k = 0; k <= d.degree(); ++k) {
    out += LaurentPoly(d.coeff(k)) * power;
    power = power * zs;
  }
  return out;
}

std::complex<double> cylinder_product(int m, int n, std::complex<double> z, int k_first, int k_last,
                                      bool extra_factor) {
  auto ch = [n](double x) {
    double a = 2, b = x;
    if (n == 0) return a;
    for (int k = 1; k < n; ++k) {
      double c = x * b - a;
      a = b;
      b = c;
    }
    return b;
  };
  std::complex<double> p = extra_factor ? 2.0 - z - 1.0 / z : 1.0;
  for (int k = k_first; k <= k_last; ++k) p *= ch(4 - 2 * std::cos(k * std::numbers::pi / m)) - z - 1.0 / z;
  return p;
}

HomologyDecomposition homology_decompose(const LaurentPoly& p) {
  HomologyDecomposition out;
  if (!p.is_symmetric()) {
    out.valid = false;
    out.reason = "not reciprocal";
    return out;
  }
  std::map<Exp, int> rays;  // primitive direction -> max multiple
  for (const auto& [e, c] : p.terms()) {
    if (e == Exp{0, 0}) continue;
    const int g = std::gcd(std::abs(e[0]), std::abs(e[1]));
    Exp d{e[0] / g, e[1] / g};
    if (d[0] < 0 || (d[0] == 0 && d[1] < 0)) d = {-d[0], -d[1]};
    rays[d] = std::max(rays[d], g);
  }
  Rational constant = 0;
  for (const auto& [d, top] : rays) {
    std::vector<Rational> a(top + 1);
    for (int k = 1; k <= top; ++k) a[k] = p.coeff({k * d[0], k * d[1]});
    for (int k = top; k >= 1; --k) {
      // (2 - m - 1/m)^k has m^k coefficient (-1)^k.
      const Rational ck = k % 2 ? Rational(-a[k]) : a[k];
      if (sgn(ck) == 0) continue;
      out.c[{k * d[0], k * d[1]}] = ck;
      if (sgn(ck) < 0 && out.valid) {
        out.valid = false;
        out.reason = "negative coefficient C(" + std::to_string(k * d[0]) + "," + std::to_string(k * d[1]) + ")";
      }
      const LaurentPoly xk = cycle_weight(0).pow(k);
      for (int j = 0; j <= k; ++j) a[j] -= ck * xk.coeff({j, 0});
    }
    constant += a[0];  // minus the constants of the X^k used on this ray
  }
  if (p.constant_term() + constant != 0 && out.valid) {
    out.valid = false;
    out.reason = "nonzero residual constant " + to_string(p.constant_term() + constant);
  }
  return out;
}

LaurentPoly reassemble(const HomologyDecomposition& d) {
  LaurentPoly out;
  for (const auto& [rs, c] : d.c) {
    const int g = std::gcd(std::abs(rs[0]), std::abs(rs[1]));
    out += LaurentPoly(c) * cycle_weight(Exp{rs[0] / g, rs[1] / g}).pow(g);
  }
  return out;
}

CyclePgf cycle_count_pgf(const LaurentPoly& p) {
  if (p.uses_second_var()) domain("cycle-count generating function needs an annulus polynomial");
  HomologyDecomposition d = homology_decompose(p);
  if (!d.valid) domain("not a network characteristic polynomial: " + d.reason);
  std::vector<Rational> c(1, Rational(0));
  for (const auto& [rs, v] : d.c) {
    if (static_cast<int>(c.size()) <= rs[0]) c.resize(rs[0] + 1);
    c[rs[0]] = v;
  }
  CyclePgf out;
  out.q = UPoly(c);
  const Rational total = out.q.eval(Rational(1));
  if (sgn(total) == 0) domain("zero polynomial has no cycle distribution");
  for (const auto& v : c) out.probability.push_back(v / total);
  return out;
}

std::vector<Exp> newton_polygon(const LaurentPoly& p) {
  std::vector<Exp> pts;
  for (const auto& [e, c] : p.terms()) pts.push_back(e);
  std::sort(pts.begin(), pts.end());
  if (pts.size() <= 1) return pts;
  auto cross = [](const Exp& o, const Exp& a, const Exp& b) {
    return static_cast<long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long>(a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Exp> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& q : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], q) <= 0) --k;
    h[k++] = q;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  auto start = std::min_element(h.begin(), h.end(), [](const Exp& a, const Exp& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  std::rotate(h.begin(), start, h.end());
  return h;
}

bool is_centrally_symmetric(const std::vector<Exp>& polygon) {
  std::set<Exp> s(polygon.begin(), polygon.end());
  for (const auto& e : polygon)
    if (!s.count({-e[0], -e[1]})) return false;
  return true;
}

FreeEnergy free_energy(const LaurentPoly& p, int grid) {
  if (grid < 2) throw std::invalid_argument("free energy grid must be at least 2");
  auto mean_log = [&](int n) {
    long double s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double t1 = 2 * std::numbers::pi * (a + 0.5) / n, t2 = 2 * std::numbers::pi * (b + 0.5) / n;
        s += std::log(std::abs(p.eval(std::polar(1.0, t1), std::polar(1.0, t2))));
      }
    return static_cast<double>(s / (static_cast<long double>(n) * n));
  };
  FreeEnergy f;
  f.grid = grid;
  f.coarse = mean_log(grid);
  f.fine = mean_log(2 * grid);
  f.value = (4 * f.fine - f.coarse) / 3;
  return f;
}

std::vector<std::array<std::complex<double>, 2>> torus_roots(const LaurentPoly& p, double r1, double r2, double tol) {
  if (p.zero()) domain("the zero polynomial vanishes everywhere");
  const auto t = terms_of(p);
  const auto [lo1, hi1] = p.degree_range(0);
  const auto [lo2, hi2] = p.degree_range(1);
  const int d1 = hi1 - lo1, d2 = hi2 - lo2;
  const long double s1 = static_cast<long double>(r1) * r1, s2 = static_cast<long double>(r2) * r2;
  std::vector<std::array<std::complex<double>, 2>> found;

  // Newton on (p, reflected p); keep the point if it lies on the torus.
  auto accept = [&](cld z1, cld z2) {
    for (int it = 0; it < 80; ++it) {
      auto f = eval_partials(t, z1, z2, false, s1, s2);
      auto g = eval_partials(t, z1, z2, true, s1, s2);
      const cld det = f[1] * g[2] - f[2] * g[1];
      if (std::abs(det) == 0) break;
      const cld dz1 = (f[0] * g[2] - f[2] * g[0]) / det, dz2 = (f[1] * g[0] - f[0] * g[1]) / det;
      z1 -= dz1;
      z2 -= dz2;
      if (std::abs(dz1) + std::abs(dz2) <= 1e-18L * (std::abs(z1) + std::abs(z2))) break;
    }
    if (std::abs(std::abs(z1) / r1 - 1) > tol || std::abs(std::abs(z2) / r2 - 1) > tol) return;
    const cd a(static_cast<double>(z1.real()), static_cast<double>(z1.imag()));
    const cd b(static_cast<double>(z2.real()), static_cast<double>(z2.imag()));
    for (const auto& q : found)
      if (std::abs(q[0] - a) <= 1e-7 * r1 && std::abs(q[1] - b) <= 1e-7 * r2) return;
    found.push_back({a, b});
  };
  // One-variable curves meet a torus in a whole circle or not at all.
  if (d1 == 0 || d2 == 0) {
    const int k = d2 == 0 ? 0 : 1;
    const int lo = d2 == 0 ? lo1 : lo2, deg = d2 == 0 ? d1 : d2;
    std::vector<cld> c(deg + 1);
    for (const auto& x : t) c[(k == 0 ? x.i : x.j) - lo] += x.c;
    const double r = k == 0 ? r1 : r2;
    for (const auto& z : complex_roots(c))
      if (std::abs(std::abs(z) / r - 1) <= tol) domain("the curve contains a whole circle of this torus");
    return found;
  }

  // f(z2) = sum_j F_j(z1) z2^(j-lo2); g(z2) = z2^hi2 p(s1/z1, s2/z2).
  auto coeffs = [&](cld z1) {
    std::vector<cld> f(d2 + 1), g(d2 + 1);
    for (const auto& x : t) {
      f[x.j - lo2] += x.c * ipow(z1, x.i);
      g[hi2 - x.j] += x.c * std::pow(s1, static_cast<long double>(x.i)) *
                      std::pow(s2, static_cast<long double>(x.j)) * ipow(z1, -x.i);
    }
    return std::make_pair(f, g);
  };
  auto sylvester = [&](const std::vector<cld>& f, const std::vector<cld>& g) {
    const int n = 2 * d2;
    std::vector<std::vector<cld>> s(n, std::vector<cld>(n, 0));
    for (int r = 0; r < d2; ++r)
      for (int k = 0; k <= d2; ++k) {
        s[r][r + k] = f[d2 - k];
        s[d2 + r][r + k] = g[d2 - k];
      }
    return det_lu(s);
  };
  const int e = d1 * d2;
  int m = 1;
  while (m < 2 * e + 1) m *= 2;
  std::vector<cld> samples(m);
  for (int k = 0; k < m; ++k) {
    const cld w = std::polar<long double>(1, 2 * std::numbers::pi_v<long double> * k / m);
    auto [f, g] = coeffs(static_cast<long double>(r1) * w);
    samples[k] = sylvester(f, g);
  }
  // Coefficients of R(r1 w) in w^(-e..e).
  std::vector<cld> poly(2 * e + 1), twiddle(m);
  for (int k = 0; k < m; ++k) twiddle[k] = std::polar<long double>(1, -2 * std::numbers::pi_v<long double> * k / m);
  for (int x = -e; x <= e; ++x) {
    cld s = 0;
    const int step = ((x % m) + m) % m;
    for (int k = 0, at = 0; k < m; ++k, at = (at + step) % m) s += samples[k] * twiddle[at];
    poly[x + e] = s / static_cast<long double>(m);
  }
  // The resultant vanishes identically iff f and g share a root for every
  // z1 on the circle; probe a few fixed generic angles.
  bool shared = true;
  for (const long double angle : {0.7311L, 2.1937L, 4.0123L}) {
    auto [f, g] = coeffs(std::polar<long double>(r1, angle));
    bool hit = false;
    for (const auto& z2 : complex_roots(f)) {
      cld v = 0;
      long double bound = 0;
      for (int k = d2; k >= 0; --k) {
        v = v * z2 + g[k];
        bound = bound * std::abs(z2) + std::abs(g[k]);
      }
      hit = hit || std::abs(v) <= 1e-9L * bound;
    }
    shared = shared && hit;
  }
  if (shared) domain("the resultant vanishes identically on this torus");
  for (const auto& w : complex_roots(poly)) {
    if (std::abs(std::abs(w) - 1) > 1e-3L) continue;
    const cld z1 = static_cast<long double>(r1) * w;
    auto [f, g] = coeffs(z1);
    for (const auto& z2 : complex_roots(f))
      if (std::abs(std::abs(z2) / r2 - 1) <= 1e-3L) accept(z1, z2);
  }
  return found;
}

AmoebaScan amoeba_sample(const LaurentPoly& p, int grid, double lo, double hi, double tol) {
  if (grid < 1 || !(hi > lo)) throw std::invalid_argument("amoeba grid needs grid >= 1 and hi > lo");
  AmoebaScan scan;
  const double h = (hi - lo) / grid;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      AmoebaPoint pt;
      pt.log_r1 = lo + (a + 0.5) * h;
      pt.log_r2 = lo + (b + 0.5) * h;
      pt.count = static_cast<int>(torus_roots(p, std::exp(pt.log_r1), std::exp(pt.log_r2), tol).size());
      scan.max_count = std::max(scan.max_count, pt.count);
      scan.points.push_back(pt);
    }
  scan.harnack = scan.max_count <= 2;
  return scan;
}

Rational qdet(const RatMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2) throw std::invalid_argument("qdet needs a square matrix of 2x2 blocks");
  if (!is_self_dual(m)) throw std::invalid_argument("qdet needs a self-dual matrix");
  RatMatrix zm(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); i += 2)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      zm(i, j) = m(i + 1, j);
      zm(i + 1, j) = -m(i, j);
    }
  return pfaffian(zm);
}

Rational sl2_crsf_sum(const Network& net) {
  check_cap(net, kCrsfCap, "CRSF enumeration");
  const int v = net.num_vertices, ne = net.num_edges();
  auto transport = [&](int d) {
    const Edge& e = net.edges[Network::edge_of(d)];
    RatMatrix t = e.t ? *e.t : RatMatrix::identity(2);
    return d & 1 ? adjugate2(t) : t;
  };
  Rational total = 0;
  if (v > ne) return total;
  // Subsets of exactly v edges, by Gosper's hack.
  EdgeMask mask = (EdgeMask{1} << v) - 1;
  const EdgeMask end = EdgeMask{1} << ne;
  for (; mask < end;) {
    std::vector<int> parent(v), cyc(v, 0);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool ok = true;
    for (int k = 0; k < ne && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      int a = find(net.edges[k].u), b = find(net.edges[k].v);
      if (a == b) {
        ok = !cyc[a];
        cyc[a] = 1;
      } else {
        ok = !(cyc[a] && cyc[b]);
        parent[a] = b;
        cyc[b] |= cyc[a];
      }
    }
    if (ok) {
      // Strip leaves; what remains are the cycles.
      std::vector<int> deg(v, 0);
      std::vector<char> alive(ne, 0);
      for (int k = 0; k < ne; ++k)
        if (mask >> k & 1) alive[k] = 1, ++deg[net.edges[k].u], ++deg[net.edges[k].v];
      for (bool changed = true; changed;) {
        changed = false;
        for (int k = 0; k < ne; ++k) {
          if (!alive[k]) continue;
          const Edge& e = net.edges[k];
          if (e.u != e.v && (deg[e.u] == 1 || deg[e.v] == 1)) {
            alive[k] = 0, --deg[e.u], --deg[e.v];
            changed = true;
          }
        }
      }
      Rational w = mask_weight(net, mask);
      std::vector<char> used(ne, 0);
      for (int k = 0; k < ne && sgn(w) != 0; ++k) {
        if (!alive[k] || used[k]) continue;
        RatMatrix mono = RatMatrix::identity(2);
        int d = 2 * k, start = net.edges[k].u;
        used[k] = 1;
        mono = mono * transport(d);
        int at = net.head(d);
        while (at != start) {
          int next = -1;
          for (int j = 0; j < ne && next < 0; ++j) {
            if (!alive[j] || used[j]) continue;
            if (net.edges[j].u == at) next = 2 * j;
            else if (net.edges[j].v == at) next = 2 * j + 1;
          }
          if (next < 0) throw std::logic_error("cycle walk lost its way");
          used[Network::edge_of(next)] = 1;
          mono = mono * transport(next);
          at = net.head(next);
        }
        w *= 2 - (mono(0, 0) + mono(1, 1));
      }
      total += w;
    }
    const EdgeMask c = mask & (~mask + 1), r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return total;
}

PantsPoly pair_of_pants_poly(const Network& net) {
  if (net.surface != Surface::Pants) domain("pair-of-pants polynomial needs a pants network");
  const int deg = net.num_vertices;  // at most one cycle per vertex
  const int n = deg + 1;
  std::vector<Rational> alpha, xs, zs;
  for (int i = 0; i < n; ++i) {
    alpha.push_back(i + 2);
    xs.push_back(2 - alpha[i] - 1 / alpha[i]);
    zs.push_back(i);
  }
  RatMatrix vand(n, n);
  for (int i = 0; i < n; ++i) {
    Rational p = 1;
    for (int k = 0; k < n; ++k, p *= xs[i]) vand(i, k) = p;
  }
  RatMatrix vx, vz;
  try {
    vx = inverse(vand);
    for (int i = 0; i < n; ++i) {
      Rational p = 1;
      for (int k = 0; k < n; ++k, p *= zs[i]) vand(i, k) = p;
    }
    vz = inverse(vand);
  } catch (const SingularMatrix&) {
    domain("interpolation grid degenerate");
  }
  // f[i][j][k] = qdet at (X_i, Y_j, Z_k).
  std::vector<Rational> f(n * n * n);
  auto at = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  Network work = net;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rational a = alpha[i], b = alpha[j];
        const Rational y = 2 - zs[k] - a * b - 1 / (a * b);
        RatMatrix ma(2, 2), mb(2, 2);
        ma(0, 0) = a, ma(1, 0) = y, ma(1, 1) = 1 / a;
        mb(0, 0) = b, mb(0, 1) = 1, mb(1, 1) = 1 / b;
        set_sl2_transports(work, ma, mb);
        f[at(i, j, k)] = qdet(sl2_laplacian(work));
      }
  // Apply the inverse Vandermonde along each axis (Y uses the X grid).
  auto apply = [&](const RatMatrix& inv, int axis) {
    std::vector<Rational> g(f.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Rational s = 0;
          for (int t = 0; t < n; ++t) {
            const int idx = axis == 0 ? at(t, j, k) : axis == 1 ? at(i, t, k) : at(i, j, t);
            const int row = axis == 0 ? i : axis == 1 ? j : k;
            s += inv(row, t) * f[idx];
          }
          g[at(i, j, k)] = s;
        }
    f = std::move(g);
  };
  apply(vx, 0);
  apply(vx, 1);
  apply(vz, 2);
  PantsPoly out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (sgn(f[at(i, j, k)]) != 0) out[{i, j, k}] = f[at(i, j, k)];
  return out;
}

Rational eval_pants_poly(const PantsPoly& p, const Rational& x, const Rational& y, const Rational& z) {
  Rational s = 0;
  for (const auto& [e, c] : p) {
    Rational t = c;
    for (int i = 0; i < e[0]; ++i) t *= x;
    for (int i = 0; i < e[1]; ++i) t *= y;
    for (int i = 0; i < e[2]; ++i) t *= z;
    s += t;
  }
  return s;
}

}  // namespace ohmlab
