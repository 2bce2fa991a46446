#include "ohmlab/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ohmlab {

std::vector<std::complex<double>> polished_roots(const UPoly& f) {
  const int n = f.degree();
  std::vector<std::complex<double>> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.emplace_back(Rational(-f.coeff(0) / f.coeff(1)).get_d(), 0.0);
    return out;
  }
  UPoly m = f.monic();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coeff(i).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
  UPoly d = m.derivative();
  for (int i = 0; i < n; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 100; ++it) {
      auto fz = m.eval(z), dz = d.eval(z);
      if (std::abs(dz) == 0) break;
      auto step = fz / dz;
      z -= step;
      if (std::abs(step) <= 1e-30L * std::max<long double>(1, std::abs(z))) break;
    }
    // Real polynomial: a root that is real to working precision is reported as real.
    if (std::abs(z.imag()) < 1e-14L * std::max<long double>(1, std::abs(z))) z = z.real();
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

RootReport real_roots(const LaurentPoly& p) {
  if (p.zero()) throw std::invalid_argument("root report of the zero polynomial");
  auto [q, shift] = to_upoly(p);
  RootReport r;
  r.degree = q.degree();
  r.shift = shift;
  auto factors = squarefree_decomposition(q);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const UPoly& f = factors[i];
    if (f.degree() <= 0) continue;
    int mult = static_cast<int>(i) + 1;
    if (mult > 1) r.squarefree = false;
    int pos = sturm_positive_roots(f);
    r.positive_real += mult * pos;
    r.positive_real_distinct += pos;
    for (auto z : polished_roots(f)) r.roots.push_back({z, mult});
  }
  return r;
}

std::vector<double> RootReport::positive_real_values(double tol) const {
  std::vector<double> v;
  for (const auto& rt : roots)
    if (std::abs(rt.value.imag()) <= tol && rt.value.real() > 0)
      for (int k = 0; k < rt.multiplicity; ++k) v.push_back(rt.value.real());
  std::sort(v.begin(), v.end());
  return v;
}

bool RootReport::all_positive_real(double tol) const {
  return static_cast<int>(positive_real_values(tol).size()) == degree &&
         positive_real == degree;
}

}  // namespace ohmlab
