#pragma once

#include <complex>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/upoly.hpp"

namespace ohmlab {

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

// Root analysis of a one-variable Laurent polynomial p = z^shift * q(z).
struct RootReport {
  int degree = 0;                  // deg q
  int shift = 0;
  bool squarefree = true;          // gcd(q, q') is constant
  int positive_real = 0;           // Sturm count in (0, inf), with multiplicity
  int positive_real_distinct = 0;  // Sturm count of the square-free part
  std::vector<Root> roots;         // all complex roots of q, polished

  // Roots within `tol` of the positive real axis, expanded by multiplicity,
  // sorted ascending.
  std::vector<double> positive_real_values(double tol = 1e-9) const;
  bool all_positive_real(double tol = 1e-9) const;
};

RootReport real_roots(const LaurentPoly& p);

// Complex roots of a square-free polynomial: companion-matrix eigenvalues
// refined by Newton iteration in extended precision.
std::vector<std::complex<double>> polished_roots(const UPoly& squarefree);

}  // namespace ohmlab
