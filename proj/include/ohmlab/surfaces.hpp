#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"
#include "ohmlab/roots.hpp"
#include "ohmlab/upoly.hpp"

namespace ohmlab {

// det of the line-bundle Laplacian of an annulus or torus network.  Throws
// NetworkError(Domain) on other surfaces and std::logic_error if the result
// is not reciprocal or does not vanish at z = 1.
LaurentPoly char_poly(const Network& net);

// Annulus characteristic polynomial: the only repeated root is z = 1 (double)
// and every root is real and positive.
struct AnnulusRootVerdict {
  bool pass = false;
  std::string witness;  // empty on pass
  RootReport report;
};
AnnulusRootVerdict annulus_root_report(const LaurentPoly& p);

// Ch_n(a + 1/a) = a^n + a^-n; Ch_0 = 2.
UPoly chebyshev_ch(int n);

// prod_{k=0}^{m-1} (Ch_n(4 - 2 cos(k pi/m)) - z - 1/z) for the cylinder grid,
// computed exactly: the product over the path eigenvalues is det of
// Ch_n(2 + P_m) - (z + 1/z), with P_m the path Laplacian.
LaurentPoly cylinder_closed_form(int m, int n);
// The same product in floating point over k = k_first..k_last, times
// (2 - z - 1/z) when `extra_factor`.  The correct range is 0..m-1 without
// the extra factor.
std::complex<double> cylinder_product(int m, int n, std::complex<double> z, int k_first, int k_last,
                                      bool extra_factor);

// Annulus: Q(x) = sum C_k x^k with p = Q(2 - z - 1/z), and the cycle-count
// distribution Q(x)/Q(1).
struct CyclePgf {
  UPoly q;
  std::vector<Rational> probability;  // index = number of cycles
};
CyclePgf cycle_count_pgf(const LaurentPoly& p);

// Vertices of the convex hull of the support, counterclockwise starting at
// the lowest, then leftmost, exponent.  Collinear points are dropped.
std::vector<Exp> newton_polygon(const LaurentPoly& p);
bool is_centrally_symmetric(const std::vector<Exp>& polygon);

// p = sum over primitive (i,j) (first nonzero entry positive) and k >= 1 of
// C_{k(i,j)} (2 - z^(i,j) - z^-(i,j))^k, with no leftover constant.
struct HomologyDecomposition {
  std::map<Exp, Rational> c;  // key (r, s) = k (i, j)
  bool valid = true;
  std::string reason;
};
HomologyDecomposition homology_decompose(const LaurentPoly& p);
LaurentPoly reassemble(const HomologyDecomposition& d);

// (2 pi i)^-2 times the integral of log p(z1, z2) dz1/z1 dz2/z2 over the unit
// torus: midpoint rule on N x N and 2N x 2N grids (the offset avoids
// z = (1,1)), Richardson-extrapolated with error order N^-2.
struct FreeEnergy {
  double value = 0, coarse = 0, fine = 0;
  int grid = 0;
};
FreeEnergy free_energy(const LaurentPoly& p, int grid = 128);

// Points of {p = 0} on the torus |z1| = r1, |z2| = r2.  Candidates come from
// the resultant in z2 of p and its reflection p(r1^2/z1, r2^2/z2), sampled on
// |z1| = r1; each is refined by Newton and kept when both moduli match within
// `tol` (relative).  Throws NetworkError(Domain) when the resultant vanishes
// identically on the slice.
std::vector<std::array<std::complex<double>, 2>> torus_roots(const LaurentPoly& p, double r1, double r2,
                                                             double tol = 1e-8);

struct AmoebaPoint {
  double log_r1 = 0, log_r2 = 0;
  int count = 0;
};
struct AmoebaScan {
  std::vector<AmoebaPoint> points;
  int max_count = 0;
  bool harnack = true;  // every sampled torus meets the curve at most twice
};
// grid x grid cell centres of [lo, hi]^2 in log-radius.
AmoebaScan amoeba_sample(const LaurentPoly& p, int grid = 50, double lo = -3, double hi = 3, double tol = 1e-8);

// Quaternion determinant of a self-dual matrix of 2x2 blocks (given as the
// 2n x 2n matrix M'): Pf(Z M') with Z = diag([[0,1],[-1,0]]).  Throws
// std::invalid_argument when M' is not self-dual.
Rational qdet(const RatMatrix& blocks);

// sum over CRSFs of prod c_e prod over cycles (2 - Tr w), w the monodromy of
// the SL2 transports around the cycle.  Edges without a transport carry I.
Rational sl2_crsf_sum(const Network& net);

// Pair of pants with transports A^a B^b: qdet of the SL2 Laplacian as
// sum c_{ijk} X^i Y^j Z^k, X = 2 - Tr A, Y = 2 - Tr B, Z = 2 - Tr AB.
// Recovered by tensor interpolation with A = [[a,0],[y,1/a]],
// B = [[b,1],[0,1/b]], the product y fixing Z.
using PantsPoly = std::map<std::array<int, 3>, Rational>;
PantsPoly pair_of_pants_poly(const Network& net);
Rational eval_pants_poly(const PantsPoly& p, const Rational& x, const Rational& y, const Rational& z);

}  // namespace ohmlab
