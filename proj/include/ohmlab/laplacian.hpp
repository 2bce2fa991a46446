#pragma once

#include <vector>

#include "ohmlab/gauss.hpp"
#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"
#include "ohmlab/upoly.hpp"

namespace ohmlab {

// Laplacian conventions: entry (u, v) is minus the sum, over darts d from u
// to v, of c(d) times the transport along d; the diagonal adds c(d) for every
// dart leaving the vertex.  A self-loop therefore contributes c(2 - phi - 1/phi).

RatMatrix laplacian(const Network& net);

// Line bundle whose transport along a dart of weight (a, b) is z1^a z2^b.
Matrix<LaurentPoly> line_laplacian(const Network& net);

// Unitary line bundle with the variables specialised to u1, u2 (|u| = 1).
Matrix<GaussQ> unitary_laplacian(const Network& net, const GaussQ& u1, const GaussQ& u2 = 1);

// SL2 bundle: block (u, v) is -c times the transport matrix of the dart u->v;
// the reverse dart carries the inverse (the adjugate, as det = 1).
RatMatrix sl2_laplacian(const Network& net);

// A^a B^b for every edge of weight (a, b).
void set_sl2_transports(Network& net, const RatMatrix& a, const RatMatrix& b);
RatMatrix adjugate2(const RatMatrix& m);
bool is_self_dual(const RatMatrix& blocks);

bool is_hermitian(const Matrix<GaussQ>& m);

// Rows and columns of the vertices outside `boundary`, increasing order.
RatMatrix dirichlet_submatrix(const Network& net, const std::vector<int>& boundary);

// Values u on `boundary` extended harmonically to the other vertices.
std::vector<Rational> harmonic_extension(const Network& net, const std::vector<int>& boundary,
                                         const std::vector<Rational>& u);

// L = -(A - B C^{-1} B^T) with rows ordered like net.nodes.
RatMatrix response_matrix(const Network& net);
// Line-bundle response in the single variable z1 (annulus).  Throws
// SingularMatrix when the interior block is not invertible.
Matrix<RatFunc> response_matrix_line(const Network& net);

// det L_R^S * det(interior line Laplacian) as a Laurent polynomial.  R and S
// are node positions; the result is (-1)^|R| det of the bordered Laplacian.
LaurentPoly response_minor_numerator(const Network& net, const std::vector<int>& rows,
                                     const std::vector<int>& cols);
// det of the interior block of the line Laplacian.
LaurentPoly interior_determinant(const Network& net);

Rational dirichlet_energy(const Network& net, const std::vector<Rational>& f);

// Conjugate function on the extended faces of a disk network: the inner faces
// of trace_faces in order, followed by the n boundary arcs of the outer face
// (arc k runs from node k to node k+1).  For every dart d from u to v,
// g(left of d) - g(right of d) = c (f(v) - f(u)); g vanishes on `anchor`.
struct ConjugateResult {
  std::vector<Rational> g;
  std::vector<int> left, right;  // dart -> extended face
  std::vector<int> inner_faces;  // face index per inner extended face
};
// Throws NetworkError(Domain) naming the first interior vertex where f is
// not harmonic.
ConjugateResult harmonic_conjugate(const Network& net, const std::vector<Rational>& f, int anchor = 0);

// Grounded Green's function (zero row and column at `ground`) and the
// transfer-current matrix T(e, e') = c(e') (G(u,u') - G(u,v') - G(v,u') + G(v,v'))
// for edges e = (u, v), e' = (u', v'): the current through e' when a unit
// current enters at u and leaves at v.  `green_difference` omits c(e').
struct TransferData {
  RatMatrix green;
  RatMatrix green_difference;
  RatMatrix transfer;
};
TransferData greens_and_transfer(const Network& net, int ground = 0);

}  // namespace ohmlab
