#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"
#include "ohmlab/rng.hpp"

namespace ohmlab {

enum class MoveKind { DeadBranch, SelfLoop, Series, Parallel, YDelta, DeltaY };

std::string move_name(MoveKind k);  // "dead-branch", "self-loop", "series", "parallel", "ydelta", "deltay"
MoveKind parse_move(const std::string& s);

// Sites: `vertex` for dead-branch, series and Y-Delta (the centre, never a
// node); `edges` (positions) for self-loop {e}, parallel {e, f} and
// Delta-Y {three edges bounding a triangular face}.
struct Move {
  MoveKind kind = MoveKind::Series;
  int vertex = -1;
  std::vector<int> edges;
};
std::string move_str(const Network& net, const Move& m);

// Homology weights compose along the replaced paths, so line-bundle data is
// preserved as well: parallel edges must carry equal weights, removed loops
// weight zero, and a Delta-Y triangle must not be a hole.  Edges that survive
// keep their ids; a Y-Delta triangle edge a_i a_{i+1} reuses the arm to a_i
// and a Delta-Y arm reuses the opposite triangle edge.  Throws
// NetworkError(Domain) when the site does not match the pattern.
Network apply_move(const Network& net, const Move& m);

// All sites where apply_move succeeds.
std::vector<Move> legal_moves(const Network& net);

struct InvarianceCheck {
  RatMatrix before, after;
  bool equal = false;
};
InvarianceCheck response_invariance_check(const Network& net, const Move& m);

// Merges the endpoints of a non-loop edge, splicing the rotations.  The
// merged vertex is a node when either endpoint was; both being nodes is an
// error.
Network contract_edge(const Network& net, int k);

// Rank of d L / d c at the network's conductances.  A circular planar
// network is minimal exactly when this equals the edge count.
int response_jacobian_rank(const Network& net);

// Noninterlaced pair of node sets: rows in circular order, columns in
// reverse circular order, so the minor det L[rows, cols] is >= 0 for every
// circular planar network.
struct MinorIndex {
  std::vector<int> rows, cols;
};
std::string minor_str(const MinorIndex& m);  // "L[1,2;4,3]" with 1-based nodes
std::vector<MinorIndex> noninterlaced_minors(int n, int max_size = 0);
Rational minor_value(const RatMatrix& l, const MinorIndex& m);

class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(int step, const std::string& what)
      : std::runtime_error("peel step " + std::to_string(step) + ": " + what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct PeelStep {
  bool spike = false;  // contraction of a boundary spike; otherwise deletion of a node-node edge
  int edge_id = 0;
  Rational conductance;
  MinorIndex witness;  // the minor that vanishes after the peel
};
struct Reconstruction {
  std::vector<Rational> conductance;  // aligned with topology.edges
  std::vector<PeelStep> steps;
};
// Peeling: repeatedly take a node-node edge (nodes scanned counterclockwise,
// lowest edge id first) or else a boundary spike whose removal leaves a
// minimal network; its conductance solves the vanishing of a noninterlaced
// minor that the removal kills, which is affine in the conductance.  Throws
// NetworkError(Domain) for a non-minimal topology and ReconstructionError
// when L is not the response of positive conductances on it.
Reconstruction reconstruct(const Network& topology, const RatMatrix& l);

// Odd n: M_{i,j} has rows j..j+i-1 and columns (n-1)/2 + (j..j+i-1), for
// 1 <= i <= (n-1)/2 and all rotations j.  Even n: for each chord count i the
// n/2 centred minors (equal gaps) with first row j < n/2, and for i < n/2 the
// n/2 off-centre ones whose shorter gap follows the rows counterclockwise,
// again with first row j < n/2.  Ordered by i, then centred before
// off-centre, then j.
std::vector<MinorIndex> central_minors(int n);
std::vector<Rational> evaluate_minors(const RatMatrix& l, const std::vector<MinorIndex>& ms);

struct IdentitySides {
  Rational lhs, rhs;
  bool holds() const { return lhs == rhs; }
};
// M = L[rows, cols] with |cols| = |rows| - 1; a, b, c rows in this order
// within `rows`, d a column.  lhs = |M^{-b}| |M^{-a,c}_{-d}|,
// rhs = |M^{-a}| |M^{-b,c}_{-d}| + |M^{-c}| |M^{-a,b}_{-d}|.
IdentitySides jaw_identity(const RatMatrix& l, const std::vector<int>& rows, const std::vector<int>& cols,
                           int a, int b, int c, int d);
// M = L[rows, cols] square; a before b in rows, c before d in cols.
// lhs = |M^{-a}_{-c}| |M^{-b}_{-d}|, rhs = |M| |M^{-a,b}_{-c,d}| + |M^{-b}_{-c}| |M^{-a}_{-d}|.
IdentitySides condensation_identity(const RatMatrix& l, const std::vector<int>& rows,
                                    const std::vector<int>& cols, int a, int b, int c, int d);

struct LogJacobian {
  std::vector<MinorIndex> minors;
  RatMatrix matrix;  // d log M_i / d log c_j, columns in edge order
  Rational det;
};
// Needs a disk network with n(n-1)/2 edges and positive central minors.
LogJacobian log_jacobian(const Network& net);
// Central differences in log c with relative step h, evaluated exactly and
// differenced in long double.
long double log_jacobian_fd(const Network& net, const Rational& h);

// Random minimal disk network: Gamma_n with random conductances, reshaped by
// random Y-Delta/Delta-Y moves and minimality-preserving deletions and
// contractions until at most `max_edges` edges remain.
Network random_minimal_disk_network(Rng& rng, int n, int max_edges);

}  // namespace ohmlab
