#pragma once

#include <map>
#include <string>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"
#include "ohmlab/rng.hpp"

namespace ohmlab {

// Enumeration caps on the edge count.  OHMLAB_MAX_EDGES, when set, replaces
// every default (never above 62, the edge-mask width).  Exceeding a cap is a
// NetworkError of kind Cap.
constexpr int kTreeCap = 20, kGroveCap = 16, kCrsfCap = 16, kCycleGroveCap = 14;
int edge_cap(int default_cap);
void check_cap(const Network& net, int default_cap, const std::string& what);

Rational mask_weight(const Network& net, EdgeMask m);

struct TreeSum {
  std::vector<EdgeMask> trees;
  Rational total = 0;
};
TreeSum enumerate_spanning_trees(const Network& net);

// Parts of node positions 0..n-1, each sorted, ordered by minimum element.
// Printed 1-based: "13|24"; items are comma-separated once n > 9.
using Partition = std::vector<std::vector<int>>;
using PartitionCombo = std::map<Partition, Rational>;

Partition canonical(Partition p);
std::string partition_str(const Partition& p, int n);
Partition parse_partition(const std::string& s);
bool is_planar_partition(const Partition& p);
std::vector<Partition> all_partitions(int n);
std::vector<Partition> planar_partitions(int n);

struct GroveSum {
  std::map<Partition, Rational> by_partition;
  Rational total = 0;
  Rational of(const Partition& p) const;
  Rational uncrossing(int n) const;
};
// Groves of `net` (every component a tree holding at least one node), keyed
// by the partition of node positions they induce.
GroveSum grove_sums(const Network& net);

// Rule 1 choice policies.  The witnesses a<b<c<d are the lexicographically
// first (Nearest) or last (Last) crossing quadruple; the other items of each
// part join the nearer witness in circular order, ties to the smaller one.
// Nearest terminates for every partition with n <= 8 (checked exhaustively);
// Last cycles from n = 7 on, and always splitting off A = {a}, B = {b}
// already cycles on 124|35.  A revisited partition throws std::logic_error.
enum class RulePolicy { Nearest, Last };
PartitionCombo project_partition(const Partition& p, int n, RulePolicy policy = RulePolicy::Nearest);

// Columns indexed by all partitions of n, rows by planar ones.
struct ProjectionMatrix {
  std::vector<Partition> rows, cols;
  Matrix<Rational> p;
};
ProjectionMatrix projection_matrix(int n, RulePolicy policy = RulePolicy::Nearest);

// Sum over spanning forests of K_n whose trees span the parts of tau of the
// product of L_ij over forest edges.
Rational L_tau(const RatMatrix& l, const Partition& tau);

// (-1)^|T| det L[R+T, S+T], rows ordered R then T and columns S then T
// (T sorted).  Equals sum_rho sgn(rho) Z[r_i ~ s_rho(i) | q...] / Z_unc over
// groves of the network with T made internal.
Rational grove_ratio_via_minors(const RatMatrix& l, const std::vector<int>& r, const std::vector<int>& s,
                                const std::vector<int>& t);

// Pr(sigma) / Pr(uncrossing) = sum_tau P[sigma, tau] L_tau.
Rational grove_probability(const RatMatrix& l, const Partition& sigma);

// Cycle-rooted spanning forests: every component has exactly one cycle.
// Weights are prod c_e times prod over cycles of (2 - w - 1/w) with w the
// monomial of the cycle's homology class.
struct CrsfBucket {
  Rational weight = 0;  // sum of prod c_e
  long count = 0;
};
struct CrsfSums {
  LaurentPoly total;              // equals det of the line Laplacian
  LaurentPoly essential_total;    // cycles all noncontractible
  // Key: homology classes of the cycles, each with sign normalised (first
  // nonzero entry positive), sorted.  Contractible cycles appear as (0,0).
  std::map<std::vector<Exp>, CrsfBucket> by_homology;
  std::map<int, CrsfBucket> by_count;  // essential CRSFs by number of cycles
};
CrsfSums enumerate_crsfs(const Network& net);

// Signed weighted sum over cycle-rooted groves of the network with the nodes
// in T made internal: components are trees joining r_i to s_rho(i), trees
// holding one remaining node, or nodeless unicyclic components.  Each term
// carries sgn(rho), prod c_e, prod over cycles of (2 - w - 1/w) and the
// transport z^h of the tree path from each r_i to s_rho(i).  R, S, T are node
// positions.  (-1)^|T| times this equals det L[R+T, S+T] * Z_unc for the
// line-bundle response matrix.
LaurentPoly enumerate_cycle_rooted_groves(const Network& net, const std::vector<int>& r,
                                          const std::vector<int>& s, const std::vector<int>& t);

// Wilson's algorithm rooted at vertex 0 with loop-erased walks stepping along
// a dart with probability proportional to its conductance (self-loops
// skipped).  Randomness is exact: conductances at each vertex are scaled to
// integers and drawn with Rng::below.
EdgeMask wilson_sample(const Network& net, Rng& rng);
EdgeMask wilson_sample(const Network& net, std::uint64_t seed);

}  // namespace ohmlab
