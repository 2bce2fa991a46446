#pragma once

#include <string>
#include <vector>

#include "ohmlab/network.hpp"

namespace ohmlab {

// Medial graph conventions.  Corner C(x) (between dart x and sigma(x) at
// tail(x)) is a medial edge from m(edge x) to m(edge sigma x).  Its end at
// m(edge x) is L(x); its end at m(edge sigma x) is R(sigma x).  A strand goes
// straight through m(e): L(d) <-> L(rev d) and R(d) <-> R(rev d).
//
// Stubs: the boundary corner of each node is cut in two.  Stubs are numbered
// 0..2n-1 counterclockwise with stub 2k just counterclockwise of node k and
// stub 2k-1 (mod 2n) just clockwise of it.  Printed 1-based.

struct StrandPass {
  int edge = 0;
  int type = 0;   // 0: L-pass, 1: R-pass; the two passes of m(e) cross
  int dart = 0;   // the strand runs alongside this dart through m(e)
  Exp offset{0, 0};  // universal-cover offset of tail(edge) for this pass
};

struct Strand {
  std::vector<StrandPass> passes;
  bool closed = false;
  int stub_start = -1, stub_end = -1;
  Exp homology{0, 0};  // closed strands: class of the closed curve
};

struct MedialData {
  std::vector<Strand> strands;
  std::vector<int> stub_pair;  // empty without nodes
  int medial_vertices = 0;
};

// Any embedded surface network; stubs on disk and annulus.
MedialData build_medial(const Network& net);

// Disk only: the pairing of stubs.  Throws NetworkError(Domain) elsewhere.
std::vector<int> stub_involution(const Network& net);

struct Minimality {
  bool minimal = true;
  std::string reason;  // empty when minimal
  int strand_a = -1, strand_b = -1;
};
// Disk, annulus and torus.  Conditions on the universal cover: no closed
// loops, no self-crossings, no two lifted strands crossing twice.  Crossing
// points between lifts are grouped by deck offset modulo the strands' period
// lattices; parallel periodic lifts that meet at all meet infinitely often.
Minimality is_minimal(const Network& net);
Minimality is_minimal(const Network& net, const MedialData& md);

// Stub involutions as pairing arrays over 0..2n-1.
using Involution = std::vector<int>;

Involution well_connected_involution(int n);  // i <-> i+n
bool is_fixed_point_free_involution(const Involution& p);
int crossing_number(const Involution& p);
// Chords at stubs `site` and `site`+1 (mod 2n) cross.
bool is_boundary_crossing(const Involution& p, int site);
// Conjugate by the transposition (site, site+1); requires a boundary crossing.
Involution resolve_boundary_crossing(const Involution& p, int site);
std::string involution_str(const Involution& p);  // "(1 3)(2 4)"

struct HasseDiagram {
  std::vector<Involution> elements;           // sorted by crossing number, then lexicographically
  std::vector<int> grade;                     // crossing number
  std::vector<std::vector<int>> down;         // covering relations: i -> j with grade[j] = grade[i]-1
  std::vector<int> maxima;
};
// All fixed-point-free involutions of 2n stubs (n <= 5), ordered by boundary
// crossing resolution.
HasseDiagram hasse_diagram(int n);

}  // namespace ohmlab
