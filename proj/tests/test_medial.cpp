#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ohmlab/families.hpp"
#include "ohmlab/medial.hpp"

using namespace ohmlab;

namespace {

// Brute-force minimality on a finite piece of the universal cover: every
// strand is lifted at deck offsets in [-D, D]^2, periodic strands unrolled
// over [-D, D] periods, and crossings between lift instances are counted.
bool lift_oracle_minimal(const MedialData& md, int D = 3) {
  struct Inst {
    int strand;
    Exp g;
  };
  std::vector<Inst> inst;
  auto same_lift = [&](int s, Exp a, Exp b) {
    Exp d = a - b;
    if (d == Exp{0, 0}) return true;
    if (!md.strands[s].closed) return false;
    Exp h = md.strands[s].homology;
    for (int k = -4 * D; k <= 4 * D; ++k)
      if (Exp{k * h[0], k * h[1]} == d) return true;
    return false;
  };
  for (int s = 0; s < static_cast<int>(md.strands.size()); ++s) {
    if (md.strands[s].closed && md.strands[s].homology == Exp{0, 0}) return false;
    for (int x = -D; x <= D; ++x)
      for (int y = -D; y <= D; ++y) {
        bool dup = false;
        for (const auto& i : inst)
          if (i.strand == s && same_lift(s, i.g, {x, y})) dup = true;
        if (!dup) inst.push_back({s, {x, y}});
      }
  }
  // (edge, position) -> instances passing with type 0 / type 1.
  std::map<std::pair<int, Exp>, std::array<std::vector<int>, 2>> at;
  for (int i = 0; i < static_cast<int>(inst.size()); ++i) {
    const Strand& st = md.strands[inst[i].strand];
    const int K = st.closed ? D : 0;
    for (int k = -K; k <= K; ++k)
      for (const auto& p : st.passes) {
        Exp q = p.offset + inst[i].g + Exp{k * st.homology[0], k * st.homology[1]};
        at[{p.edge, q}][p.type].push_back(i);
      }
  }
  std::map<std::pair<int, int>, int> crossings;
  for (const auto& [key, ty] : at) {
    for (int a : ty[0])
      for (int b : ty[1]) {
        if (a == b) return false;
        if (++crossings[{std::min(a, b), std::max(a, b)}] > 1) return false;
      }
  }
  return true;
}

Network parallel_pair() {
  NetworkBuilder b(Surface::Disk, 2);
  int d0 = b.add_edge(0, 1, 1);
  int d1 = b.add_edge(0, 1, 2);
  b.set_rotation(0, {d0, d1});
  b.set_rotation(1, {d0 + 1, d1 + 1});
  b.set_nodes({0, 1});
  return b.build();
}

// Random embedded networks on the annulus and torus: grids with some edges
// deleted and some parallel edges or self-loops added inside faces.
Network random_surface_network(Rng& rng, bool torus) {
  Network net = torus ? torus_grid(1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)))
                      : cylinder(1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(4)), rng.below(2));
  const int drops = static_cast<int>(rng.below(4));
  for (int k = 0; k < drops && net.num_edges() > 1; ++k) {
    Network trial = net;
    remove_edge(trial, static_cast<int>(rng.below(trial.num_edges())));
    try {
      validate_embedding(trial);
      net = trial;
    } catch (const NetworkError&) {
    }
  }
  if (net.nodes.empty()) {
    const int adds = static_cast<int>(rng.below(3));
    for (int k = 0; k < adds; ++k) {
      Network trial = net;
      FaceData fd = trace_faces(trial);
      const auto& face = fd.faces[rng.below(fd.faces.size())];
      int a = face[rng.below(face.size())], b = face[rng.below(face.size())];
      insert_edge(trial, Network::rev(a), Network::rev(b), 1);
      try {
        validate_embedding(trial);
        net = trial;
      } catch (const NetworkError&) {
      }
    }
  }
  for (int k = 0; k < net.num_edges(); ++k) net.edges[k].id = k;
  return net;
}

void check_partition(const Network& net, const MedialData& md) {
  std::map<int, std::array<int, 2>> count;
  for (const auto& s : md.strands)
    for (const auto& p : s.passes) ++count[p.edge][p.type];
  CHECK(static_cast<int>(count.size()) == net.num_edges());
  for (const auto& [e, c] : count) {
    CHECK(c[0] == 1);
    CHECK(c[1] == 1);
  }
}

}  // namespace

TEST_CASE("single edge between two nodes: stubs (1 3)(2 4)") {
  Network net = path_network({1});
  MedialData md = build_medial(net);
  CHECK(md.strands.size() == 2);
  CHECK(involution_str(md.stub_pair) == "(1 3)(2 4)");
  CHECK(md.stub_pair == well_connected_involution(2));
  CHECK(is_minimal(net).minimal);
}

TEST_CASE("Y network: three strands pairwise crossing once, well-connected pairing") {
  Network y = y_network(1, 2, 3);
  MedialData md = build_medial(y);
  REQUIRE(md.strands.size() == 3);
  for (const auto& s : md.strands) {
    CHECK(!s.closed);
    CHECK(s.passes.size() == 2);
  }
  CHECK(md.stub_pair == well_connected_involution(3));
  CHECK(stub_involution(y) == well_connected_involution(3));
  CHECK(is_minimal(y).minimal);
  check_partition(y, md);
}

TEST_CASE("Gamma_n is minimal with the well-connected pairing") {
  for (int n = 2; n <= 8; ++n) {
    Network g = gamma_network(n);
    MedialData md = build_medial(g);
    CHECK(md.stub_pair == well_connected_involution(n));
    CHECK(crossing_number(md.stub_pair) == n * (n - 1) / 2);
    CHECK(is_minimal(g).minimal);
    check_partition(g, md);
  }
}

TEST_CASE("non-minimal witnesses") {
  SUBCASE("self-loop") {
    NetworkBuilder b(Surface::Disk, 2);
    int d0 = b.add_edge(0, 1, 1);
    int d1 = b.add_edge(1, 1, 1);
    b.set_rotation(0, {d0});
    b.set_rotation(1, {d0 + 1, d1, d1 + 1});
    b.set_nodes({0, 1});
    Network net = b.build();
    Minimality m = is_minimal(net);
    CHECK(!m.minimal);
    // The strand through the loop edge runs around inside it and crosses
    // itself at the loop's medial vertex.
    CHECK(m.reason == "self-intersection");
    MedialData md = build_medial(net);
    const Strand& s = md.strands.at(m.strand_a);
    int on_loop = 0;
    for (const auto& p : s.passes) on_loop += p.edge == 1;
    CHECK(on_loop == 2);
  }
  SUBCASE("parallel edges form a lens") {
    Minimality m = is_minimal(parallel_pair());
    CHECK(!m.minimal);
    CHECK(m.reason == "two strands cross twice");
    CHECK(m.strand_a != m.strand_b);
  }
  SUBCASE("series pair through an interior vertex is a lens; the 3x3 grid is minimal") {
    CHECK(!is_minimal(path_network({1, 2})).minimal);
    CHECK(is_minimal(grid_disk(3, 3)).minimal);
  }
}

TEST_CASE("non-crossing matchings") {
  // A path through three nodes: each edge is a single crossing of the
  // strands around its ends.
  Network net = path_network({1, 1});
  net.nodes = {0, 1, 2};
  validate_embedding(net);
  Involution p = stub_involution(net);
  CHECK(is_fixed_point_free_involution(p));
  CHECK(crossing_number(p) == 2);
  CHECK(crossing_number(Involution{1, 0, 3, 2}) == 0);
  CHECK(crossing_number(Involution{5, 2, 1, 4, 3, 0}) == 0);
}

TEST_CASE("strand traces partition medial edge-ends on random networks") {
  Rng rng(11);
  for (int it = 0; it < 150; ++it) {
    Network net = random_disk_network(rng, 2 + static_cast<int>(rng.below(5)), static_cast<int>(rng.below(4)), 12);
    MedialData md = build_medial(net);
    check_partition(net, md);
    CHECK(is_fixed_point_free_involution(md.stub_pair));
    CHECK(is_minimal(net, md).minimal == lift_oracle_minimal(md));
  }
}

TEST_CASE("torus grid strands") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      Network t = torus_grid(m, n);
      MedialData md = build_medial(t);
      const int g = std::gcd(m, n);
      CHECK(md.strands.size() == static_cast<std::size_t>(2 * g));
      std::set<Exp> classes;
      for (const auto& s : md.strands) {
        CHECK(s.closed);
        CHECK(s.passes.size() == static_cast<std::size_t>(2 * m * n / g));
        Exp h = s.homology;
        if (h < Exp{0, 0}) h = Exp{0, 0} - h;
        classes.insert(h);
      }
      CHECK(classes == std::set<Exp>{{n / g, m / g}, {n / g, -m / g}});
      check_partition(t, md);
      CHECK(is_minimal(t, md).minimal);
      CHECK(lift_oracle_minimal(md));
    }
}

TEST_CASE("annulus and torus minimality agrees with the lift oracle") {
  Rng rng(2024);
  int minimal = 0, total = 0;
  for (int it = 0; it < 400; ++it) {
    Network net = random_surface_network(rng, it % 2 == 0);
    MedialData md = build_medial(net);
    check_partition(net, md);
    bool fast = is_minimal(net, md).minimal;
    CHECK(fast == lift_oracle_minimal(md));
    minimal += fast;
    ++total;
  }
  CHECK(minimal > 0);
  CHECK(minimal < total);
  CHECK_THROWS_AS(is_minimal(pants_theta(1, 1, 1)), NetworkError);
}

TEST_CASE("crossing number and boundary resolution") {
  Involution w3 = well_connected_involution(3);
  CHECK(crossing_number(w3) == 3);
  CHECK(involution_str(w3) == "(1 4)(2 5)(3 6)");
  for (int site = 0; site < 6; ++site) {
    REQUIRE(is_boundary_crossing(w3, site));
    CHECK(crossing_number(resolve_boundary_crossing(w3, site)) == 2);
  }
  Involution nc{1, 0, 3, 2};
  for (int site = 0; site < 4; ++site) {
    CHECK(!is_boundary_crossing(nc, site));
    CHECK_THROWS_AS(resolve_boundary_crossing(nc, site), NetworkError);
  }
}

TEST_CASE("Hasse diagrams") {
  // Number of fixed-point-free involutions of 2n points: (2n-1)!!.
  const int sizes[] = {1, 3, 15, 105, 945};
  for (int n = 1; n <= 5; ++n) {
    HasseDiagram h = hasse_diagram(n);
    CHECK(h.elements.size() == static_cast<std::size_t>(sizes[n - 1]));
    REQUIRE(h.maxima.size() == 1);
    CHECK(h.elements[h.maxima[0]] == well_connected_involution(n));
    CHECK(h.grade[h.maxima[0]] == n * (n - 1) / 2);
    for (std::size_t i = 0; i < h.elements.size(); ++i)
      for (int j : h.down[i]) CHECK(h.grade[j] == h.grade[i] - 1);
    // Every involution with a crossing has a boundary-adjacent one.
    for (std::size_t i = 0; i < h.elements.size(); ++i) CHECK((h.grade[i] == 0) == h.down[i].empty());
  }
  HasseDiagram h1 = hasse_diagram(1);
  CHECK(h1.down[0].empty());
  // n = 2: one chain step from the crossing pairing to each of the two
  // non-crossing ones.
  HasseDiagram h2 = hasse_diagram(2);
  CHECK(h2.grade == std::vector<int>{0, 0, 1});
  CHECK(h2.down[2] == std::vector<int>{0, 1});
  // Longest descending chains from the top have length n(n-1)/2.
  for (int n = 2; n <= 5; ++n) {
    HasseDiagram h = hasse_diagram(n);
    std::vector<int> depth(h.elements.size(), 0);
    for (std::size_t i = 0; i < h.elements.size(); ++i)
      for (int j : h.down[i]) depth[i] = std::max(depth[i], depth[j] + 1);
    CHECK(depth[h.maxima[0]] == n * (n - 1) / 2);
  }
  CHECK_THROWS_AS(hasse_diagram(6), NetworkError);
}
