#include <cmath>
#include <map>

#include "doctest.h"
#include "ohmlab/families.hpp"
#include "ohmlab/laplacian.hpp"
#include "ohmlab/medial.hpp"
#include "ohmlab/transforms.hpp"

using namespace ohmlab;

namespace {

// Conductance keyed by unordered endpoint pair (simple graphs only).
std::map<std::pair<int, int>, Rational> by_endpoints(const Network& net) {
  std::map<std::pair<int, int>, Rational> m;
  for (const auto& e : net.edges) m[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.c;
  return m;
}

Move vertex_move(MoveKind k, int v) { return Move{k, v, {}}; }

RatMatrix random_symmetric(Rng& rng, int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = Rational(rng.range(-9, 9));
  return m;
}

std::vector<Rational> random_conductances(Rng& rng, int k) {
  std::vector<Rational> c;
  for (int i = 0; i < k; ++i) c.push_back(rng.positive_rational());
  return c;
}

}  // namespace

TEST_CASE("Y-Delta on the Y network") {
  const Rational c1 = 2, c2 = 3, c3 = 5, s = c1 + c2 + c3;
  Network y = y_network(c1, c2, c3);
  Network tri = apply_move(y, vertex_move(MoveKind::YDelta, 3));
  CHECK(tri.num_vertices == 3);
  CHECK(tri.num_edges() == 3);
  auto c = by_endpoints(tri);
  CHECK(c[{0, 1}] == c1 * c2 / s);
  CHECK(c[{1, 2}] == c2 * c3 / s);
  CHECK(c[{0, 2}] == c1 * c3 / s);
  CHECK(response_matrix(tri) == response_matrix(y));
  CHECK(response_invariance_check(y, vertex_move(MoveKind::YDelta, 3)).equal);

  // Delta-Y then Y-Delta is the identity on conductances.
  auto moves = legal_moves(tri);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].kind == MoveKind::DeltaY);
  Network back = apply_move(tri, moves[0]);
  CHECK(by_endpoints(back) == by_endpoints(y));
  Network again = apply_move(back, vertex_move(MoveKind::YDelta, 3));
  CHECK(by_endpoints(again) == by_endpoints(tri));
  CHECK(is_minimal(back).minimal);
  CHECK(stub_involution(back) == stub_involution(tri));
}

TEST_CASE("series, parallel, dead branch, self-loop") {
  Network path = path_network({2, 2});
  Network one = apply_move(path, vertex_move(MoveKind::Series, 1));
  REQUIRE(one.num_edges() == 1);
  CHECK(one.edges[0].c == 1);
  CHECK(response_matrix(one) == response_matrix(path));

  NetworkBuilder b(Surface::Disk, 4);
  int d0 = b.add_edge(0, 1, 2);
  int d1 = b.add_edge(0, 1, 3);
  int d2 = b.add_edge(1, 2, 5);  // dead branch to vertex 2
  int d3 = b.add_edge(0, 3, 7);  // spike-like branch at a node to vertex 3
  int d4 = b.add_edge(3, 3, 1);  // self-loop at 3
  b.set_rotation(0, {d0, d3, d1});
  b.set_rotation(1, {d0 + 1, d1 + 1, d2});
  b.set_rotation(2, {d2 + 1});
  b.set_rotation(3, {d3 + 1, d4, d4 + 1});
  b.set_nodes({0, 1});
  Network net = b.build();
  const RatMatrix l = response_matrix(net);
  CHECK(l(0, 1) == 5);
  for (const auto& m : legal_moves(net)) {
    INFO(move_str(net, m));
    InvarianceCheck ic = response_invariance_check(net, m);
    CHECK(ic.equal);
  }
  Network merged = apply_move(net, Move{MoveKind::Parallel, -1, {0, 1}});
  CHECK(merged.edges[0].c == 5);
  CHECK_THROWS_AS(apply_move(net, vertex_move(MoveKind::DeadBranch, 0)), NetworkError);
  CHECK_THROWS_AS(apply_move(net, vertex_move(MoveKind::Series, 2)), NetworkError);
  CHECK_THROWS_AS(apply_move(net, Move{MoveKind::SelfLoop, -1, {0}}), NetworkError);
  CHECK_THROWS_AS(apply_move(y_network(1, 1, 1), vertex_move(MoveKind::YDelta, 0)), NetworkError);
  CHECK(parse_move("y-delta") == MoveKind::YDelta);
  CHECK_THROWS_AS(parse_move("flip"), InputError);
}

TEST_CASE("every legal move preserves the response matrix") {
  Rng rng(5);
  int applied = 0;
  for (int it = 0; it < 100 || applied < 500; ++it) {
    Network net = random_disk_network(rng, 2 + static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)), 12);
    const RatMatrix l = response_matrix(net);
    for (int step = 0; step < 6; ++step) {
      auto ms = legal_moves(net);
      if (ms.empty()) break;
      const Move m = ms[rng.below(ms.size())];
      Network next = apply_move(net, m);
      CHECK(response_matrix(next) == l);
      if (m.kind == MoveKind::YDelta || m.kind == MoveKind::DeltaY) CHECK(next.num_edges() == net.num_edges());
      else CHECK(next.num_edges() == net.num_edges() - 1);
      net = next;
      ++applied;
    }
  }
  CHECK(applied >= 500);
}

TEST_CASE("Y-Delta moves keep the stub involution of minimal networks") {
  Rng rng(6);
  for (int it = 0; it < 40; ++it) {
    Network net = random_minimal_disk_network(rng, 3 + static_cast<int>(rng.below(3)), 10);
    REQUIRE(is_minimal(net).minimal);
    const auto pi = stub_involution(net);
    for (const auto& m : legal_moves(net)) {
      if (m.kind != MoveKind::YDelta && m.kind != MoveKind::DeltaY) continue;
      Network next = apply_move(net, m);
      CHECK(stub_involution(next) == pi);
      CHECK(crossing_number(pi) == next.num_edges());
    }
  }
}

TEST_CASE("moves on the annulus keep the line-bundle response") {
  Rng rng(9);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    Network net = cylinder(1 + static_cast<int>(rng.below(3)), 2 + static_cast<int>(rng.below(3)), true);
    for (int k = 0; k < 3; ++k) {
      Network trial = net;
      FaceData fd = trace_faces(trial);
      const auto& face = fd.faces[rng.below(fd.faces.size())];
      insert_edge(trial, Network::rev(face[rng.below(face.size())]), Network::rev(face[rng.below(face.size())]),
                  rng.positive_rational());
      try {
        validate_embedding(trial);
        net = trial;
      } catch (const NetworkError&) {
      }
    }
    for (int k = 0; k < 2 && net.num_edges() > 1; ++k) {
      Network trial = net;
      remove_edge(trial, static_cast<int>(rng.below(trial.num_edges())));
      try {
        validate_embedding(trial);
        net = trial;
      } catch (const NetworkError&) {
      }
    }
    for (int k = 0; k < net.num_edges(); ++k) net.edges[k].id = k;
    Matrix<RatFunc> before;
    try {
      before = response_matrix_line(net);
    } catch (const SingularMatrix&) {
      continue;
    }
    for (int s = 0; s < 5; ++s) {
      auto ms = legal_moves(net);
      if (ms.empty()) break;
      net = apply_move(net, ms[rng.below(ms.size())]);
      CHECK(response_matrix_line(net) == before);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("Jacobian rank detects minimality") {
  Rng rng(7);
  int minimal = 0;
  for (int it = 0; it < 150; ++it) {
    Network net = random_disk_network(rng, 2 + static_cast<int>(rng.below(4)), static_cast<int>(rng.below(3)), 9);
    const bool m = is_minimal(net).minimal;
    CHECK(m == (response_jacobian_rank(net) == net.num_edges()));
    minimal += m;
  }
  CHECK(minimal > 0);
  for (int n = 2; n <= 6; ++n) CHECK(response_jacobian_rank(gamma_network(n)) == n * (n - 1) / 2);
}

TEST_CASE("contraction") {
  Network y = y_network(1, 2, 3);
  Network c = contract_edge(y, 0);
  CHECK(c.num_vertices == 3);
  CHECK(c.num_edges() == 2);
  CHECK(c.is_node(c.edges[0].u));
  CHECK_THROWS_AS(contract_edge(path_network({1}), 0), NetworkError);
}

TEST_CASE("reconstruction round trips") {
  SUBCASE("single edge") {
    Network e = path_network({Rational(7, 3)});
    Reconstruction r = reconstruct(e, response_matrix(e));
    CHECK(r.conductance == std::vector<Rational>{Rational(7, 3)});
  }
  SUBCASE("Y network (2,3,5)") {
    Network y = y_network(2, 3, 5);
    Reconstruction r = reconstruct(y, response_matrix(y));
    CHECK(r.conductance == std::vector<Rational>{2, 3, 5});
    CHECK(r.steps.front().spike);
  }
  SUBCASE("Gamma_n") {
    Rng rng(8);
    for (int n = 2; n <= 5; ++n)
      for (int rep = 0; rep < 3; ++rep) {
        Network g = gamma_network(n, random_conductances(rng, n * (n - 1) / 2));
        Network topo = g;
        for (auto& e : topo.edges) e.c = 1;
        Reconstruction r = reconstruct(topo, response_matrix(g));
        for (int k = 0; k < g.num_edges(); ++k) CHECK(r.conductance[k] == g.edges[k].c);
      }
  }
  SUBCASE("random minimal networks") {
    Rng rng(10);
    for (int it = 0; it < 20; ++it) {
      Network net = random_minimal_disk_network(rng, 3 + static_cast<int>(rng.below(3)), 10);
      REQUIRE(net.num_edges() <= 10);
      Reconstruction r = reconstruct(net, response_matrix(net));
      for (int k = 0; k < net.num_edges(); ++k) CHECK(r.conductance[k] == net.edges[k].c);
    }
  }
  SUBCASE("errors") {
    Network y = y_network(2, 3, 5);
    RatMatrix bad = response_matrix(y);
    // Entry (1,2) pushed below zero: no positive conductances produce it.
    const Rational shift = bad(0, 1) + 1;
    bad(0, 1) -= shift, bad(1, 0) -= shift, bad(0, 0) += shift, bad(1, 1) += shift;
    CHECK_THROWS_AS(reconstruct(y, bad), ReconstructionError);
    RatMatrix asym = response_matrix(y);
    asym(0, 1) += 1;
    CHECK_THROWS_AS(reconstruct(y, asym), ReconstructionError);
    Network series = path_network({1, 1});
    CHECK_THROWS_AS(reconstruct(series, response_matrix(series)), NetworkError);
    CHECK_THROWS_AS(reconstruct(y, RatMatrix(2, 2)), ReconstructionError);
  }
}

TEST_CASE("central minors") {
  for (int n = 2; n <= 8; ++n) {
    auto cm = central_minors(n);
    CHECK(cm.size() == static_cast<std::size_t>(n * (n - 1) / 2));
    auto all = noninterlaced_minors(n);
    for (const auto& m : cm) {
      bool found = false;
      for (const auto& a : all)
        if ((a.rows == m.rows && a.cols == m.cols)) found = true;
      // Central minors may list the transpose of the canonical orientation.
      for (const auto& a : all)
        if (a.rows.size() == m.rows.size()) {
          auto rr = m.cols, cc = m.rows;
          std::reverse(rr.begin(), rr.end());
          std::reverse(cc.begin(), cc.end());
          if (a.rows == rr && a.cols == cc) found = true;
        }
      CHECK(found);
    }
  }
  auto c3 = central_minors(3);
  CHECK(minor_str(c3[0]) == "L[1;2]");
  CHECK(minor_str(c3[1]) == "L[2;3]");
  CHECK(minor_str(c3[2]) == "L[3;1]");

  Rng rng(12);
  for (int n = 3; n <= 6; ++n) {
    RatMatrix l = response_matrix(gamma_network(n, random_conductances(rng, n * (n - 1) / 2)));
    for (const auto& v : evaluate_minors(l, central_minors(n))) CHECK(v > 0);
    for (const auto& m : noninterlaced_minors(n)) CHECK(minor_value(l, m) > 0);
  }
  // Deleting any edge of Gamma_5 kills some noninterlaced minor.
  Network g5 = gamma_network(5);
  for (int k = 0; k < g5.num_edges(); ++k) {
    Network d = g5;
    remove_edge(d, k);
    RatMatrix l = response_matrix(d);
    int zeros = 0;
    for (const auto& m : noninterlaced_minors(5)) zeros += sgn(minor_value(l, m)) == 0;
    CHECK(zeros >= 1);
  }
  // Positive central minors force every noninterlaced minor positive.
  int positive = 0;
  for (int it = 0; it < 150; ++it) {
    const int n = 4 + static_cast<int>(rng.below(3));
    Network net = it % 2 ? random_disk_network(rng, n, static_cast<int>(rng.below(4)), 14)
                         : random_minimal_disk_network(rng, n, n * (n - 1) / 2);
    RatMatrix l = response_matrix(net);
    bool central = true;
    for (const auto& v : evaluate_minors(l, central_minors(n))) central = central && v > 0;
    if (!central) continue;
    ++positive;
    for (const auto& m : noninterlaced_minors(n)) CHECK(minor_value(l, m) > 0);
  }
  CHECK(positive > 0);
}

TEST_CASE("jaw and condensation identities") {
  Rng rng(13);
  // Reference instances, nodes 1..9 (0-based below).
  RatMatrix l = random_symmetric(rng, 9);
  IdentitySides jaw = jaw_identity(l, {8, 7, 6, 5, 4}, {0, 1, 2, 3}, 8, 7, 4, 3);
  CHECK(jaw.holds());
  CHECK(jaw.lhs == det(l.submatrix({8, 6, 5, 4}, {0, 1, 2, 3})) * det(l.submatrix({7, 6, 5}, {0, 1, 2})));
  IdentitySides cond = condensation_identity(l, {7, 6, 5}, {0, 1, 2}, 7, 5, 0, 2);
  CHECK(cond.holds());
  CHECK(cond.lhs == det(l.submatrix({6, 5}, {1, 2})) * det(l.submatrix({7, 6}, {0, 1})));
  // 2x2: the identity is the determinant expansion.
  RatMatrix two = random_symmetric(rng, 2);
  IdentitySides c2 = condensation_identity(two, {0, 1}, {0, 1}, 0, 1, 0, 1);
  CHECK(c2.holds());
  CHECK(c2.lhs == two(1, 1) * two(0, 0));
  for (int it = 0; it < 1000; ++it) {
    const int n = 4 + static_cast<int>(rng.below(6));
    RatMatrix m = random_symmetric(rng, n);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const int k = 3 + static_cast<int>(rng.below(n - 2));  // rows
    std::vector<int> rows(perm.begin(), perm.begin() + std::min(k, n));
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<int> cols(perm.begin(), perm.begin() + static_cast<int>(rows.size()) - 1);
    CHECK(jaw_identity(m, rows, cols, rows[0], rows[1], rows.back(), cols[rng.below(cols.size())]).holds());
    std::vector<int> sq(perm.begin(), perm.begin() + static_cast<int>(rows.size()));
    CHECK(condensation_identity(m, rows, sq, rows[0], rows.back(), sq[0], sq.back()).holds());
  }
}

TEST_CASE("log-Jacobian") {
  Rng rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    Network y = y_network(rng.positive_rational(), rng.positive_rational(), rng.positive_rational());
    LogJacobian j = log_jacobian(y);
    CHECK(j.det == 1);
    // Entries: delta_ik + delta_jk - c_k / (c1 + c2 + c3).
    const Rational s = y.edges[0].c + y.edges[1].c + y.edges[2].c;
    CHECK(j.matrix(0, 0) == 1 - y.edges[0].c / s);
    CHECK(j.matrix(0, 2) == -y.edges[2].c / s);
  }
  for (int n = 4; n <= 5; ++n) {
    Network g = gamma_network(n, random_conductances(rng, n * (n - 1) / 2));
    LogJacobian j = log_jacobian(g);
    CHECK(abs(j.det) == 1);
    CHECK(std::fabs(std::fabs(log_jacobian_fd(g, Rational(1, 1000000))) - 1) < 1e-6);
  }
  CHECK_THROWS_AS(log_jacobian(path_network({1, 1})), NetworkError);
}
