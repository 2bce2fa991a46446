#include <set>

#include "doctest.h"
#include "ohmlab/families.hpp"
#include "ohmlab/laplacian.hpp"
#include "oracles.hpp"

using namespace ohmlab;

namespace {

Network bare(int vertices, std::vector<Edge> edges, Surface s = Surface::Torus) {
  Network n;
  n.surface = s;
  n.num_vertices = vertices;
  for (std::size_t k = 0; k < edges.size(); ++k) edges[k].id = static_cast<int>(k);
  n.edges = std::move(edges);
  return n;
}

Rational quad(const RatMatrix& m, const std::vector<Rational>& u) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) s += u[i] * m(i, j) * u[j];
  return s;
}

}  // namespace

TEST_CASE("assembly examples") {
  Rational c1 = 2, c2 = 3, c3 = frac(1, 2), s = c1 + c2 + c3;
  RatMatrix y = laplacian(y_network(c1, c2, c3));
  RatMatrix want(4, 4);
  Rational c[3] = {c1, c2, c3};
  for (int i = 0; i < 3; ++i) {
    want(i, i) = c[i];
    want(i, 3) = want(3, i) = -c[i];
  }
  want(3, 3) = s;
  CHECK(y == want);

  // K3 with independent transports z12 = z1, z13 = z2, z23 = z2/z1.
  Network k3 = bare(3, {{0, 0, 1, 2, {1, 0}, {}}, {0, 0, 2, 3, {0, 1}, {}}, {0, 1, 2, 5, {-1, 1}, {}}});
  auto lap = line_laplacian(k3);
  LaurentPoly z1 = LaurentPoly::var(0), z2 = LaurentPoly::var(1);
  CHECK(lap(0, 0) == LaurentPoly(5));
  CHECK(lap(1, 1) == LaurentPoly(7));
  CHECK(lap(2, 2) == LaurentPoly(8));
  CHECK(lap(0, 1) == LaurentPoly(-2) * z1);
  CHECK(lap(1, 0) == LaurentPoly(-2) * z1.inverted());
  CHECK(lap(0, 2) == LaurentPoly(-3) * z2);
  CHECK(lap(2, 0) == LaurentPoly(-3) * z2.inverted());
  CHECK(lap(1, 2) == LaurentPoly(-5) * z2 * z1.inverted());
  CHECK(lap(2, 1) == LaurentPoly(-5) * z1 * z2.inverted());

  Network loop = bare(1, {{0, 0, 0, 7, {1, 0}, {}}}, Surface::Annulus);
  auto l1 = line_laplacian(loop);
  CHECK(l1(0, 0) == LaurentPoly(7) * (LaurentPoly(2) - z1 - z1.inverted()));
}

TEST_CASE("trivial Laplacian has zero rows and a one-dimensional kernel") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    Network net = random_weighted_graph(rng, Surface::Disk, rng.range(2, 8), rng.range(8, 12), true);
    RatMatrix l = laplacian(net);
    for (int i = 0; i < net.num_vertices; ++i) {
      Rational s = 0;
      for (int j = 0; j < net.num_vertices; ++j) {
        s += l(i, j);
        CHECK(l(i, j) == l(j, i));
      }
      CHECK(s == 0);
    }
    CHECK(det(l) == 0);
    std::vector<std::size_t> r;
    for (int i = 1; i < net.num_vertices; ++i) r.push_back(i);
    CHECK(det(l.submatrix(r, r)) != 0);
  }
}

TEST_CASE("unitary and SL2 bundles") {
  Rng rng(5);
  GaussQ u1(frac(3, 5), frac(4, 5)), u2(frac(5, 13), frac(-12, 13));
  for (int t = 0; t < 10; ++t) {
    Network net = random_weighted_graph(rng, Surface::Torus, rng.range(2, 6), rng.range(6, 10), true);
    CHECK(is_hermitian(unitary_laplacian(net, u1, u2)));
    RatMatrix a(2, 2), b(2, 2);
    a(0, 0) = frac(3, 2); a(0, 1) = 1; a(1, 0) = -1; a(1, 1) = 0;
    b(0, 0) = 1; b(0, 1) = 2; b(1, 0) = frac(1, 3); b(1, 1) = frac(5, 3);
    set_sl2_transports(net, a, b);
    RatMatrix m = sl2_laplacian(net);
    CHECK(is_self_dual(m));
  }
  CHECK_THROWS_AS(unitary_laplacian(y_network(1, 1, 1), GaussQ(2)), NetworkError);
}

TEST_CASE("Dirichlet problem") {
  Rational c1 = 1, c2 = 2, c3 = 4;
  Network y = y_network(c1, c2, c3);
  RatMatrix d = dirichlet_submatrix(y, y.nodes);
  REQUIRE(d.rows() == 1);
  CHECK(d(0, 0) == 7);
  Network p = path_network({1, 1});
  CHECK(dirichlet_submatrix(p, {0, 2})(0, 0) == 2);
  RatMatrix none = dirichlet_submatrix(p, {0, 1, 2});
  CHECK(none.rows() == 0);
  CHECK(det(none) == 1);
  CHECK_THROWS_AS(dirichlet_submatrix(p, {}), NetworkError);

  CHECK(harmonic_extension(y, y.nodes, {1, 0, 0})[3] == frac(1, 7));
  auto k = harmonic_extension(y, y.nodes, {5, 5, 5});
  for (const auto& v : k) CHECK(v == 5);
  CHECK(harmonic_extension(p, {0, 2}, {0, 1})[1] == frac(1, 2));

  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    Network net = random_disk_network(rng, rng.range(2, 5), rng.range(1, 3), 12);
    std::vector<Rational> u;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) u.push_back(frac(rng.range(-9, 9), rng.range(1, 5)));
    auto f = harmonic_extension(net, net.nodes, u);
    Rational lo = *std::min_element(u.begin(), u.end()), hi = *std::max_element(u.begin(), u.end());
    RatMatrix l = laplacian(net);
    for (int v = 0; v < net.num_vertices; ++v) {
      CHECK(f[v] >= lo);
      CHECK(f[v] <= hi);
      if (!net.is_node(v)) {
        Rational s = 0;
        for (int w = 0; w < net.num_vertices; ++w) s += l(v, w) * f[w];
        CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("response matrix") {
  Rational c1 = 2, c2 = 3, c3 = 5, s = c1 + c2 + c3;
  RatMatrix l = response_matrix(y_network(c1, c2, c3));
  CHECK(l(0, 1) == c1 * c2 / s);
  CHECK(l(0, 2) == c1 * c3 / s);
  CHECK(l(1, 2) == c2 * c3 / s);
  CHECK(l(0, 0) == -c1 + c1 * c1 / s);
  RatMatrix u = response_matrix(y_network(1, 1, 1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(u(i, j) == (i == j ? frac(-2, 3) : frac(1, 3)));
  RatMatrix e = response_matrix(path_network({frac(7, 2)}));
  CHECK(e(0, 0) == frac(-7, 2));
  CHECK(e(0, 1) == frac(7, 2));

  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    Network net = random_disk_network(rng, rng.range(2, 5), rng.range(0, 3), 12);
    RatMatrix r = response_matrix(net);
    const int n = static_cast<int>(net.nodes.size());
    for (int i = 0; i < n; ++i) {
      Rational rs = 0;
      for (int j = 0; j < n; ++j) {
        rs += r(i, j);
        CHECK(r(i, j) == r(j, i));
        if (i == j) continue;
        // Strictly positive exactly when i and j are joined avoiding other nodes.
        if (oracle::node_avoiding_path(net, net.nodes[i], net.nodes[j])) CHECK(r(i, j) > 0);
        else CHECK(r(i, j) == 0);
      }
      CHECK(rs == 0);
      CHECK(r(i, i) < 0);
    }
  }
}

TEST_CASE("line-bundle response on the annulus") {
  Network h = cylinder(2, 3, true);
  auto l = response_matrix_line(h);
  // At z = 1 the bundle is trivial.
  RatMatrix plain = response_matrix(h);
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) CHECK(l(i, j).eval(Rational(1)) == plain(i, j));
  // Entries agree with bordered determinants over the interior determinant.
  Network s = string_of_loops({2}, {1, 3});
  s.nodes = {0};
  auto ls = response_matrix_line(s);
  CHECK(ls(0, 0) == RatFunc::ratio(response_minor_numerator(s, {0}, {0}), interior_determinant(s)));
}

TEST_CASE("Dirichlet energy") {
  Network p = path_network({2});
  CHECK(dirichlet_energy(p, {0, 1}) == 2);
  CHECK(dirichlet_energy(p, {3, 3}) == 0);
  Network y = y_network(1, 1, 1);
  auto f = harmonic_extension(y, y.nodes, {1, 0, 0});
  CHECK(dirichlet_energy(y, f) == frac(2, 3));
  CHECK(dirichlet_energy(y, f) == -response_matrix(y)(0, 0));

  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    Network net = random_disk_network(rng, rng.range(2, 5), rng.range(0, 3), 12);
    std::vector<Rational> u;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) u.push_back(frac(rng.range(-9, 9), rng.range(1, 5)));
    RatMatrix lam = -response_matrix(net);
    CHECK(quad(lam, u) == dirichlet_energy(net, harmonic_extension(net, net.nodes, u)));
    // <f, Delta f> agrees with the edge sum.
    std::vector<Rational> g;
    for (int v = 0; v < net.num_vertices; ++v) g.push_back(frac(rng.range(-5, 5), rng.range(1, 3)));
    CHECK(quad(laplacian(net), g) == dirichlet_energy(net, g));
  }
}

TEST_CASE("harmonic conjugate") {
  Network p = path_network({1});
  auto r = harmonic_conjugate(p, {0, 1});
  REQUIRE(r.g.size() == 2);
  CHECK(r.g[1] - r.g[0] == 1);
  auto k = harmonic_conjugate(p, {4, 4});
  CHECK(k.g[0] == k.g[1]);

  Network g = grid_disk(3, 3);
  std::vector<Rational> u;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) u.push_back(i % 2 ? 1 : 0);
  auto f = harmonic_extension(g, g.nodes, u);
  auto c = harmonic_conjugate(g, f, 0);
  CHECK(c.g[0] == 0);
  // Path independence: the jumps around every vertex sum to zero, and each
  // inner face is harmonic for the dual operator.
  for (int v : g.internal_vertices()) {
    Rational s = 0;
    for (int d : g.rotation[v]) s += c.g[c.left[d]] - c.g[c.right[d]];
    CHECK(s == 0);
  }
  for (std::size_t a = 0; a < c.inner_faces.size(); ++a) {
    Rational s = 0;
    for (int d = 0; d < g.num_darts(); ++d)
      if (c.right[d] == static_cast<int>(a)) s += (c.g[c.left[d]] - c.g[c.right[d]]) / g.conductance(d);
    CHECK(s == 0);
  }
  std::vector<Rational> bad = f;
  bad[4] += 1;
  try {
    harmonic_conjugate(g, bad);
    FAIL("accepted a non-harmonic potential");
  } catch (const NetworkError& e) {
    CHECK(std::string(e.what()).find("vertex 4") != std::string::npos);
  }
}

TEST_CASE("transfer currents") {
  Network k3 = complete_graph(3);
  auto t = greens_and_transfer(k3);
  for (int e = 0; e < 3; ++e) CHECK(t.transfer(e, e) == frac(2, 3));
  CHECK(det(t.transfer.submatrix({0, 1}, {0, 1})) == frac(1, 3));
  CHECK(greens_and_transfer(path_network({5})).transfer(0, 0) == 1);

  Rng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    Network net = random_weighted_graph(rng, Surface::Disk, rng.range(2, 6), rng.range(5, 8));
    auto base = greens_and_transfer(net, 0);
    for (int gnd = 1; gnd < net.num_vertices; ++gnd) CHECK(greens_and_transfer(net, gnd).transfer == base.transfer);
    auto trees = oracle::spanning_trees(net);
    Rational z = 0;
    for (auto m : trees) z += oracle::mask_weight(net, m);
    const int m = net.num_edges();
    for (EdgeMask s = 1; s < (EdgeMask{1} << m); ++s) {
      if (__builtin_popcountll(s) > 3) continue;
      Rational p = 0;
      for (auto tr : trees)
        if ((tr & s) == s) p += oracle::mask_weight(net, tr);
      std::vector<std::size_t> idx;
      for (int k = 0; k < m; ++k)
        if (s >> k & 1) idx.push_back(k);
      CHECK(det(base.transfer.submatrix(idx, idx)) == p / z);
    }
  }
}
