// Runs the sixteen acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failures.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "fixtures.hpp"
#include "ohmlab/combinatorics.hpp"
#include "ohmlab/families.hpp"
#include "ohmlab/laplacian.hpp"
#include "ohmlab/medial.hpp"
#include "ohmlab/surfaces.hpp"
#include "ohmlab/transforms.hpp"
#include "oracles.hpp"

using namespace ohmlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  // Records a failed check; the first few are kept in the note.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || note.str().size() < 200) note << (note.str().empty() ? "" : "; ") << what;
    pass = false;
  }
};

std::vector<Rational> random_conductances(Rng& rng, int k) {
  std::vector<Rational> c;
  for (int i = 0; i < k; ++i) c.push_back(rng.positive_rational());
  return c;
}

RatMatrix mat2(Rational a, Rational b, Rational c, Rational d) {
  RatMatrix m(2, 2);
  m(0, 0) = a, m(0, 1) = b, m(1, 0) = c, m(1, 1) = d;
  return m;
}

RatMatrix random_sl2(Rng& rng) {
  const Rational a = frac(rng.range(-3, 3), rng.range(1, 3)), b = frac(rng.range(-3, 3), rng.range(1, 3));
  const Rational t = rng.positive_rational(3);
  return mat2(1, a, 0, 1) * mat2(1, 0, b, 1) * mat2(t, 0, 0, 1 / t);
}

std::vector<std::vector<int>> subsets(const std::vector<int>& from, std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    if (i == from.size()) return;
    cur.push_back(from[i]);
    go(i + 1);
    cur.pop_back();
    go(i + 1);
  };
  go(0);
  return out;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
  return out;
}

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

LaurentPoly reference_torus_poly() {
  const std::pair<Exp, int> ts[] = {{{2, 0}, 3},    {{-2, 0}, 3},   {{1, 1}, -4},   {{1, -1}, -4},  {{-1, 1}, -4},
                                    {{-1, -1}, -4}, {{1, 0}, -76},  {{-1, 0}, -76}, {{0, 2}, 1},    {{0, -2}, 1},
                                    {{0, 1}, -52},  {{0, -1}, -52}, {{0, 0}, 264}};
  LaurentPoly p;
  for (const auto& [e, c] : ts) p += LaurentPoly::monomial(e, c);
  return p;
}

// Annulus and torus networks with at most 12 edges.
std::vector<Network> surface_corpus() {
  std::vector<Network> out;
  Rng rng(909);
  for (int it = 0; it < 30; ++it) {
    const Surface s = it % 2 ? Surface::Torus : Surface::Annulus;
    const int v = rng.range(1, 5);
    out.push_back(random_weighted_graph(rng, s, v, rng.range(v, 12), true));
  }
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      if (2 * m * n <= 12) out.push_back(torus_grid(m, n, rng.positive_rational()));
      Network c = cylinder(m, n);
      if (c.num_edges() <= 12) out.push_back(c);
    }
  for (int it = 0; it < 5; ++it) {
    const int n = rng.range(1, 4);
    out.push_back(string_of_loops(random_conductances(rng, n - 1), random_conductances(rng, n)));
  }
  out.push_back(torus_fixture());
  return out;
}

// ---- criteria ---------------------------------------------------------------

void c1(Outcome& o) {
  Rng rng(101);
  for (int rep = 0; rep < 5; ++rep) {
    const Rational c[3] = {rng.positive_rational(9), rng.positive_rational(9), rng.positive_rational(9)};
    const Rational s = c[0] + c[1] + c[2];
    RatMatrix want(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) want(i, j) = i == j ? Rational(-c[i] * (s - c[i]) / s) : Rational(c[i] * c[j] / s);
    o.require(response_matrix(y_network(c[0], c[1], c[2])) == want, "Y response differs");
  }
  o.note << "5 triples";
}

void c2(Outcome& o) {
  Rng rng(102);
  for (int it = 0; it < 100; ++it) {
    const int v = rng.range(2, 9);
    Network net = random_weighted_graph(rng, Surface::Disk, v, rng.range(v - 1, 16), false);
    std::vector<std::size_t> keep;
    for (int i = 1; i < v; ++i) keep.push_back(i);
    o.require(det(laplacian(net).submatrix(keep, keep)) == enumerate_spanning_trees(net).total,
              "matrix-tree mismatch");
  }
  for (int n = 3; n <= 7; ++n) {
    Network k = complete_graph(n);
    std::vector<std::size_t> keep;
    for (int i = 1; i < n; ++i) keep.push_back(i);
    Rational cayley = 1;
    for (int i = 0; i < n - 2; ++i) cayley *= n;
    o.require(det(laplacian(k).submatrix(keep, keep)) == cayley, "Cayley via det, n=" + std::to_string(n));
    if (n <= 5)
      o.require(static_cast<long>(enumerate_spanning_trees(k).trees.size()) == cayley.get_num().get_si(),
                "Cayley via enumeration, n=" + std::to_string(n));
  }
  o.note << "100 random networks, Cayley n=3..7";
}

void c3(Outcome& o) {
  Rng rng(103);
  long minors = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Network net = random_disk_network(rng, rng.range(2, 5), rng.range(0, 3), 12);
    const int n = static_cast<int>(net.nodes.size());
    const RatMatrix l = response_matrix(net);
    const Rational zunc = grove_sums(net).uncrossing(n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& r : subsets(all, k))
        for (const auto& s : subsets(minus(all, r), k)) {
          const auto rest = minus(minus(all, r), s);
          for (std::size_t tk = 0; tk <= rest.size(); ++tk)
            for (const auto& t : subsets(rest, tk)) {
              // Groves of the network with T made internal.
              Network gt = net;
              gt.nodes.clear();
              const std::vector<int> keep = minus(all, t);
              for (int i : keep) gt.nodes.push_back(net.nodes[i]);
              auto pos = [&](int i) { return static_cast<int>(std::find(keep.begin(), keep.end(), i) - keep.begin()); };
              const GroveSum g = grove_sums(gt);
              Rational num = 0;
              std::vector<int> rho(k);
              std::iota(rho.begin(), rho.end(), 0);
              do {
                Partition p;
                for (std::size_t i = 0; i < k; ++i) p.push_back({pos(r[i]), pos(s[rho[i]])});
                for (int q : minus(minus(keep, r), s)) p.push_back({pos(q)});
                num += perm_sign(rho) * g.of(canonical(p));
              } while (std::next_permutation(rho.begin(), rho.end()));
              o.require(grove_ratio_via_minors(l, r, s, t) == num / zunc, "minor differs from grove ratio");
              ++minors;
            }
        }
  }
  o.note << minors << " minors on 20 networks";
}

void c4(Outcome& o) {
  const ProjectionMatrix pm = projection_matrix(4);
  const int bad = fixture::projection4_mismatches(pm);
  o.require(bad == 0, bad < 0 ? "partition missing" : std::to_string(bad) + " entries differ");
  o.require(pm.rows.size() == 14 && pm.cols.size() == 15, "shape is not 14x15");
  o.note << "14x15 table";
}

void c5(Outcome& o) {
  Rng rng(105);
  int applied = 0;
  while (applied < 500) {
    Network net = random_disk_network(rng, rng.range(2, 5), rng.range(0, 3), 12);
    const RatMatrix l = response_matrix(net);
    for (int step = 0; step < 6 && applied < 500; ++step) {
      const auto moves = legal_moves(net);
      if (moves.empty()) break;
      net = apply_move(net, moves[rng.below(moves.size())]);
      o.require(response_matrix(net) == l, "L changed");
      ++applied;
    }
  }
  o.note << applied << " moves";
}

void c6(Outcome& o) {
  Rng rng(106);
  int networks = 0;
  for (int n = 2; n <= 5; ++n) {
    Network g = gamma_network(n, random_conductances(rng, n * (n - 1) / 2));
    Network topo = gamma_network(n);
    const Reconstruction r = reconstruct(topo, response_matrix(g));
    for (int k = 0; k < g.num_edges(); ++k) o.require(r.conductance[k] == g.edges[k].c, "Gamma conductance");
    ++networks;
  }
  for (int it = 0; it < 20; ++it) {
    Network net = random_minimal_disk_network(rng, rng.range(3, 5), 10);
    Network topo = net;
    for (auto& e : topo.edges) e.c = 1;
    const Reconstruction r = reconstruct(topo, response_matrix(net));
    for (int k = 0; k < net.num_edges(); ++k) o.require(r.conductance[k] == net.edges[k].c, "random conductance");
    ++networks;
  }
  o.note << networks << " networks";
}

void c7(Outcome& o) {
  Rng rng(107);
  int corpus = 0;
  for (int n = 3; n <= 6; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      const RatMatrix l = response_matrix(gamma_network(n, random_conductances(rng, n * (n - 1) / 2)));
      for (const auto& v : evaluate_minors(l, central_minors(n))) o.require(sgn(v) > 0, "central minor not positive");
      for (const auto& m : noninterlaced_minors(n)) o.require(sgn(minor_value(l, m)) > 0, "noninterlaced not positive");
      ++corpus;
    }
  for (int it = 0; it < 1000; ++it) {
    const int n = rng.range(4, 9);
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = Rational(rng.range(-9, 9));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const int k = rng.range(3, n);
    std::vector<int> rows(perm.begin(), perm.begin() + k);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<int> cols(perm.begin(), perm.begin() + k - 1), sq(perm.begin(), perm.begin() + k);
    o.require(jaw_identity(m, rows, cols, rows[0], rows[1], rows.back(), cols[rng.below(cols.size())]).holds(), "jaw");
    o.require(condensation_identity(m, rows, sq, rows[0], rows.back(), sq[0], sq.back()).holds(), "condensation");
  }
  o.note << corpus << " well-connected networks, 1000 matrices";
}

void c8(Outcome& o) {
  Rng rng(108);
  const LogJacobian y = log_jacobian(y_network(rng.positive_rational(), rng.positive_rational(), rng.positive_rational()));
  o.require(y.det == 1, "Y det is " + to_string(y.det));
  Network g4 = gamma_network(4, random_conductances(rng, 6));
  const LogJacobian j4 = log_jacobian(g4);
  o.require(abs(j4.det) == 1, "Gamma_4 det is " + to_string(j4.det));
  const long double fd = log_jacobian_fd(g4, frac(1, 1000000));
  o.require(std::fabs(std::fabs(fd) - 1) < 1e-6L, "finite difference off");
  char buf[96];
  std::snprintf(buf, sizeof buf, "Y det %s, Gamma_4 det %s, |fd - 1| = %.1Le", to_string(y.det).c_str(),
                to_string(j4.det).c_str(), std::fabs(std::fabs(fd) - 1));
  o.note << buf;
}

void c9(Outcome& o) {
  int checked = 0;
  for (const Network& net : surface_corpus()) {
    if (net.num_edges() > 12) continue;
    o.require(det_bareiss(line_laplacian(net)) == enumerate_crsfs(net).total, "Forman mismatch");
    ++checked;
  }
  o.note << checked << " annulus/torus networks";
}

void c10(Outcome& o) {
  const Network t = torus_fixture();
  o.require(char_poly(t) == reference_torus_poly(), "char_poly differs");
  const HomologyDecomposition d = homology_decompose(char_poly(t));
  o.require(d.valid && d.c.count({0, 1}) && d.c.at({0, 1}) == 48, "C_(0,1) is not 48");
  const CrsfSums s = enumerate_crsfs(t);
  const auto it = s.by_homology.find(std::vector<Exp>{{0, 1}});
  o.require(it != s.by_homology.end() && it->second.weight == 48, "weighted single-cycle (0,1) count is not 48");
  if (it != s.by_homology.end())
    o.note << "C_(0,1) = 48; weighted count " << to_string(it->second.weight) << " over " << it->second.count
           << " edge sets";
}

void c11(Outcome& o) {
  const AnnulusRootVerdict hand = annulus_root_report(char_poly(string_of_loops({1}, {1, 1})));
  o.require(hand.pass, "hand case fails: " + hand.witness);
  const auto r = hand.report.positive_real_values();
  const double s3 = std::sqrt(3.0), want[4] = {2 - s3, 1, 1, 2 + s3};
  o.require(r.size() == 4, "hand case root count");
  for (std::size_t i = 0; i < r.size() && i < 4; ++i) o.require(std::fabs(r[i] - want[i]) < 1e-10, "hand case root");
  Rng rng(111);
  for (int it = 0; it < 50; ++it) {
    const int n = rng.range(1, 5);
    const AnnulusRootVerdict v =
        annulus_root_report(char_poly(string_of_loops(random_conductances(rng, n - 1), random_conductances(rng, n))));
    o.require(v.pass, v.witness);
  }
  o.note << "50 strings, hand roots {1,1,2-sqrt3,2+sqrt3}";
}

void c12(Outcome& o) {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      o.require(cylinder_closed_form(m, n) == char_poly(cylinder(m, n)),
                "m=" + std::to_string(m) + " n=" + std::to_string(n));
  o.note << "m,n <= 4, k = 0..m-1";
}

void c13(Outcome& o) {
  Rng rng(113);
  for (int it = 0; it < 200; ++it) {
    const int n = 2 + it % 4;
    RatMatrix m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      m(2 * i, 2 * i) = m(2 * i + 1, 2 * i + 1) = frac(rng.range(-5, 5), rng.range(1, 3));
      for (int j = i + 1; j < n; ++j) {
        const RatMatrix b = mat2(rng.range(-4, 4), rng.range(-4, 4), rng.range(-4, 4), rng.range(-4, 4));
        const RatMatrix bt = adjugate2(b);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) m(2 * i + r, 2 * j + c) = b(r, c), m(2 * j + r, 2 * i + c) = bt(r, c);
      }
    }
    const Rational q = qdet(m);
    o.require(q == oracle::qdet_by_permutations(m), "qdet differs from its definition");
    o.require(q * q == det(m), "qdet^2 != det");
  }
  Network k3 = complete_graph(3);
  for (auto& e : k3.edges) e.c = rng.positive_rational(), e.t = random_sl2(rng);
  o.require(qdet(sl2_laplacian(k3)) == sl2_crsf_sum(k3), "K3");
  for (int it = 0; it < 5; ++it) {
    const int v = rng.range(2, 5);
    Network net = random_weighted_graph(rng, Surface::Disk, v, rng.range(std::max(v, 4), 8), true);
    for (auto& e : net.edges) e.t = random_sl2(rng);
    o.require(qdet(sl2_laplacian(net)) == sl2_crsf_sum(net), "random network");
  }
  o.note << "200 matrices, K3 + 5 networks";
}

void c14(Outcome& o) {
  LaurentPoly p = LaurentPoly(4);
  for (int k : {0, 1})
    for (int s : {1, -1}) p -= LaurentPoly::var(k, s);
  const FreeEnergy f = free_energy(p);
  const double limit = oracle::finite_torus_free_energy(p);
  o.require(std::fabs(f.value - limit) < 1e-5, "differs from the finite-torus limit");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10f vs oracle %.10f (diff %.1e)", f.value, limit, std::fabs(f.value - limit));
  o.note << buf;
}

void c15(Outcome& o) {
  const AmoebaScan s = amoeba_sample(reference_torus_poly(), 50, -3, 3, 1e-8);
  o.require(s.harnack, "a torus meets the curve " + std::to_string(s.max_count) + " times");
  int inside = 0;
  for (const auto& pt : s.points) inside += pt.count > 0;
  o.note << "2500 tori, max " << s.max_count << " roots, " << inside << " meet the curve";
}

void c16(Outcome& o) {
  auto p_value = [](const Network& net, std::uint64_t seed) {
    const TreeSum ts = enumerate_spanning_trees(net);
    std::map<EdgeMask, long> hits;
    Rng rng(seed);
    const int samples = 30000;
    for (int i = 0; i < samples; ++i) ++hits[wilson_sample(net, rng)];
    double chi = 0;
    for (EdgeMask t : ts.trees) {
      const double expect = samples * Rational(mask_weight(net, t) / ts.total).get_d();
      chi += (hits[t] - expect) * (hits[t] - expect) / expect;
    }
    boost::math::chi_squared dist(static_cast<double>(ts.trees.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, chi));
  };
  const double pk3 = p_value(complete_graph(3), 1);
  Network w = complete_graph(4);
  for (int k = 0; k < w.num_edges(); ++k) w.edges[k].c = frac(k + 1, 2);
  const double pw = p_value(w, 2);
  o.require(pk3 > 0.001, "K3 p-value");
  o.require(pw > 0.001, "weighted K4 p-value");
  char buf[64];
  std::snprintf(buf, sizeof buf, "p = %.3f (K3), %.3f (weighted K4)", pk3, pw);
  o.note << buf;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no stated bound
  void (*run)(Outcome&);
};

}  // namespace

int main() {
  const Criterion all[] = {
      {1, "Y-network response matrix", 1, c1},
      {2, "matrix-tree theorem and Cayley counts", 30, c2},
      {3, "minors equal signed grove ratios", 120, c3},
      {4, "projection matrix for n = 4", 0, c4},
      {5, "electrical moves preserve L", 0, c5},
      {6, "reconstruction round trip", 0, c6},
      {7, "central minors, jaw and condensation", 0, c7},
      {8, "log-Jacobian determinant", 0, c8},
      {9, "line-bundle det equals CRSF sum", 0, c9},
      {10, "torus fixture polynomial and C_(0,1) = 48", 60, c10},
      {11, "annulus roots on the unit circle", 0, c11},
      {12, "cylinder closed form", 0, c12},
      {13, "qdet and SL2 CRSF sums", 0, c13},
      {14, "free energy of the square lattice", 60, c14},
      {15, "Harnack scan of the torus fixture", 0, c15},
      {16, "Wilson sampler chi-square", 0, c16},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.require(secs < c.budget_s, "over the time budget");
    failed += !o.pass;
    std::printf("%s %2d  %-44s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
