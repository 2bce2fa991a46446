#pragma once

// Brute-force reference computations shared by the tests.  Nothing here uses
// the library's algorithms beyond its data structures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/network.hpp"

namespace oracle {

using ohmlab::EdgeMask;
using ohmlab::Network;
using ohmlab::Rational;

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

inline Rational mask_weight(const Network& net, EdgeMask m) {
  Rational w = 1;
  for (int k = 0; k < net.num_edges(); ++k)
    if (m >> k & 1) w *= net.edges[k].c;
  return w;
}

inline bool is_forest(const Network& net, EdgeMask m) {
  UnionFind uf(net.num_vertices);
  for (int k = 0; k < net.num_edges(); ++k)
    if (m >> k & 1 && !uf.unite(net.edges[k].u, net.edges[k].v)) return false;
  return true;
}

inline std::vector<EdgeMask> spanning_trees(const Network& net) {
  std::vector<EdgeMask> out;
  const int want = net.num_vertices - 1;
  for (EdgeMask m = 0; m < (EdgeMask{1} << net.num_edges()); ++m)
    if (__builtin_popcountll(m) == want && is_forest(net, m)) out.push_back(m);
  return out;
}

// Is there a path from a to b whose inner vertices are not nodes?
inline bool node_avoiding_path(const Network& net, int a, int b) {
  std::vector<char> seen(net.num_vertices, 0);
  std::function<bool(int)> go = [&](int v) {
    if (v == b) return true;
    if (seen[v]) return false;
    seen[v] = 1;
    if (v != a && net.is_node(v)) return false;
    for (const auto& e : net.edges) {
      if (e.u == v && go(e.v)) return true;
      if (e.v == v && go(e.u)) return true;
    }
    return false;
  };
  return go(a);
}

// Quaternion determinant from its definition: sum over permutations of
// sgn times the product over cycles of tr(w)/2, w the product of the 2x2
// blocks along the cycle.
inline Rational qdet_by_permutations(const ohmlab::RatMatrix& m) {
  const int n = static_cast<int>(m.rows()) / 2;
  auto block = [&](int i, int j) { return m.submatrix({2u * i, 2u * i + 1}, {2u * j, 2u * j + 1}); };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    std::vector<char> seen(n, 0);
    Rational term = 1;
    int transpositions = 0;
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ohmlab::RatMatrix w = ohmlab::RatMatrix::identity(2);
      int len = 0;
      for (int i = s; !seen[i]; i = perm[i]) {
        seen[i] = 1;
        w = w * block(i, perm[i]);
        ++len;
      }
      transpositions += len - 1;
      term *= (w(0, 0) + w(1, 1)) / 2;
    }
    total += transpositions % 2 ? Rational(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// log Z_n on the n x n discrete torus: sum of log|p| over the n-th roots of
// unity pairs, the (1,1) mode dropped.
inline double finite_torus_log_z(const ohmlab::LaurentPoly& p, int n) {
  long double s = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      s += std::log(std::abs(p.eval(std::polar(1.0, 2 * std::numbers::pi * a / n),
                                    std::polar(1.0, 2 * std::numbers::pi * b / n))));
    }
  return static_cast<double>(s);
}

// Limit of log Z_n / n^2: fit a n^2 + b log n + c + d / n^2 at
// n = 16, 32, 48, 64 and return a.
inline double finite_torus_free_energy(const ohmlab::LaurentPoly& p) {
  const int ns[4] = {16, 32, 48, 64};
  double a[4][5];
  for (int i = 0; i < 4; ++i) {
    const double n = ns[i];
    a[i][0] = n * n, a[i][1] = std::log(n), a[i][2] = 1, a[i][3] = 1 / (n * n);
    a[i][4] = finite_torus_log_z(p, ns[i]);
  }
  for (int k = 0; k < 4; ++k)
    for (int i = k + 1; i < 4; ++i) {
      const double m = a[i][k] / a[k][k];
      for (int j = k; j < 5; ++j) a[i][j] -= m * a[k][j];
    }
  double sol[4];
  for (int i = 3; i >= 0; --i) {
    double s = a[i][4];
    for (int j = i + 1; j < 4; ++j) s -= a[i][j] * sol[j];
    sol[i] = s / a[i][i];
  }
  return sol[0];
}

}  // namespace oracle
