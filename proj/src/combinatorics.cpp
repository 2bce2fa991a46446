#include "ohmlab/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ohmlab {

int edge_cap(int default_cap) {
  if (const char* s = std::getenv("OHMLAB_MAX_EDGES")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 0) throw InputError("OHMLAB_MAX_EDGES must be a nonnegative integer");
    return static_cast<int>(std::min<long>(v, 62));
  }
  return default_cap;
}

void check_cap(const Network& net, int default_cap, const std::string& what) {
  const int cap = edge_cap(default_cap);
  if (net.num_edges() > cap)
    throw NetworkError(ErrorKind::Cap, what + " enumeration is capped at " + std::to_string(cap) + " edges, network has " +
                                           std::to_string(net.num_edges()));
}

Rational mask_weight(const Network& net, EdgeMask m) {
  Rational w = 1;
  for (int k = 0; k < net.num_edges(); ++k)
    if (m >> k & 1) w *= net.edges[k].c;
  return w;
}

namespace {

// Union-find carrying the homology weight of the path from each vertex's
// root to the vertex.
struct PotentialForest {
  std::vector<int> parent;
  std::vector<Exp> pot;  // root -> vertex, relative to parent
  explicit PotentialForest(int n) : parent(n), pot(n, Exp{0, 0}) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    if (parent[x] == x) return x;
    int r = find(parent[x]);
    if (parent[x] != r) {
      pot[x] = pot[x] + pot[parent[x]];
      parent[x] = r;
    }
    return r;
  }
  Exp potential(int x) {
    find(x);
    return parent[x] == x ? Exp{0, 0} : pot[x];
  }
  // Adds the dart u -> v of weight h.  Returns false and the class of the
  // cycle closed (root -> u -> v -> root) when u, v were already joined.
  bool unite(int u, int v, Exp h, Exp* cycle) {
    int ru = find(u), rv = find(v);
    Exp pu = potential(u), pv = potential(v);
    if (ru == rv) {
      if (cycle) *cycle = pu + h - pv;
      return false;
    }
    parent[ru] = rv;
    pot[ru] = pv - pu - h;
    return true;
  }
};

Exp normalise_class(Exp h) {
  if (h[0] < 0 || (h[0] == 0 && h[1] < 0)) return {-h[0], -h[1]};
  return h;
}

LaurentPoly cycle_factor(Exp h) {
  if (h == Exp{0, 0}) return LaurentPoly();
  return LaurentPoly(2) - LaurentPoly::monomial(h) - LaurentPoly::monomial({-h[0], -h[1]});
}

int permutation_sign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

TreeSum enumerate_spanning_trees(const Network& net) {
  check_cap(net, kTreeCap, "spanning-tree");
  TreeSum out;
  const int m = net.num_edges(), k = net.num_vertices - 1;
  if (k == 0) {
    out.trees.push_back(0);
    out.total = 1;
    return out;
  }
  if (k > m) return out;
  // Gosper's hack over k-subsets.
  EdgeMask s = (EdgeMask{1} << k) - 1, limit = EdgeMask{1} << m;
  while (s < limit) {
    PotentialForest f(net.num_vertices);
    bool ok = true;
    for (int e = 0; e < m && ok; ++e)
      if (s >> e & 1) ok = f.unite(net.edges[e].u, net.edges[e].v, {0, 0}, nullptr);
    if (ok) {
      out.trees.push_back(s);
      out.total += mask_weight(net, s);
    }
    EdgeMask c = s & -s, r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

// ---- partitions ----

Partition canonical(Partition p) {
  for (auto& part : p) std::sort(part.begin(), part.end());
  p.erase(std::remove_if(p.begin(), p.end(), [](const auto& x) { return x.empty(); }), p.end());
  std::sort(p.begin(), p.end());
  return p;
}

std::string partition_str(const Partition& p, int n) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '|';
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (j && n > 9) s += ',';
      s += std::to_string(p[i][j] + 1);
    }
  }
  return s;
}

Partition parse_partition(const std::string& s) {
  Partition p(1);
  std::string num;
  bool commas = s.find(',') != std::string::npos;
  auto flush = [&] {
    if (num.empty()) return;
    int v = std::stoi(num);
    if (v < 1) throw InputError("partition items are 1-based");
    p.back().push_back(v - 1);
    num.clear();
  };
  for (char ch : s) {
    if (ch == '|') {
      flush();
      p.emplace_back();
    } else if (ch == ',') {
      flush();
    } else if (ch >= '0' && ch <= '9') {
      num += ch;
      if (!commas) flush();
    } else if (ch != ' ') {
      throw InputError("bad partition '" + s + "'");
    }
  }
  flush();
  for (const auto& part : p)
    if (part.empty()) throw InputError("empty part in '" + s + "'");
  return canonical(p);
}

namespace {

// First crossing a<b<c<d with a,c in part i and b,d in part j.
bool find_crossing(const Partition& p, int& pi, int& pj, int q[4], bool last = false) {
  std::vector<int> owner;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int x : p[i]) {
      if (x >= static_cast<int>(owner.size())) owner.resize(x + 1, -1);
      owner[x] = static_cast<int>(i);
    }
  const int n = static_cast<int>(owner.size());
  bool found = false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (owner[a] >= 0 && owner[a] == owner[c] && owner[b] >= 0 && owner[b] == owner[d] && owner[a] != owner[b]) {
            pi = owner[a];
            pj = owner[b];
            q[0] = a, q[1] = b, q[2] = c, q[3] = d;
            found = true;
            if (!last) return true;
          }
  return found;
}

}  // namespace

bool is_planar_partition(const Partition& p) {
  int i, j, q[4];
  return !find_crossing(p, i, j, q);
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int)> go = [&](int x) {
    if (x == n) {
      out.push_back(canonical(cur));
      return;
    }
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i].push_back(x);
      go(x + 1);
      cur[i].pop_back();
    }
    cur.push_back({x});
    go(x + 1);
    cur.pop_back();
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> planar_partitions(int n) {
  std::vector<Partition> out;
  for (auto& p : all_partitions(n))
    if (is_planar_partition(p)) out.push_back(p);
  return out;
}

PartitionCombo project_partition(const Partition& p0, int n, RulePolicy policy) {
  std::map<Partition, PartitionCombo> memo;
  std::set<Partition> active;
  long budget = 1000000;
  std::function<const PartitionCombo&(const Partition&)> go = [&](const Partition& p) -> const PartitionCombo& {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    if (--budget < 0 || !active.insert(p).second)
      throw std::logic_error("Rule 1 revisits " + partition_str(p, n));
    PartitionCombo out;
    int pi, pj, q[4];
    if (!find_crossing(p, pi, pj, q, policy == RulePolicy::Last)) {
      out[p] = 1;
      return memo[p] = out;
    }
    std::vector<int> A, B, C, D;
    auto split = [&](const std::vector<int>& part, int x, int y, std::vector<int>& X, std::vector<int>& Y) {
      for (int v : part) {
        if (v == x) X.push_back(v);
        else if (v == y) Y.push_back(v);
                else {
          auto dist = [&](int a, int b) { return std::min(std::abs(a - b), n - std::abs(a - b)); };
          (dist(v, x) <= dist(v, y) ? X : Y).push_back(v);
        }
      }
    };
    split(p[pi], q[0], q[2], A, C);
    split(p[pj], q[1], q[3], B, D);
    Partition rest;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (static_cast<int>(i) != pi && static_cast<int>(i) != pj) rest.push_back(p[i]);
    auto join = [](std::initializer_list<const std::vector<int>*> xs) {
      std::vector<int> r;
      for (auto* x : xs) r.insert(r.end(), x->begin(), x->end());
      return r;
    };
    auto term = [&](std::vector<int> x, std::vector<int> y, int coeff) {
      Partition t = rest;
      t.push_back(std::move(x));
      t.push_back(std::move(y));
      const PartitionCombo& sub = go(canonical(t));
      for (const auto& [k, v] : sub) out[k] += coeff * v;
    };
    term(A, join({&B, &C, &D}), 1);
    term(B, join({&A, &C, &D}), 1);
    term(C, join({&A, &B, &D}), 1);
    term(D, join({&A, &B, &C}), 1);
    term(join({&A, &B}), join({&C, &D}), -1);
    term(join({&A, &D}), join({&B, &C}), -1);
    for (auto i2 = out.begin(); i2 != out.end();) i2 = i2->second == 0 ? out.erase(i2) : std::next(i2);
    active.erase(p);
    return memo[p] = out;
  };
  return go(canonical(p0));
}

ProjectionMatrix projection_matrix(int n, RulePolicy policy) {
  ProjectionMatrix pm;
  pm.cols = all_partitions(n);
  pm.rows = planar_partitions(n);
  pm.p = Matrix<Rational>(pm.rows.size(), pm.cols.size());
  std::map<Partition, std::size_t> row_of;
  for (std::size_t i = 0; i < pm.rows.size(); ++i) row_of[pm.rows[i]] = i;
  for (std::size_t j = 0; j < pm.cols.size(); ++j)
    for (const auto& [sigma, c] : project_partition(pm.cols[j], n, policy)) pm.p(row_of.at(sigma), j) = c;
  return pm;
}

Rational L_tau(const RatMatrix& l, const Partition& tau) {
  // Matrix-tree theorem on each part, with weights L_ij.
  Rational out = 1;
  for (const auto& part : tau) {
    const std::size_t k = part.size();
    if (k < 2) continue;
    RatMatrix lap(k - 1, k - 1);
    for (std::size_t a = 0; a + 1 < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b) continue;
        Rational w = l(part[a], part[b]);
        lap(a, a) += w;
        if (b + 1 < k) lap(a, b) -= w;
      }
    out *= det(lap);
  }
  return out;
}

Rational grove_ratio_via_minors(const RatMatrix& l, const std::vector<int>& r, const std::vector<int>& s,
                                const std::vector<int>& t) {
  if (r.size() != s.size()) throw NetworkError(ErrorKind::Domain, "minor needs |R| = |S|");
  std::vector<int> ts = t;
  std::sort(ts.begin(), ts.end());
  std::vector<std::size_t> rows(r.begin(), r.end()), cols(s.begin(), s.end());
  rows.insert(rows.end(), ts.begin(), ts.end());
  cols.insert(cols.end(), ts.begin(), ts.end());
  Rational d = det(l.submatrix(rows, cols));
  return ts.size() % 2 ? Rational(-d) : d;
}

Rational grove_probability(const RatMatrix& l, const Partition& sigma) {
  const int n = static_cast<int>(l.rows());
  Partition sg = canonical(sigma);
  if (!is_planar_partition(sg)) throw NetworkError(ErrorKind::Domain, "grove_probability needs a planar partition");
  static std::mutex mu;
  static std::map<int, ProjectionMatrix> cache;
  const ProjectionMatrix* pm;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, projection_matrix(n)).first;
    pm = &it->second;
  }
  auto row = std::find(pm->rows.begin(), pm->rows.end(), sg);
  if (row == pm->rows.end()) throw NetworkError(ErrorKind::Domain, "partition is not over the response matrix's nodes");
  const std::size_t i = row - pm->rows.begin();
  Rational out = 0;
  for (std::size_t j = 0; j < pm->cols.size(); ++j)
    if (pm->p(i, j) != 0) out += pm->p(i, j) * L_tau(l, pm->cols[j]);
  return out;
}

// ---- groves ----

Rational GroveSum::of(const Partition& p) const {
  auto it = by_partition.find(canonical(p));
  return it == by_partition.end() ? Rational(0) : it->second;
}

Rational GroveSum::uncrossing(int n) const {
  Partition p;
  for (int i = 0; i < n; ++i) p.push_back({i});
  return of(p);
}

GroveSum grove_sums(const Network& net) {
  check_cap(net, kGroveCap, "grove");
  GroveSum out;
  const int m = net.num_edges(), n = static_cast<int>(net.nodes.size());
  for (EdgeMask mask = 0; mask < (EdgeMask{1} << m); ++mask) {
    PotentialForest f(net.num_vertices);
    bool ok = true;
    for (int e = 0; e < m && ok; ++e)
      if (mask >> e & 1) ok = f.unite(net.edges[e].u, net.edges[e].v, {0, 0}, nullptr);
    if (!ok) continue;
    std::vector<char> has_node(net.num_vertices, 0);
    for (int v : net.nodes) has_node[f.find(v)] = 1;
    for (int v = 0; v < net.num_vertices && ok; ++v) ok = has_node[f.find(v)];
    if (!ok) continue;
    std::map<int, std::vector<int>> parts;
    for (int i = 0; i < n; ++i) parts[f.find(net.nodes[i])].push_back(i);
    Partition p;
    for (auto& [root, part] : parts) p.push_back(part);
    Rational w = mask_weight(net, mask);
    out.by_partition[canonical(p)] += w;
    out.total += w;
  }
  return out;
}

// ---- CRSFs ----

CrsfSums enumerate_crsfs(const Network& net) {
  check_cap(net, kCrsfCap, "CRSF");
  CrsfSums out;
  const int m = net.num_edges(), nv = net.num_vertices;
  for (EdgeMask mask = 0; mask < (EdgeMask{1} << m); ++mask) {
    if (__builtin_popcountll(mask) != nv) continue;
    PotentialForest f(nv);
    std::vector<int> cycles_at(nv, 0);
    std::vector<Exp> cls;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      Exp c;
      const Edge& ed = net.edges[e];
      int ru = f.find(ed.u), rv = f.find(ed.v);
      int cyc = cycles_at[ru] + (ru == rv ? 0 : cycles_at[rv]);
      if (!f.unite(ed.u, ed.v, ed.h, &c)) {
        ++cyc;
        cls.push_back(c);
      }
      if (cyc > 1) ok = false;
      cycles_at[f.find(ed.u)] = cyc;
    }
    // With |mask| = |V| and at most one cycle per component, every
    // component has exactly one.
    if (!ok) continue;
    Rational w = mask_weight(net, mask);
    LaurentPoly term(w);
    bool essential = true;
    for (const Exp& c : cls) {
      term = term * cycle_factor(c);
      if (c == Exp{0, 0}) essential = false;
    }
    out.total = out.total + term;
    std::vector<Exp> key;
    for (const Exp& c : cls) key.push_back(normalise_class(c));
    std::sort(key.begin(), key.end());
    auto& b = out.by_homology[key];
    b.weight += w;
    ++b.count;
    if (essential) {
      out.essential_total = out.essential_total + term;
      auto& bc = out.by_count[static_cast<int>(cls.size())];
      bc.weight += w;
      ++bc.count;
    }
  }
  return out;
}

LaurentPoly enumerate_cycle_rooted_groves(const Network& net, const std::vector<int>& r,
                                          const std::vector<int>& s, const std::vector<int>& t) {
  check_cap(net, kCycleGroveCap, "cycle-rooted grove");
  if (r.size() != s.size()) throw NetworkError(ErrorKind::Domain, "pairing needs |R| = |S|");
  const int n = static_cast<int>(net.nodes.size()), nv = net.num_vertices, m = net.num_edges();
  // role per vertex: -1 internal, 0 q, 1 r, 2 s; index within R or S.
  std::vector<int> role(nv, -1), idx(nv, -1);
  std::vector<char> used(n, 0);
  auto mark = [&](const std::vector<int>& xs, int rl) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 0 || xs[i] >= n || used[xs[i]]) throw NetworkError(ErrorKind::Domain, "R, S, T must be disjoint node positions");
      used[xs[i]] = 1;
      role[net.nodes[xs[i]]] = rl;
      idx[net.nodes[xs[i]]] = static_cast<int>(i);
    }
  };
  mark(r, 1);
  mark(s, 2);
  mark(t, -1);
  for (int i = 0; i < n; ++i)
    if (!used[i]) role[net.nodes[i]] = 0;
  const std::size_t k = r.size();
  LaurentPoly out;
  for (EdgeMask mask = 0; mask < (EdgeMask{1} << m); ++mask) {
    PotentialForest f(nv);
    std::vector<int> cycles_at(nv, 0);
    std::vector<Exp> cls;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      const Edge& ed = net.edges[e];
      int ru = f.find(ed.u), rv = f.find(ed.v);
      int cyc = cycles_at[ru] + (ru == rv ? 0 : cycles_at[rv]);
      Exp c;
      if (!f.unite(ed.u, ed.v, ed.h, &c)) {
        ++cyc;
        cls.push_back(c);
      }
      if (cyc > 1) ok = false;
      cycles_at[f.find(ed.u)] = cyc;
    }
    if (!ok) continue;
    // Per component: counts of q, r, s and the r/s members.
    std::vector<int> nq(nv, 0), nr(nv, 0), ns(nv, 0), rv_(nv, -1), sv(nv, -1);
    for (int v = 0; v < nv; ++v) {
      int root = f.find(v);
      if (role[v] == 0) ++nq[root];
      if (role[v] == 1) ++nr[root], rv_[root] = v;
      if (role[v] == 2) ++ns[root], sv[root] = v;
    }
    std::vector<int> rho(k, -1);
    LaurentPoly transport(1);
    for (int v = 0; v < nv && ok; ++v) {
      if (f.find(v) != v) continue;
      const bool cyclic = cycles_at[v] == 1;
      if (cyclic) ok = nq[v] == 0 && nr[v] == 0 && ns[v] == 0;
      else if (nq[v] == 1) ok = nr[v] == 0 && ns[v] == 0;
      else if (nq[v] == 0 && nr[v] == 1 && ns[v] == 1) {
        rho[idx[rv_[v]]] = idx[sv[v]];
        transport = transport * LaurentPoly::monomial(f.potential(sv[v]) - f.potential(rv_[v]));
      } else {
        ok = false;
      }
    }
    if (!ok) continue;
    LaurentPoly term = transport * LaurentPoly(mask_weight(net, mask) * permutation_sign(rho));
    for (const Exp& c : cls) term = term * cycle_factor(c);
    out = out + term;
  }
  return out;
}

// ---- Wilson ----

EdgeMask wilson_sample(const Network& net, Rng& rng) {
  net.validate(true);
  const int nv = net.num_vertices;
  // Integer step weights per vertex.
  std::vector<std::vector<int>> darts(nv);
  std::vector<std::vector<std::uint64_t>> cum(nv);
  for (int d = 0; d < net.num_darts(); ++d)
    if (net.tail(d) != net.head(d)) darts[net.tail(d)].push_back(d);
  for (int v = 0; v < nv; ++v) {
    mpz_class den = 1;
    for (int d : darts[v]) den = lcm(den, net.conductance(d).get_den());
    mpz_class acc = 0;
    for (int d : darts[v]) {
      acc += net.conductance(d).get_num() * (den / net.conductance(d).get_den());
      if (acc.get_str(2).size() > 62) throw NetworkError(ErrorKind::Domain, "conductances too large for exact sampling");
      cum[v].push_back(acc.get_ui());
    }
  }
  std::vector<char> in_tree(nv, 0);
  std::vector<int> next(nv, -1);
  in_tree[0] = 1;
  EdgeMask tree = 0;
  for (int start = 0; start < nv; ++start) {
    int v = start;
    while (!in_tree[v]) {
      std::uint64_t x = rng.below(cum[v].back());
      std::size_t i = std::upper_bound(cum[v].begin(), cum[v].end(), x) - cum[v].begin();
      next[v] = darts[v][i];
      v = net.head(next[v]);
    }
    for (v = start; !in_tree[v]; v = net.head(next[v])) {
      in_tree[v] = 1;
      tree |= EdgeMask{1} << Network::edge_of(next[v]);
    }
  }
  return tree;
}

EdgeMask wilson_sample(const Network& net, std::uint64_t seed) {
  Rng rng(seed);
  return wilson_sample(net, rng);
}

}  // namespace ohmlab
