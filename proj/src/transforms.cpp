#include "ohmlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ohmlab/families.hpp"
#include "ohmlab/laplacian.hpp"
#include "ohmlab/medial.hpp"

namespace ohmlab {

namespace {

[[noreturn]] void mismatch(const std::string& m) { throw NetworkError(ErrorKind::Domain, m); }

using Idx = std::vector<std::size_t>;

Idx to_idx(const std::vector<int>& v) { return Idx(v.begin(), v.end()); }

void replace_dart(Network& net, int v, int old, const std::vector<int>& repl) {
  auto& r = net.rotation[v];
  auto it = std::find(r.begin(), r.end(), old);
  if (it == r.end()) mismatch("rotation does not contain the expected dart");
  it = r.erase(it);
  r.insert(it, repl.begin(), repl.end());
}

std::vector<int> darts_at(const Network& net, int v) {
  if (net.has_embedding()) return net.rotation[v];
  return net.darts_out()[v];
}

void finish(Network& net) {
  net.compact_vertices();
  if (net.has_embedding()) validate_embedding(net);
  else net.validate(true);
}

Network dead_branch(const Network& net, int v) {
  if (v < 0 || v >= net.num_vertices) mismatch("dead-branch: no vertex " + std::to_string(v));
  if (net.is_node(v)) mismatch("dead-branch: vertex " + std::to_string(v) + " is a node");
  auto ds = darts_at(net, v);
  if (ds.size() != 1) mismatch("dead-branch: vertex " + std::to_string(v) + " does not have degree 1");
  Network out = net;
  remove_edge(out, Network::edge_of(ds[0]));
  finish(out);
  return out;
}

Network self_loop(const Network& net, int k) {
  if (k < 0 || k >= net.num_edges()) mismatch("self-loop: no edge at position " + std::to_string(k));
  const Edge& e = net.edges[k];
  if (e.u != e.v) mismatch("self-loop: edge " + std::to_string(e.id) + " is not a loop");
  if (e.h != Exp{0, 0}) mismatch("self-loop: loop " + std::to_string(e.id) + " has nonzero homology weight");
  Network out = net;
  remove_edge(out, k);
  finish(out);
  return out;
}

Network series(const Network& net, int v) {
  if (v < 0 || v >= net.num_vertices) mismatch("series: no vertex " + std::to_string(v));
  if (net.is_node(v)) mismatch("series: vertex " + std::to_string(v) + " is a node");
  auto ds = darts_at(net, v);
  if (ds.size() != 2 || Network::edge_of(ds[0]) == Network::edge_of(ds[1]))
    mismatch("series: vertex " + std::to_string(v) + " does not join two distinct edges");
  const int x1 = ds[0], x2 = ds[1];
  const int a = net.head(x1), b = net.head(x2);
  if (a == v || b == v || a == b) mismatch("series: the two edges at vertex " + std::to_string(v) + " must lead to distinct vertices");
  Network out = net;
  const int k1 = Network::edge_of(x1), k2 = Network::edge_of(x2);
  const Rational c1 = net.conductance(x1), c2 = net.conductance(x2);
  Edge& e = out.edges[k1];
  e.u = a;
  e.v = b;
  e.c = c1 * c2 / (c1 + c2);
  e.h = net.weight(Network::rev(x1)) + net.weight(x2);
  e.t.reset();
  if (out.has_embedding()) {
    replace_dart(out, a, Network::rev(x1), {2 * k1});
    replace_dart(out, b, Network::rev(x2), {2 * k1 + 1});
    out.rotation[v].clear();
    // The old dart of edge k2 at v disappears with the vertex.
  }
  remove_edge(out, k2);
  finish(out);
  return out;
}

Network parallel(const Network& net, int k1, int k2) {
  if (k1 < 0 || k2 < 0 || k1 >= net.num_edges() || k2 >= net.num_edges() || k1 == k2)
    mismatch("parallel: needs two distinct edge positions");
  const Edge& e1 = net.edges[k1];
  const Edge& e2 = net.edges[k2];
  if (e1.u == e1.v || e2.u == e2.v) mismatch("parallel: loops are not parallel edges");
  Exp w2;
  if (e1.u == e2.u && e1.v == e2.v) w2 = e2.h;
  else if (e1.u == e2.v && e1.v == e2.u) w2 = Exp{0, 0} - e2.h;
  else mismatch("parallel: edges " + std::to_string(e1.id) + " and " + std::to_string(e2.id) + " do not share endpoints");
  if (w2 != e1.h) mismatch("parallel: edges carry different homology weights");
  Network out = net;
  out.edges[k1].c = e1.c + e2.c;
  remove_edge(out, k2);
  finish(out);
  return out;
}

Network y_delta(const Network& net, int v) {
  if (v < 0 || v >= net.num_vertices) mismatch("ydelta: no vertex " + std::to_string(v));
  if (net.is_node(v)) mismatch("ydelta: vertex " + std::to_string(v) + " is a node");
  auto x = darts_at(net, v);
  if (x.size() != 3) mismatch("ydelta: vertex " + std::to_string(v) + " does not have degree 3");
  std::set<int> nb;
  for (int d : x) {
    if (net.head(d) == v) mismatch("ydelta: loop at the centre");
    nb.insert(net.head(d));
  }
  if (nb.size() != 3) mismatch("ydelta: the three neighbours must be distinct");
  Rational s = 0;
  for (int d : x) s += net.conductance(d);
  Network out = net;
  int k[3], a[3];
  for (int i = 0; i < 3; ++i) k[i] = Network::edge_of(x[i]), a[i] = net.head(x[i]);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    Edge& e = out.edges[k[i]];
    e.u = a[i];
    e.v = a[j];
    e.c = net.conductance(x[i]) * net.conductance(x[j]) / s;
    e.h = net.weight(Network::rev(x[i])) + net.weight(x[j]);
    e.t.reset();
  }
  if (out.has_embedding()) {
    // Around a_i the triangle edge to a_{i+1} comes just before the one to
    // a_{i-1}, counterclockwise, in place of the arm.
    for (int i = 0; i < 3; ++i) replace_dart(out, a[i], Network::rev(x[i]), {2 * k[i], 2 * k[(i + 2) % 3] + 1});
    out.rotation[v].clear();
  }
  finish(out);
  return out;
}

Network delta_y(const Network& net, const std::vector<int>& ks) {
  if (ks.size() != 3) mismatch("deltay: needs three edges");
  for (int k : ks)
    if (k < 0 || k >= net.num_edges()) mismatch("deltay: no edge at position " + std::to_string(k));
  if (!net.has_embedding()) mismatch("deltay: needs an embedding to place the new vertex");
  FaceData fd = trace_faces(net);
  std::set<int> want(ks.begin(), ks.end());
  int face = -1;
  for (std::size_t f = 0; f < fd.faces.size(); ++f) {
    if (fd.faces[f].size() != 3 || (face >= 0 && static_cast<int>(f) == fd.outer)) continue;
    std::set<int> got;
    for (int d : fd.faces[f]) got.insert(Network::edge_of(d));
    if (got == want && (face < 0 || face == fd.outer)) face = static_cast<int>(f);
  }
  if (face < 0) mismatch("deltay: the edges do not bound a triangular face");
  if (face == fd.outer) mismatch("deltay: the triangle is the outer face");
  if (fd.weight[face] != Exp{0, 0}) mismatch("deltay: the triangle is a hole");
  const auto f = fd.faces[face];
  int a[3];
  for (int i = 0; i < 3; ++i) a[i] = net.tail(f[i]);  // f[i] runs a_i -> a_{i+1}
  if (a[0] == a[1] || a[1] == a[2] || a[0] == a[2]) mismatch("deltay: the triangle must have three distinct vertices");
  Rational c[3];
  for (int i = 0; i < 3; ++i) c[i] = net.conductance(f[i]);
  const Rational p = c[0] * c[1] + c[1] * c[2] + c[0] * c[2];
  Network out = net;
  const int v = out.num_vertices++;
  out.rotation.emplace_back();
  // Arm to a_i reuses the triangle edge opposite a_i, which is f[i+1].
  Exp h[3] = {{0, 0}, net.weight(f[0]), net.weight(f[0]) + net.weight(f[1])};
  int arm[3];
  for (int i = 0; i < 3; ++i) {
    const int k = Network::edge_of(f[(i + 1) % 3]);
    arm[i] = k;
    Edge& e = out.edges[k];
    e.u = v;
    e.v = a[i];
    e.c = p / c[(i + 1) % 3];
    e.h = h[i];
    e.t.reset();
  }
  // At a_i the face corner sits between rev(f[i-1]) and f[i]; the arm takes
  // the place of both.
  for (int i = 0; i < 3; ++i) {
    auto& r = out.rotation[a[i]];
    const int in = Network::rev(f[(i + 2) % 3]), outd = f[i];
    auto it = std::find(r.begin(), r.end(), in);
    if (it == r.end()) mismatch("deltay: inconsistent rotation");
    *it = -1;
    r.erase(std::find(r.begin(), r.end(), outd));
    *std::find(r.begin(), r.end(), -1) = 2 * arm[i] + 1;
  }
  // The face walk a_0 a_1 a_2 is clockwise around its interior.
  out.rotation[v] = {2 * arm[0], 2 * arm[2], 2 * arm[1]};
  finish(out);
  return out;
}

int rank_of(RatMatrix m) {
  int rank = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::size_t c = 0; c < C && rank < static_cast<int>(R); ++c) {
    std::size_t p = rank;
    while (p < R && sgn(m(p, c)) == 0) ++p;
    if (p == R) continue;
    m.swap_rows(rank, p);
    for (std::size_t i = rank + 1; i < R; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(rank, c);
      for (std::size_t j = c; j < C; ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Harmonic extension: rows are vertices, columns node positions.
RatMatrix harmonic_matrix(const Network& net) {
  const int n = static_cast<int>(net.nodes.size());
  RatMatrix k = laplacian(net);
  std::vector<int> in = net.internal_vertices();
  RatMatrix h(net.num_vertices, n);
  for (int i = 0; i < n; ++i) h(net.nodes[i], i) = 1;
  if (!in.empty()) {
    RatMatrix sol = solve(k.submatrix(to_idx(in), to_idx(in)), k.submatrix(to_idx(in), to_idx(net.nodes)));
    for (std::size_t r = 0; r < in.size(); ++r)
      for (int i = 0; i < n; ++i) h(in[r], i) = -sol(r, i);
  }
  return h;
}

std::vector<Rational> edge_gradient(const Network& net, const RatMatrix& h, int k) {
  const int n = static_cast<int>(net.nodes.size());
  std::vector<Rational> w(n);
  for (int i = 0; i < n; ++i) w[i] = h(net.edges[k].u, i) - h(net.edges[k].v, i);
  return w;
}

Network with_unit_conductances(Network net) {
  for (auto& e : net.edges) e.c = 1;
  return net;
}

Rational det_rc(const RatMatrix& l, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.empty()) return 1;
  return det(l.submatrix(to_idx(rows), to_idx(cols)));
}

std::vector<int> without(const std::vector<int>& v, std::initializer_list<int> drop) {
  std::vector<int> out;
  for (int x : v)
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
  return out;
}

int position(const std::vector<int>& v, int x, const char* what) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw NetworkError(ErrorKind::Domain, std::string(what) + " index " + std::to_string(x + 1) + " is not in the minor");
  return static_cast<int>(it - v.begin());
}

}  // namespace

std::string move_name(MoveKind k) {
  switch (k) {
    case MoveKind::DeadBranch: return "dead-branch";
    case MoveKind::SelfLoop: return "self-loop";
    case MoveKind::Series: return "series";
    case MoveKind::Parallel: return "parallel";
    case MoveKind::YDelta: return "ydelta";
    case MoveKind::DeltaY: return "deltay";
  }
  return "?";
}

MoveKind parse_move(const std::string& s) {
  for (auto k : {MoveKind::DeadBranch, MoveKind::SelfLoop, MoveKind::Series, MoveKind::Parallel, MoveKind::YDelta,
                 MoveKind::DeltaY})
    if (s == move_name(k)) return k;
  if (s == "y-delta") return MoveKind::YDelta;
  if (s == "delta-y") return MoveKind::DeltaY;
  throw InputError("unknown move '" + s + "'");
}

std::string move_str(const Network& net, const Move& m) {
  std::string s = move_name(m.kind);
  if (m.vertex >= 0) s += " v" + std::to_string(m.vertex);
  for (int k : m.edges) s += " e" + std::to_string(net.edges.at(k).id);
  return s;
}

Network apply_move(const Network& net, const Move& m) {
  switch (m.kind) {
    case MoveKind::DeadBranch: return dead_branch(net, m.vertex);
    case MoveKind::SelfLoop:
      if (m.edges.size() != 1) mismatch("self-loop: needs one edge");
      return self_loop(net, m.edges[0]);
    case MoveKind::Series: return series(net, m.vertex);
    case MoveKind::Parallel:
      if (m.edges.size() != 2) mismatch("parallel: needs two edges");
      return parallel(net, m.edges[0], m.edges[1]);
    case MoveKind::YDelta: return y_delta(net, m.vertex);
    case MoveKind::DeltaY: return delta_y(net, m.edges);
  }
  mismatch("unknown move");
}

std::vector<Move> legal_moves(const Network& net) {
  std::vector<Move> cand;
  for (int v = 0; v < net.num_vertices; ++v) {
    if (net.is_node(v)) continue;
    const int deg = net.degree(v);
    if (deg == 1) cand.push_back({MoveKind::DeadBranch, v, {}});
    if (deg == 2) cand.push_back({MoveKind::Series, v, {}});
    if (deg == 3) cand.push_back({MoveKind::YDelta, v, {}});
  }
  for (int k = 0; k < net.num_edges(); ++k) {
    const Edge& e = net.edges[k];
    if (e.u == e.v) {
      cand.push_back({MoveKind::SelfLoop, -1, {k}});
      continue;
    }
    for (int j = k + 1; j < net.num_edges(); ++j) {
      const Edge& f = net.edges[j];
      if ((f.u == e.u && f.v == e.v) || (f.u == e.v && f.v == e.u)) cand.push_back({MoveKind::Parallel, -1, {k, j}});
    }
  }
  if (net.has_embedding()) {
    FaceData fd = trace_faces(net);
    for (std::size_t fi = 0; fi < fd.faces.size(); ++fi)
      if (const auto& f = fd.faces[fi]; f.size() == 3 && static_cast<int>(fi) != fd.outer) {
        std::vector<int> ks;
        for (int d : f) ks.push_back(Network::edge_of(d));
        std::sort(ks.begin(), ks.end());
        if (std::unique(ks.begin(), ks.end()) == ks.end()) cand.push_back({MoveKind::DeltaY, -1, ks});
      }
  }
  std::vector<Move> out;
  for (const auto& m : cand) {
    try {
      apply_move(net, m);
      out.push_back(m);
    } catch (const NetworkError&) {
    }
  }
  return out;
}

InvarianceCheck response_invariance_check(const Network& net, const Move& m) {
  InvarianceCheck r;
  r.before = response_matrix(net);
  r.after = response_matrix(apply_move(net, m));
  r.equal = r.before == r.after;
  return r;
}

namespace {

// Contraction without the final embedding check; peeling may isolate nodes.
Network contract_unchecked(const Network& net, int k) {
  if (k < 0 || k >= net.num_edges()) mismatch("contract: no edge at position " + std::to_string(k));
  const Edge& e = net.edges[k];
  if (e.u == e.v) mismatch("contract: cannot contract a loop");
  if (net.is_node(e.u) && net.is_node(e.v)) mismatch("contract: both endpoints are nodes");
  const bool keep_u = !net.is_node(e.v) || net.is_node(e.u);
  const int d = keep_u ? 2 * k : 2 * k + 1;  // keep -> other
  const int keep = net.tail(d), other = net.head(d);
  Network out = net;
  // Re-gauge the other endpoint so the contracted edge has weight zero.
  const Exp shift = net.weight(d);
  for (int j = 0; j < out.num_edges(); ++j) {
    if (j == k) continue;
    Edge& f = out.edges[j];
    if (f.u == other) f.h = f.h + shift;
    if (f.v == other) f.h = f.h - shift;
    if (f.u == other) f.u = keep;
    if (f.v == other) f.v = keep;
  }
  if (out.has_embedding()) {
    std::vector<int> splice;
    const auto& ro = net.rotation[other];
    auto at = std::find(ro.begin(), ro.end(), Network::rev(d));
    const std::size_t s = at - ro.begin();
    for (std::size_t i = 1; i < ro.size(); ++i) splice.push_back(ro[(s + i) % ro.size()]);
    replace_dart(out, keep, d, splice);
    out.rotation[other].clear();
  }
  remove_edge(out, k);
  out.compact_vertices();
  return out;
}

}  // namespace

Network contract_edge(const Network& net, int k) {
  Network out = contract_unchecked(net, k);
  finish(out);
  return out;
}

int response_jacobian_rank(const Network& net) {
  const int n = static_cast<int>(net.nodes.size());
  if (net.num_edges() == 0) return 0;
  RatMatrix h = harmonic_matrix(net);
  RatMatrix j(net.num_edges(), n * (n - 1) / 2);
  for (int k = 0; k < net.num_edges(); ++k) {
    auto w = edge_gradient(net, h, k);
    int col = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) j(k, col++) = w[a] * w[b];
  }
  return rank_of(j);
}

std::string minor_str(const MinorIndex& m) {
  std::string s = "L[";
  for (std::size_t i = 0; i < m.rows.size(); ++i) s += (i ? "," : "") + std::to_string(m.rows[i] + 1);
  s += ";";
  for (std::size_t i = 0; i < m.cols.size(); ++i) s += (i ? "," : "") + std::to_string(m.cols[i] + 1);
  return s + "]";
}

std::vector<MinorIndex> noninterlaced_minors(int n, int max_size) {
  if (max_size <= 0) max_size = n / 2;
  std::vector<MinorIndex> out;
  std::vector<int> label(n, 0);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code, np = 0, nq = 0;
    for (int i = 0; i < n; ++i) {
      label[i] = c % 3;
      c /= 3;
      np += label[i] == 1;
      nq += label[i] == 2;
    }
    if (np == 0 || np != nq || np > max_size) continue;
    std::vector<int> used;
    for (int i = 0; i < n; ++i)
      if (label[i]) used.push_back(i);
    if (label[used[0]] != 1) continue;  // min element in rows: one of each transpose pair
    int changes = 0, start = -1;
    for (std::size_t t = 0; t < used.size(); ++t) {
      int prev = used[(t + used.size() - 1) % used.size()];
      if (label[used[t]] != label[prev]) {
        ++changes;
        if (label[used[t]] == 1) start = static_cast<int>(t);
      }
    }
    if (changes != 2) continue;
    MinorIndex m;
    for (std::size_t t = 0; t < used.size(); ++t) {
      int x = used[(start + t) % used.size()];
      (label[x] == 1 ? m.rows : m.cols).push_back(x);
    }
    std::reverse(m.cols.begin(), m.cols.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const MinorIndex& a, const MinorIndex& b) {
    return a.rows.size() != b.rows.size() ? a.rows.size() < b.rows.size()
                                          : std::tie(a.rows, a.cols) < std::tie(b.rows, b.cols);
  });
  return out;
}

Rational minor_value(const RatMatrix& l, const MinorIndex& m) { return det_rc(l, m.rows, m.cols); }

Reconstruction reconstruct(const Network& topology, const RatMatrix& l_in) {
  if (topology.surface != Surface::Disk || !topology.has_embedding())
    throw NetworkError(ErrorKind::Domain, "reconstruction needs an embedded disk network");
  const int n = static_cast<int>(topology.nodes.size());
  if (static_cast<int>(l_in.rows()) != n || static_cast<int>(l_in.cols()) != n)
    throw ReconstructionError(0, "L is " + std::to_string(l_in.rows()) + "x" + std::to_string(l_in.cols()) +
                                     " but the topology has " + std::to_string(n) + " nodes");
  for (int i = 0; i < n; ++i) {
    Rational row = 0;
    for (int j = 0; j < n; ++j) {
      row += l_in(i, j);
      if (l_in(i, j) != l_in(j, i)) throw ReconstructionError(0, "L is not symmetric");
    }
    if (row != 0) throw ReconstructionError(0, "row " + std::to_string(i + 1) + " of L does not sum to zero");
  }
  if (!is_minimal(topology).minimal) throw NetworkError(ErrorKind::Domain, "topology is not minimal");
  const auto minors = noninterlaced_minors(n);
  Reconstruction rec;
  std::map<int, Rational> by_id;
  Network g = topology;
  RatMatrix l = l_in;
  int step = 0;
  while (g.num_edges() > 0) {
    ++step;
    struct Cand {
      int k;
      bool spike;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < n; ++i) {
      std::vector<int> ks;
      for (int k = 0; k < g.num_edges(); ++k) {
        const Edge& e = g.edges[k];
        if (e.u != e.v && (e.u == g.nodes[i] || e.v == g.nodes[i]) && g.is_node(e.u) && g.is_node(e.v)) ks.push_back(k);
      }
      std::sort(ks.begin(), ks.end(), [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
      for (int k : ks)
        if (std::none_of(cands.begin(), cands.end(), [&](const Cand& c) { return c.k == k; })) cands.push_back({k, false});
    }
    for (int i = 0; i < n; ++i) {
      auto ds = g.rotation[g.nodes[i]];
      if (ds.size() == 1 && !g.is_node(g.head(ds[0]))) cands.push_back({Network::edge_of(ds[0]), true});
    }
    bool peeled = false;
    for (const auto& cand : cands) {
      Network next;
      try {
        next = cand.spike ? contract_unchecked(g, cand.k) : [&] {
          Network t = g;
          remove_edge(t, cand.k);
          return t;
        }();
        if (response_jacobian_rank(next) != next.num_edges()) continue;
      } catch (const std::exception&) {
        continue;
      }
      RatMatrix ones;
      try {
        ones = response_matrix(with_unit_conductances(next));
      } catch (const SingularMatrix&) {
        continue;
      }
      const Edge& e = g.edges[cand.k];
      const int p = g.node_index(cand.spike ? (g.is_node(e.u) ? e.u : e.v) : e.u);
      const int q = cand.spike ? -1 : g.node_index(e.v);
      // L after the peel as an affine family in one parameter.
      auto family = [&](const Rational& s) {
        RatMatrix m = l;
        if (!cand.spike) {
          m(p, p) -= s, m(q, q) -= s, m(p, q) += s, m(q, p) += s;
        } else {
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) -= s * l(a, p) * l(b, p);
        }
        return m;
      };
      const RatMatrix l0 = family(0), l1 = family(1);
      for (const auto& mi : minors) {
        if (minor_value(ones, mi) != 0) continue;
        const Rational f0 = minor_value(l0, mi), f1 = minor_value(l1, mi);
        if (f0 == f1) continue;
        const Rational root = f0 / (f0 - f1);
        Rational c;
        if (!cand.spike) {
          c = -root;  // the family parameter is minus the conductance
        } else {
          if (sgn(root) == 0) throw ReconstructionError(step, "spike at node " + std::to_string(p + 1) + " would need infinite conductance");
          c = 1 / root - l(p, p);
        }
        if (sgn(c) <= 0)
          throw ReconstructionError(step, std::string(cand.spike ? "spike" : "edge") + " e" + std::to_string(e.id) +
                                              " gets nonpositive conductance " + to_string(c) + " from " + minor_str(mi));
        PeelStep ps;
        ps.spike = cand.spike;
        ps.edge_id = e.id;
        ps.conductance = c;
        ps.witness = mi;
        rec.steps.push_back(ps);
        by_id[e.id] = c;
        l = cand.spike ? family(root) : family(-c);
        g = next;
        peeled = true;
        break;
      }
      if (peeled) break;
    }
    if (!peeled) throw ReconstructionError(step, "no boundary edge or spike can be peeled consistently with L");
  }
  for (const auto& e : topology.edges) rec.conductance.push_back(by_id.at(e.id));
  Network check = topology;
  for (int k = 0; k < check.num_edges(); ++k) check.edges[k].c = rec.conductance[k];
  if (response_matrix(check) != l_in) throw ReconstructionError(step, "L is not the response of any conductances on this topology");
  return rec;
}

std::vector<MinorIndex> central_minors(int n) {
  if (n < 2) throw NetworkError(ErrorKind::Domain, "central minors need n >= 2");
  std::vector<MinorIndex> out;
  auto make = [&](int j, int i, int bstart) {
    MinorIndex m;
    for (int t = 0; t < i; ++t) m.rows.push_back((j + t) % n);
    for (int t = i - 1; t >= 0; --t) m.cols.push_back((bstart + t) % n);
    out.push_back(m);
  };
  if (n % 2) {
    const int h = (n - 1) / 2;
    for (int i = 1; i <= h; ++i)
      for (int j = 0; j < n; ++j) make(j, i, j + h);
  } else {
    for (int i = 1; i <= n / 2; ++i) {
      const int g = (n - 2 * i) / 2;
      for (int j = 0; j < n / 2; ++j) make(j, i, j + i + g);
      if (g >= 1)
        for (int j = 0; j < n / 2; ++j) make(j, i, j + i + g - 1);
    }
  }
  return out;
}

std::vector<Rational> evaluate_minors(const RatMatrix& l, const std::vector<MinorIndex>& ms) {
  std::vector<Rational> v;
  for (const auto& m : ms) v.push_back(minor_value(l, m));
  return v;
}

IdentitySides jaw_identity(const RatMatrix& l, const std::vector<int>& rows, const std::vector<int>& cols, int a,
                           int b, int c, int d) {
  if (cols.size() + 1 != rows.size()) throw NetworkError(ErrorKind::Domain, "jaw: needs one more row than columns");
  const int pa = position(rows, a, "row"), pb = position(rows, b, "row"), pc = position(rows, c, "row");
  position(cols, d, "column");
  if (!(pa < pb && pb < pc)) throw NetworkError(ErrorKind::Domain, "jaw: a, b, c must appear in this order");
  IdentitySides s;
  const auto cd = without(cols, {d});
  s.lhs = det_rc(l, without(rows, {b}), cols) * det_rc(l, without(rows, {a, c}), cd);
  s.rhs = det_rc(l, without(rows, {a}), cols) * det_rc(l, without(rows, {b, c}), cd) +
          det_rc(l, without(rows, {c}), cols) * det_rc(l, without(rows, {a, b}), cd);
  return s;
}

IdentitySides condensation_identity(const RatMatrix& l, const std::vector<int>& rows, const std::vector<int>& cols,
                                    int a, int b, int c, int d) {
  if (cols.size() != rows.size()) throw NetworkError(ErrorKind::Domain, "condensation: needs a square minor");
  if (!(position(rows, a, "row") < position(rows, b, "row")) || !(position(cols, c, "column") < position(cols, d, "column")))
    throw NetworkError(ErrorKind::Domain, "condensation: a must precede b and c must precede d");
  IdentitySides s;
  s.lhs = det_rc(l, without(rows, {a}), without(cols, {c})) * det_rc(l, without(rows, {b}), without(cols, {d}));
  s.rhs = det_rc(l, rows, cols) * det_rc(l, without(rows, {a, b}), without(cols, {c, d})) +
          det_rc(l, without(rows, {b}), without(cols, {c})) * det_rc(l, without(rows, {a}), without(cols, {d}));
  return s;
}

LogJacobian log_jacobian(const Network& net) {
  const int n = static_cast<int>(net.nodes.size());
  if (net.surface != Surface::Disk || n < 2) throw NetworkError(ErrorKind::Domain, "log-Jacobian needs a disk network with nodes");
  if (net.num_edges() != n * (n - 1) / 2)
    throw NetworkError(ErrorKind::Domain, "log-Jacobian needs n(n-1)/2 = " + std::to_string(n * (n - 1) / 2) +
                                              " edges, network has " + std::to_string(net.num_edges()));
  LogJacobian out;
  out.minors = central_minors(n);
  const RatMatrix l = response_matrix(net);
  const RatMatrix h = harmonic_matrix(net);
  std::vector<std::vector<Rational>> w;
  for (int k = 0; k < net.num_edges(); ++k) w.push_back(edge_gradient(net, h, k));
  out.matrix = RatMatrix(out.minors.size(), net.num_edges());
  for (std::size_t i = 0; i < out.minors.size(); ++i) {
    const auto& m = out.minors[i];
    RatMatrix x = l.submatrix(to_idx(m.rows), to_idx(m.cols));
    if (sgn(det(x)) <= 0) throw NetworkError(ErrorKind::Domain, "central minor " + minor_str(m) + " is not positive");
    const RatMatrix xi = inverse(x);
    // d L / d c_k = -w w^T, so d log det X = -w_cols^T X^{-1} w_rows.
    for (int k = 0; k < net.num_edges(); ++k) {
      Rational acc = 0;
      for (std::size_t r = 0; r < m.cols.size(); ++r)
        for (std::size_t s = 0; s < m.rows.size(); ++s) acc += w[k][m.cols[r]] * xi(r, s) * w[k][m.rows[s]];
      out.matrix(i, k) = -acc * net.edges[k].c;
    }
  }
  out.det = det(out.matrix);
  return out;
}

long double log_jacobian_fd(const Network& net, const Rational& hstep) {
  const int n = static_cast<int>(net.nodes.size());
  const auto ms = central_minors(n);
  const int m = static_cast<int>(ms.size()), e = net.num_edges();
  if (m != e) throw NetworkError(ErrorKind::Domain, "log-Jacobian needs n(n-1)/2 edges");
  std::vector<std::vector<long double>> a(m, std::vector<long double>(e));
  const long double denom = std::log1pl(hstep.get_d()) - std::log1pl(-hstep.get_d());
  for (int k = 0; k < e; ++k) {
    Network up = net, down = net;
    up.edges[k].c *= 1 + hstep;
    down.edges[k].c *= 1 - hstep;
    auto vu = evaluate_minors(response_matrix(up), ms);
    auto vd = evaluate_minors(response_matrix(down), ms);
    for (int i = 0; i < m; ++i) {
      Rational ratio = vu[i] / vd[i];
      a[i][k] = std::log(static_cast<long double>(ratio.get_d())) / denom;
    }
  }
  long double d = 1;
  for (int c = 0; c < m; ++c) {
    int p = c;
    for (int r = c + 1; r < m; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (a[p][c] == 0) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (int r = c + 1; r < m; ++r) {
      long double f = a[r][c] / a[c][c];
      for (int j = c; j < m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

Network random_minimal_disk_network(Rng& rng, int n, int max_edges) {
  if (n < 2 || n > 8) throw NetworkError(ErrorKind::Domain, "random_minimal_disk_network: 2 <= n <= 8");
  std::vector<Rational> c;
  for (int k = 0; k < n * (n - 1) / 2; ++k) c.push_back(rng.positive_rational());
  Network net = gamma_network(n, c);
  const int steps = 4 + static_cast<int>(rng.below(8));
  for (int it = 0; it < 200 && (it < steps || net.num_edges() > max_edges); ++it) {
    Network next;
    try {
      const auto kind = rng.below(4);
      if (kind == 0) {
        std::vector<Move> ms;
        for (const auto& m : legal_moves(net))
          if (m.kind == MoveKind::YDelta || m.kind == MoveKind::DeltaY) ms.push_back(m);
        if (ms.empty()) continue;
        next = apply_move(net, ms[rng.below(ms.size())]);
      } else if (net.num_edges() > 1) {
        const int k = static_cast<int>(rng.below(net.num_edges()));
        if (kind == 1) {
          next = contract_edge(net, k);
        } else {
          next = net;
          remove_edge(next, k);
          validate_embedding(next);
        }
      } else {
        continue;
      }
      if (!is_minimal(next).minimal) continue;
    } catch (const NetworkError&) {
      continue;
    }
    net = next;
  }
  return net;
}

}  // namespace ohmlab
