#include "ohmlab/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace ohmlab {

std::string surface_name(Surface s) {
  switch (s) {
    case Surface::Disk: return "disk";
    case Surface::Annulus: return "annulus";
    case Surface::Torus: return "torus";
    case Surface::Pants: return "pants";
  }
  return "?";
}

Surface parse_surface(const std::string& s) {
  if (s == "disk") return Surface::Disk;
  if (s == "annulus") return Surface::Annulus;
  if (s == "torus") return Surface::Torus;
  if (s == "pants") return Surface::Pants;
  throw NetworkError(ErrorKind::Schema, "unknown surface '" + s + "'");
}

std::string Network::dart_name(int d) const {
  return "e" + std::to_string(edges[d >> 1].id) + (d & 1 ? "-" : "+");
}

int Network::parse_dart(const std::string& name) const {
  if (name.size() < 3 || name[0] != 'e' || (name.back() != '+' && name.back() != '-'))
    throw NetworkError(ErrorKind::Schema, "malformed dart name '" + name + "'");
  int id = 0;
  try {
    std::size_t used = 0;
    id = std::stoi(name.substr(1, name.size() - 2), &used);
    if (used != name.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw NetworkError(ErrorKind::Schema, "malformed dart name '" + name + "'");
  }
  for (int k = 0; k < num_edges(); ++k)
    if (edges[k].id == id) return 2 * k + (name.back() == '-');
  throw NetworkError(ErrorKind::Schema, "dart '" + name + "' names no edge");
}

bool Network::is_node(int v) const { return node_index(v) >= 0; }

int Network::node_index(int v) const {
  auto it = std::find(nodes.begin(), nodes.end(), v);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

std::vector<int> Network::internal_vertices() const {
  std::vector<char> mark(num_vertices, 0);
  for (int v : nodes) mark[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < num_vertices; ++v)
    if (!mark[v]) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> Network::darts_out() const {
  std::vector<std::vector<int>> out(num_vertices);
  for (int d = 0; d < num_darts(); ++d) out[tail(d)].push_back(d);
  return out;
}

int Network::degree(int v) const {
  int k = 0;
  for (const auto& e : edges) k += (e.u == v) + (e.v == v);
  return k;
}

int Network::next_edge_id() const {
  int m = -1;
  for (const auto& e : edges) m = std::max(m, e.id);
  return m + 1;
}

bool Network::connected() const {
  if (num_vertices == 0) return false;
  std::vector<int> p(num_vertices);
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  int comps = num_vertices;
  for (const auto& e : edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      p[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

int Network::sigma(int d) const {
  const auto& r = rotation[tail(d)];
  auto it = std::find(r.begin(), r.end(), d);
  ++it;
  return it == r.end() ? r.front() : *it;
}

int Network::sigma_inv(int d) const {
  const auto& r = rotation[tail(d)];
  auto it = std::find(r.begin(), r.end(), d);
  return it == r.begin() ? r.back() : *std::prev(it);
}

void Network::validate(bool require_connected) const {
  auto fail = [](ErrorKind k, const std::string& m) { throw NetworkError(k, m); };
  if (num_vertices <= 0) fail(ErrorKind::Schema, "network has no vertices");
  if (edges.empty()) fail(ErrorKind::Schema, "network has no edges");
  std::set<int> ids;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
      fail(ErrorKind::Schema, "edge " + std::to_string(e.id) + " has an endpoint out of range");
    if (!ids.insert(e.id).second) fail(ErrorKind::Schema, "duplicate edge id " + std::to_string(e.id));
    if (sgn(e.c) <= 0) fail(ErrorKind::Schema, "edge " + std::to_string(e.id) + " has non-positive conductance");
    if (surface == Surface::Disk && (e.h[0] != 0 || e.h[1] != 0))
      fail(ErrorKind::NonCocycle, "disk network carries homology weights");
    if (surface == Surface::Annulus && e.h[1] != 0)
      fail(ErrorKind::Schema, "annulus weights have one component");
    if (e.t) {
      if (e.t->rows() != 2 || e.t->cols() != 2) fail(ErrorKind::Schema, "transport is not 2x2");
      if (det(*e.t) != 1) fail(ErrorKind::Schema, "transport of edge " + std::to_string(e.id) + " is not in SL2");
    }
  }
  std::set<int> seen;
  for (int v : nodes) {
    if (v < 0 || v >= num_vertices) fail(ErrorKind::Schema, "node out of range");
    if (!seen.insert(v).second) fail(ErrorKind::Schema, "duplicate node");
  }
  if (has_embedding()) {
    if (static_cast<int>(rotation.size()) != num_vertices)
      fail(ErrorKind::Schema, "rotation system does not cover every vertex");
    std::vector<int> count(num_darts(), 0);
    for (int v = 0; v < num_vertices; ++v)
      for (int d : rotation[v]) {
        if (d < 0 || d >= num_darts()) fail(ErrorKind::Schema, "rotation names an unknown dart");
        if (tail(d) != v) fail(ErrorKind::Schema, "dart " + dart_name(d) + " listed at the wrong vertex");
        ++count[d];
      }
    for (int d = 0; d < num_darts(); ++d)
      if (count[d] != 1) fail(ErrorKind::Schema, "dart " + dart_name(d) + " must appear exactly once in the rotation");
    if (outer && (*outer < 0 || *outer >= num_darts())) fail(ErrorKind::Schema, "outer dart out of range");
  }
  if (require_connected && !connected()) fail(ErrorKind::Disconnected, "network is disconnected");
}

void Network::compact_vertices() {
  std::vector<int> deg(num_vertices, 0);
  for (const auto& e : edges) ++deg[e.u], ++deg[e.v];
  for (int v : nodes) deg[v] = std::max(deg[v], 1);
  std::vector<int> map(num_vertices, -1);
  int k = 0;
  for (int v = 0; v < num_vertices; ++v)
    if (deg[v] > 0) map[v] = k++;
  if (k == num_vertices) return;
  for (auto& e : edges) e.u = map[e.u], e.v = map[e.v];
  for (auto& v : nodes) v = map[v];
  if (has_embedding()) {
    std::vector<std::vector<int>> r(k);
    for (int v = 0; v < num_vertices; ++v)
      if (map[v] >= 0) r[map[v]] = rotation[v];
    rotation = std::move(r);
  }
  num_vertices = k;
}

namespace {

// Corners of the nodes, in order, met along a counterclockwise walk of
// `face`; nullopt when the nodes do not appear in that order.  The corner at
// head(f[i]) inside the face is C(rev(f[i])).
std::optional<std::vector<int>> match_nodes(const Network& net, const std::vector<int>& f) {
  const std::size_t n = net.nodes.size(), len = f.size();
  if (n == 0) return std::vector<int>{};
  for (std::size_t start = 0; start < len; ++start) {
    if (net.head(f[start]) != net.nodes[0]) continue;
    std::vector<int> got{Network::rev(f[start])};
    for (std::size_t s = 1; s < len && got.size() < n; ++s) {
      int d = f[(start + s) % len];
      if (net.head(d) == net.nodes[got.size()]) got.push_back(Network::rev(d));
    }
    if (got.size() == n) return got;
  }
  return std::nullopt;
}

}  // namespace

FaceData trace_faces(const Network& net) {
  if (!net.has_embedding()) throw NetworkError(ErrorKind::Embedding, "network has no rotation system");
  FaceData fd;
  fd.face_of.assign(net.num_darts(), -1);
  for (int d0 = 0; d0 < net.num_darts(); ++d0) {
    if (fd.face_of[d0] >= 0) continue;
    std::vector<int> f;
    Exp w{0, 0};
    int d = d0;
    do {
      fd.face_of[d] = static_cast<int>(fd.faces.size());
      f.push_back(d);
      w = w + net.weight(d);
      d = net.face_next(d);
    } while (d != d0);
    fd.faces.push_back(std::move(f));
    fd.weight.push_back(w);
  }
  for (std::size_t i = 0; i < fd.faces.size(); ++i)
    if (fd.weight[i] != Exp{0, 0}) fd.holes.push_back(static_cast<int>(i));
  if (net.surface == Surface::Disk) {
    if (net.outer) {
      fd.outer = fd.face_of[*net.outer];
    } else {
      // Prefer a face along which the nodes appear counterclockwise; fall
      // back to any face holding them all so the order check can report.
      for (std::size_t i = 0; i < fd.faces.size() && fd.outer < 0; ++i)
        if (match_nodes(net, fd.faces[i])) fd.outer = static_cast<int>(i);
      for (std::size_t i = 0; i < fd.faces.size() && fd.outer < 0; ++i) {
        std::set<int> vs;
        for (int d : fd.faces[i]) vs.insert(net.head(d));
        bool all = std::all_of(net.nodes.begin(), net.nodes.end(), [&](int v) { return vs.count(v) > 0; });
        if (all) fd.outer = static_cast<int>(i);
      }
    }
  }
  return fd;
}

namespace {

// Index of the 2x2 lattice spanned by the weights of all closed walks, via
// fundamental cycles of a BFS tree.  Returns 0 when the rank is below 2.
long lattice_index(const Network& net) {
  std::vector<Exp> pot(net.num_vertices, Exp{0, 0});
  std::vector<char> seen(net.num_vertices, 0);
  std::vector<char> tree(net.num_edges(), 0);
  auto out = net.darts_out();
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int d : out[v]) {
      int w = net.head(d);
      if (seen[w]) continue;
      seen[w] = 1;
      tree[Network::edge_of(d)] = 1;
      pot[w] = pot[v] + net.weight(d);
      q.push(w);
    }
  }
  std::vector<Exp> gens;
  for (int k = 0; k < net.num_edges(); ++k)
    if (!tree[k]) gens.push_back(pot[net.edges[k].u] + net.edges[k].h - pot[net.edges[k].v]);
  long g = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      g = std::gcd(g, std::labs(static_cast<long>(gens[i][0]) * gens[j][1] - static_cast<long>(gens[i][1]) * gens[j][0]));
  return g;
}

}  // namespace

void validate_embedding(const Network& net) {
  net.validate(true);
  FaceData fd = trace_faces(net);
  const int chi = net.num_vertices - net.num_edges() + static_cast<int>(fd.faces.size());
  const int want = net.surface == Surface::Torus ? 0 : 2;
  if (chi != want)
    throw NetworkError(ErrorKind::Embedding, "rotation system has Euler characteristic " + std::to_string(chi) +
                                                 ", expected " + std::to_string(want) + " for " +
                                                 surface_name(net.surface));
  switch (net.surface) {
    case Surface::Disk:
      if (fd.outer < 0) throw NetworkError(ErrorKind::Embedding, "no face contains every node");
      break;
    case Surface::Torus:
      if (!fd.holes.empty()) throw NetworkError(ErrorKind::NonCocycle, "face with nonzero homology weight on the torus");
      if (lattice_index(net) != 1)
        throw NetworkError(ErrorKind::NonCocycle, "torus weights do not generate the homology lattice");
      break;
    case Surface::Annulus:
      if (fd.holes.size() != 2 || std::abs(fd.weight[fd.holes[0]][0]) != 1)
        throw NetworkError(ErrorKind::NonCocycle, "annulus needs exactly two faces of weight +-1");
      break;
    case Surface::Pants:
      if (fd.holes.size() > 3) throw NetworkError(ErrorKind::NonCocycle, "pair of pants has more than three holes");
      break;
  }
  if (!net.nodes.empty() && net.surface != Surface::Torus) boundary_corners(net, fd);
}

std::vector<int> boundary_corners(const Network& net, const FaceData& fd) {
  const int n = static_cast<int>(net.nodes.size());
  std::vector<int> out(n, -1);
  if (n == 0) return out;
  if (net.surface == Surface::Disk) {
    if (auto got = match_nodes(net, fd.faces.at(fd.outer))) return *got;
    throw NetworkError(ErrorKind::Embedding, "nodes do not occur counterclockwise on the outer face");
  }
  for (int i = 0; i < n; ++i) {
    for (int h : fd.holes)
      for (int d : fd.faces[h])
        if (out[i] < 0 && net.head(d) == net.nodes[i]) out[i] = Network::rev(d);
    if (out[i] < 0) throw NetworkError(ErrorKind::Embedding, "node " + std::to_string(net.nodes[i]) + " is not on a boundary face");
  }
  return out;
}

Components components(const Network& net, EdgeMask mask) {
  std::vector<int> p(net.num_vertices);
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (int k = 0; k < net.num_edges(); ++k)
    if (mask >> k & 1) p[find(net.edges[k].u)] = find(net.edges[k].v);
  Components c;
  c.comp.assign(net.num_vertices, -1);
  std::vector<int> label(net.num_vertices, -1);
  for (int v = 0; v < net.num_vertices; ++v) {
    int r = find(v);
    if (label[r] < 0) {
      label[r] = c.count++;
      c.vertices_in.push_back(0);
      c.edges_in.push_back(0);
    }
    c.comp[v] = label[r];
    ++c.vertices_in[label[r]];
  }
  for (int k = 0; k < net.num_edges(); ++k)
    if (mask >> k & 1) ++c.edges_in[c.comp[net.edges[k].u]];
  return c;
}

Exp walk_weight(const Network& net, const std::vector<int>& darts) {
  Exp w{0, 0};
  for (int d : darts) w = w + net.weight(d);
  return w;
}

std::vector<int> unicycle_walk(const Network& net, const std::vector<int>& edges) {
  std::map<int, int> deg;
  for (int k : edges) ++deg[net.edges[k].u], ++deg[net.edges[k].v];
  std::set<int> alive(edges.begin(), edges.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      const Edge& e = net.edges[*it];
      if (e.u != e.v && (deg[e.u] == 1 || deg[e.v] == 1)) {
        --deg[e.u], --deg[e.v];
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<int> walk;
  if (alive.empty()) return walk;
  int k0 = *alive.begin();
  int d = 2 * k0;
  std::set<int> used{k0};
  walk.push_back(d);
  int start = net.tail(d);
  while (net.head(d) != start) {
    int v = net.head(d);
    int nd = -1;
    for (int k : alive)
      if (!used.count(k)) {
        if (net.edges[k].u == v) nd = 2 * k;
        else if (net.edges[k].v == v) nd = 2 * k + 1;
        if (nd >= 0) break;
      }
    if (nd < 0) throw std::logic_error("unicycle_walk: edge set is not unicyclic");
    used.insert(Network::edge_of(nd));
    walk.push_back(nd);
    d = nd;
  }
  return walk;
}

std::vector<int> tree_path(const Network& net, const std::vector<int>& edges, int a, int b) {
  std::map<int, int> via;  // vertex -> dart used to reach it
  std::queue<int> q;
  q.push(a);
  via[a] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == b) break;
    for (int k : edges) {
      for (int d : {2 * k, 2 * k + 1}) {
        if (net.tail(d) != v || via.count(net.head(d))) continue;
        via[net.head(d)] = d;
        q.push(net.head(d));
      }
    }
  }
  if (!via.count(b)) throw std::logic_error("tree_path: vertices are not connected");
  std::vector<int> path;
  for (int v = b; v != a;) {
    int d = via[v];
    path.push_back(d);
    v = net.tail(d);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace ohmlab
