#include "ohmlab/families.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace ohmlab {

Network NetworkBuilder::build() const {
  Network n = net_;
  if (n.has_embedding()) validate_embedding(n);
  else n.validate(true);
  return n;
}

Network y_network(const Rational& c1, const Rational& c2, const Rational& c3) {
  NetworkBuilder b(Surface::Disk, 4);
  int d0 = b.add_edge(0, 3, c1), d1 = b.add_edge(1, 3, c2), d2 = b.add_edge(2, 3, c3);
  for (int i = 0; i < 3; ++i) b.set_rotation(i, {2 * i});
  b.set_rotation(3, {d0 + 1, d1 + 1, d2 + 1});
  b.set_nodes({0, 1, 2});
  return b.build();
}

Network gamma_network(int n, const std::vector<Rational>& c) {
  if (n < 2 || n > 8) throw NetworkError(ErrorKind::Domain, "gamma_network: n must lie in 2..8");
  const int edges = n * (n - 1) / 2;
  if (!c.empty() && static_cast<int>(c.size()) != edges)
    throw NetworkError(ErrorKind::Domain, "gamma_network: expected n(n-1)/2 conductances");
  // Crossing k sits at x = k and swaps wire positions word[k], word[k]+1.
  std::vector<int> word;
  for (int r = n - 1; r >= 1; --r)
    for (int i = 1; i <= r; ++i) word.push_back(i);
  // Gap g lies between wire positions g and g+1; gaps 0 and n touch the
  // boundary along the bottom and top.  Pieces of gap g are cut by s_g.
  auto piece_at = [&](int g, int x) {
    int p = 0;
    for (int k = 0; k < x; ++k) p += word[k] == g;
    return p;
  };
  std::vector<int> pieces(n + 1, 1);
  for (int i : word) ++pieces[i];
  // Vertices are the odd-gap pieces.  Nodes first, counterclockwise from the
  // right end of gap 1: right pieces upward, the top gap, left pieces downward.
  std::map<std::pair<int, int>, int> vid;
  std::vector<int> nodes;
  auto add_vertex = [&](int g, int p) {
    auto key = std::make_pair(g, p);
    if (!vid.count(key)) vid[key] = static_cast<int>(vid.size());
    return vid[key];
  };
  for (int g = 1; g < n; g += 2) nodes.push_back(add_vertex(g, pieces[g] - 1));
  if (n % 2 == 1) nodes.push_back(add_vertex(n, 0));
  for (int g = (n % 2 == 1 ? n - 2 : n - 1); g >= 1; g -= 2) nodes.push_back(add_vertex(g, 0));
  for (int g = 1; g <= n; g += 2)
    for (int p = 0; p < pieces[g]; ++p) add_vertex(g, p);

  NetworkBuilder b(Surface::Disk, static_cast<int>(vid.size()));
  // Edge k: odd i joins the pieces of gap i left/right of the crossing;
  // even i joins gap i-1 (u) to gap i+1 (v).
  for (int k = 0; k < edges; ++k) {
    int i = word[k];
    Rational ck = c.empty() ? Rational(1) : c[k];
    if (i % 2 == 1) b.add_edge(vid[{i, piece_at(i, k)}], vid[{i, piece_at(i, k) + 1}], ck);
    else b.add_edge(vid[{i - 1, piece_at(i - 1, k)}], vid[{i + 1, piece_at(i + 1, k)}], ck);
  }
  for (const auto& [key, v] : vid) {
    auto [g, p] = key;
    std::vector<int> cross_g;
    for (int k = 0; k < edges; ++k)
      if (word[k] == g) cross_g.push_back(k);
    int xa = p > 0 ? cross_g[p - 1] : -1;
    int xb = p < static_cast<int>(cross_g.size()) ? cross_g[p] : edges;
    std::vector<int> rot;
    if (xa >= 0) rot.push_back(2 * xa + 1);  // west: this piece is the right end
    for (int k = xa + 1; k < xb; ++k)        // south, left to right
      if (word[k] == g - 1) rot.push_back(2 * k + 1);
    if (xb < edges) rot.push_back(2 * xb);    // east
    for (int k = xb - 1; k > xa; --k)         // north, right to left
      if (word[k] == g + 1) rot.push_back(2 * k);
    b.set_rotation(v, rot);
  }
  b.set_nodes(nodes);
  return b.build();
}

Network cylinder(int m, int n, bool ring_nodes) {
  if (m < 1 || n < 1 || m > 8 || n > 8) throw NetworkError(ErrorKind::Domain, "cylinder: m,n must lie in 1..8");
  auto id = [&](int x, int i) { return i * n + x; };
  NetworkBuilder b(Surface::Annulus, m * n);
  std::vector<int> ring(m * n), radial(m * n, -1);
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < n; ++x)
      ring[id(x, i)] = b.add_edge(id(x, i), id((x + 1) % n, i), 1, {x == n - 1 ? 1 : 0, 0});
  for (int i = 0; i + 1 < m; ++i)
    for (int x = 0; x < n; ++x) radial[id(x, i)] = b.add_edge(id(x, i), id(x, i + 1), 1);
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < n; ++x) {
      std::vector<int> rot;
      if (i + 1 < m) rot.push_back(radial[id(x, i)]);
      rot.push_back(ring[id(x, i)]);
      if (i > 0) rot.push_back(radial[id(x, i - 1)] + 1);
      rot.push_back(ring[id((x + n - 1) % n, i)] + 1);
      b.set_rotation(id(x, i), rot);
    }
  if (ring_nodes) {
    std::vector<int> nodes;
    for (int x = 0; x < n; ++x) nodes.push_back(id(x, 0));
    if (m > 1)
      for (int x = 0; x < n; ++x) nodes.push_back(id(x, m - 1));
    b.set_nodes(nodes);
  }
  return b.build();
}

Network string_of_loops(const std::vector<Rational>& a, const std::vector<Rational>& bl) {
  const int n = static_cast<int>(bl.size());
  if (n < 1 || static_cast<int>(a.size()) != n - 1)
    throw NetworkError(ErrorKind::Domain, "string_of_loops: need n loops and n-1 path conductances");
  NetworkBuilder b(Surface::Annulus, n);
  std::vector<int> loop(n), path(n, -1);
  for (int i = 0; i < n; ++i) loop[i] = b.add_edge(i, i, bl[i], {1, 0});
  for (int i = 0; i + 1 < n; ++i) path[i] = b.add_edge(i, i + 1, a[i]);
  for (int i = 0; i < n; ++i) {
    std::vector<int> rot;
    if (i + 1 < n) rot.push_back(path[i]);
    rot.push_back(loop[i]);
    if (i > 0) rot.push_back(path[i - 1] + 1);
    rot.push_back(loop[i] + 1);
    b.set_rotation(i, rot);
  }
  return b.build();
}

Network torus_grid(int m, int n, const Rational& c) {
  if (m < 1 || n < 1 || m > 12 || n > 12) throw NetworkError(ErrorKind::Domain, "torus_grid: m,n must lie in 1..12");
  auto id = [&](int x, int y) { return x + m * y; };
  NetworkBuilder b(Surface::Torus, m * n);
  std::vector<int> east(m * n), north(m * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) {
      east[id(x, y)] = b.add_edge(id(x, y), id((x + 1) % m, y), c, {x == m - 1 ? 1 : 0, 0});
      north[id(x, y)] = b.add_edge(id(x, y), id(x, (y + 1) % n), c, {0, y == n - 1 ? 1 : 0});
    }
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x)
      b.set_rotation(id(x, y), {east[id(x, y)], north[id(x, y)], east[id((x + m - 1) % m, y)] + 1,
                                north[id(x, (y + n - 1) % n)] + 1});
  return b.build();
}

Network torus_fixture() {
  Network t = torus_grid(2, 2);
  for (auto& e : t.edges)
    if (e.u == 0 && e.v == 1 && e.h == Exp{0, 0}) e.c = 3;
  return t;
}

Network complete_graph(int n, const Rational& c) {
  NetworkBuilder b(Surface::Disk, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j, c);
  b.drop_embedding();
  return b.build();
}

Network pants_theta(const Rational& c0, const Rational& c1, const Rational& c2) {
  NetworkBuilder b(Surface::Pants, 2);
  int e0 = b.add_edge(0, 1, c0, {0, 0}), e1 = b.add_edge(0, 1, c1, {1, 0}), e2 = b.add_edge(0, 1, c2, {1, 1});
  b.set_rotation(0, {e0, e1, e2});
  b.set_rotation(1, {e2 + 1, e1 + 1, e0 + 1});
  return b.build();
}

Network pants_k4(const std::vector<Rational>& c) {
  if (c.size() != 6) throw NetworkError(ErrorKind::Domain, "pants_k4 needs six conductances");
  NetworkBuilder b(Surface::Pants, 4);
  int s1 = b.add_edge(0, 1, c[0]), s2 = b.add_edge(0, 2, c[1]), s3 = b.add_edge(0, 3, c[2]);
  int a = b.add_edge(1, 2, c[3], {1, 0}), bb = b.add_edge(2, 3, c[4], {0, 1}), d = b.add_edge(3, 1, c[5]);
  // Vertices 1,2,3 sit counterclockwise around the centre.
  b.set_rotation(0, {s1, s2, s3});
  b.set_rotation(1, {a, s1 + 1, d + 1});
  b.set_rotation(2, {bb, s2 + 1, a + 1});
  b.set_rotation(3, {d, s3 + 1, bb + 1});
  return b.build();
}

}  // namespace ohmlab

namespace ohmlab {

Network grid_disk(int w, int h, const Rational& c) {
  if (w < 1 || h < 1 || w * h > 64) throw NetworkError(ErrorKind::Domain, "grid_disk: bad size");
  auto id = [&](int x, int y) { return x + w * y; };
  NetworkBuilder b(Surface::Disk, w * h);
  std::vector<int> east(w * h, -1), north(w * h, -1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) east[id(x, y)] = b.add_edge(id(x, y), id(x + 1, y), c);
      if (y + 1 < h) north[id(x, y)] = b.add_edge(id(x, y), id(x, y + 1), c);
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::vector<int> rot;
      if (x + 1 < w) rot.push_back(east[id(x, y)]);
      if (y + 1 < h) rot.push_back(north[id(x, y)]);
      if (x > 0) rot.push_back(east[id(x - 1, y)] + 1);
      if (y > 0) rot.push_back(north[id(x, y - 1)] + 1);
      b.set_rotation(id(x, y), rot);
    }
  std::vector<int> nodes;
  auto push = [&](int v) {
    if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
  };
  for (int x = 0; x < w; ++x) push(id(x, 0));
  for (int y = 0; y < h; ++y) push(id(w - 1, y));
  for (int x = w - 1; x >= 0; --x) push(id(x, h - 1));
  for (int y = h - 1; y >= 0; --y) push(id(0, y));
  b.set_nodes(nodes);
  return b.build();
}

Network path_network(const std::vector<Rational>& c) {
  const int k = static_cast<int>(c.size());
  if (k < 1) throw NetworkError(ErrorKind::Domain, "path needs an edge");
  NetworkBuilder b(Surface::Disk, k + 1);
  for (int i = 0; i < k; ++i) b.add_edge(i, i + 1, c[i]);
  for (int i = 0; i <= k; ++i) {
    std::vector<int> rot;
    if (i < k) rot.push_back(2 * i);
    if (i > 0) rot.push_back(2 * (i - 1) + 1);
    b.set_rotation(i, rot);
  }
  b.set_nodes({0, k});
  return b.build();
}

int insert_edge(Network& net, int x, int y, const Rational& c, int to) {
  Edge e;
  e.id = net.next_edge_id();
  e.u = net.tail(x);
  e.v = y >= 0 ? net.tail(y) : to;
  e.c = c;
  net.edges.push_back(e);
  const int d = net.num_darts() - 2;
  auto put_after = [&](int v, int after, int dart) {
    auto& r = net.rotation[v];
    r.insert(std::find(r.begin(), r.end(), after) + 1, dart);
  };
  put_after(e.u, x, d);
  if (y >= 0) put_after(e.v, y, d + 1);
  else net.rotation[to] = {d + 1};
  return d;
}

namespace {

bool adjacent(const Network& net, int a, int b) {
  for (const auto& e : net.edges)
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
  return false;
}


std::optional<Network> try_random_disk(Rng& rng, int n, int interior, int max_edges) {
  Network net;
  net.surface = Surface::Disk;
  net.num_vertices = n + interior;
  net.rotation.assign(net.num_vertices, {});
  for (int i = 0; i < n; ++i) net.nodes.push_back(i);
  auto conductance = [&] { return rng.positive_rational(); };
  if (n == 2) {
    net.edges.push_back(Edge{0, 0, 1, conductance(), {0, 0}, {}});
    net.rotation[0] = {0};
    net.rotation[1] = {1};
  } else if (n >= 3) {
    for (int i = 0; i < n; ++i) net.edges.push_back(Edge{i, i, (i + 1) % n, conductance(), {0, 0}, {}});
    for (int i = 0; i < n; ++i) net.rotation[i] = {2 * i, 2 * ((i + n - 1) % n) + 1};
  }
  // Corners of the face containing corner C(x).
  auto face_corners = [&](int x) {
    std::vector<int> out;
    int d0 = net.sigma(x), d = d0;
    do {
      out.push_back(Network::rev(d));  // corner at head(d) is C(rev d)
      d = net.face_next(d);
    } while (d != d0);
    return out;
  };
  for (int w = n; w < n + interior; ++w) {
    if (net.num_edges() >= max_edges) return std::nullopt;
    if (net.num_darts() == 0) {
      // Only one node so far: attach directly.
      net.edges.push_back(Edge{0, 0, w, conductance(), {0, 0}, {}});
      net.rotation[0] = {0};
      net.rotation[w] = {1};
      continue;
    }
    int x = static_cast<int>(rng.below(net.num_darts()));
    int dw = insert_edge(net, x, -1, conductance(), w);
    int extra = rng.range(0, 2);
    for (int k = 0; k < extra && net.num_edges() < max_edges; ++k) {
      int wd = net.rotation[w][rng.below(net.rotation[w].size())];
      auto cs = face_corners(wd);
      int y = cs[rng.below(cs.size())];
      if (net.tail(y) == w || adjacent(net, w, net.tail(y))) continue;
      insert_edge(net, wd, y, conductance());
    }
    (void)dw;
  }
  int target = rng.range(net.num_edges(), max_edges);
  for (int tries = 0; net.num_edges() < target && tries < 50; ++tries) {
    int x = static_cast<int>(rng.below(net.num_darts()));
    auto cs = face_corners(x);
    int y = cs[rng.below(cs.size())];
    if (net.tail(x) == net.tail(y) || adjacent(net, net.tail(x), net.tail(y))) continue;
    insert_edge(net, x, y, conductance());
  }
  int drops = rng.range(0, 2);
  for (int k = 0; k < drops && net.num_edges() > 1; ++k) {
    Network trial = net;
    remove_edge(trial, static_cast<int>(rng.below(trial.num_edges())));
    if (trial.connected()) net = trial;
  }
  for (int k = 0; k < net.num_edges(); ++k) net.edges[k].id = k;
  try {
    validate_embedding(net);
  } catch (const NetworkError&) {
    return std::nullopt;
  }
  return net;
}

}  // namespace

void remove_edge(Network& net, int k) {
  // Dart indices above edge k shift down by 2.
  for (auto& r : net.rotation) {
    r.erase(std::remove_if(r.begin(), r.end(), [&](int d) { return Network::edge_of(d) == k; }), r.end());
    for (int& d : r)
      if (Network::edge_of(d) > k) d -= 2;
  }
  net.edges.erase(net.edges.begin() + k);
}

Network random_disk_network(Rng& rng, int nodes, int interior, int max_edges) {
  if (nodes < 1 || interior < 0 || nodes + interior < 2 || max_edges < nodes + interior - 1)
    throw NetworkError(ErrorKind::Domain, "random_disk_network: impossible size");
  for (int attempt = 0; attempt < 1000; ++attempt)
    if (auto net = try_random_disk(rng, nodes, interior, max_edges)) return *net;
  throw NetworkError(ErrorKind::Domain, "random_disk_network: no network found");
}

Network random_weighted_graph(Rng& rng, Surface s, int vertices, int edges, bool loops) {
  if (vertices < 1 || edges < vertices - 1) throw NetworkError(ErrorKind::Domain, "random_weighted_graph: impossible size");
  Network net;
  net.surface = s;
  net.num_vertices = vertices;
  auto weight = [&]() -> Exp {
    if (s == Surface::Disk) return {0, 0};
    return {rng.range(-1, 1), s == Surface::Annulus ? 0 : rng.range(-1, 1)};
  };
  for (int v = 1; v < vertices; ++v)
    net.edges.push_back(Edge{v - 1, static_cast<int>(rng.below(v)), v, rng.positive_rational(), weight(), {}});
  while (net.num_edges() < edges) {
    int a = static_cast<int>(rng.below(vertices)), b = static_cast<int>(rng.below(vertices));
    if (a == b && !loops) continue;
    Exp h = weight();
    if (a == b && h == Exp{0, 0}) continue;
    net.edges.push_back(Edge{net.num_edges(), a, b, rng.positive_rational(), h, {}});
  }
  net.validate(true);
  return net;
}

}  // namespace ohmlab
