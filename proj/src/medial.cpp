#include "ohmlab/medial.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>

namespace ohmlab {

namespace {

// End ids: L(x) = 2x, R(x) = 2x+1.
int L(int x) { return 2 * x; }
int R(int x) { return 2 * x + 1; }

// Sublattice of Z^2 in Hermite normal form: rows (a, b) with a > 0 and
// (0, c) with c > 0, when present.
class Lattice {
 public:
  explicit Lattice(std::vector<Exp> gens) {
    gens.erase(std::remove(gens.begin(), gens.end(), Exp{0, 0}), gens.end());
    // Euclid on the first coordinate.
    while (true) {
      std::vector<Exp> nz;
      for (const auto& g : gens)
        if (g[0] != 0) nz.push_back(g);
      if (nz.size() <= 1) break;
      std::sort(nz.begin(), nz.end(), [](const Exp& a, const Exp& b) { return std::abs(a[0]) < std::abs(b[0]); });
      Exp p = nz[0];
      std::vector<Exp> next{p};
      for (std::size_t i = 1; i < nz.size(); ++i) {
        int q = nz[i][0] / p[0];
        Exp r = nz[i] - Exp{q * p[0], q * p[1]};
        if (r != Exp{0, 0}) next.push_back(r);
      }
      for (const auto& g : gens)
        if (g[0] == 0) next.push_back(g);
      gens = next;
    }
    int c = 0;
    for (const auto& g : gens) {
      if (g[0] != 0) {
        first_ = g[0] > 0 ? g : Exp{-g[0], -g[1]};
        has_first_ = true;
      } else {
        c = std::gcd(c, std::abs(g[1]));
      }
    }
    c_ = c;
  }

  Exp reduce(Exp v) const {
    if (has_first_) {
      int q = floor_div(v[0], first_[0]);
      v = v - Exp{q * first_[0], q * first_[1]};
    }
    if (c_ > 0) v[1] = ((v[1] % c_) + c_) % c_;
    return v;
  }
  bool contains(Exp v) const { return reduce(v) == Exp{0, 0}; }
  bool trivial() const { return !has_first_ && c_ == 0; }

 private:
  static int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
  bool has_first_ = false;
  Exp first_{0, 0};
  int c_ = 0;
};

}  // namespace

MedialData build_medial(const Network& net) {
  if (!net.has_embedding()) throw NetworkError(ErrorKind::Domain, "medial graph needs an embedding");
  MedialData md;
  md.medial_vertices = net.num_edges();
  const int n = static_cast<int>(net.nodes.size());
  const int ends = 2 * net.num_darts();
  // Cut corners: corner id -> stub for each of its two ends.
  std::vector<int> stub_of_end(ends, -1);
  if (n > 0 && net.surface != Surface::Torus) {
    FaceData fd = trace_faces(net);
    std::vector<int> corner = boundary_corners(net, fd);
    for (int k = 0; k < n; ++k) {
      int x = corner[k];
      stub_of_end[L(x)] = (2 * k - 1 + 2 * n) % (2 * n);
      stub_of_end[R(net.sigma(x))] = 2 * k;
    }
    md.stub_pair.assign(2 * n, -1);
  }
  auto other_end_of_corner = [&](int end) { return end % 2 == 0 ? R(net.sigma(end / 2)) : L(net.sigma_inv(end / 2)); };
  std::vector<char> seen(ends, 0);
  // Walks from `start` (an end where the strand arrives at a medial vertex).
  auto walk = [&](int start, bool from_stub) {
    Strand s;
    Exp p{0, 0};
    int end = start;
    while (true) {
      const int x = end / 2, type = end % 2;
      const int out = type == 0 ? L(Network::rev(x)) : R(Network::rev(x));
      seen[end] = seen[out] = 1;
      StrandPass ps;
      ps.edge = Network::edge_of(x);
      ps.type = type;
      ps.dart = x;
      ps.offset = x % 2 == 0 ? p : p + net.weight(x);
      s.passes.push_back(ps);
      p = p + net.weight(x);
      if (stub_of_end[out] >= 0) {
        s.stub_end = stub_of_end[out];
        break;
      }
      end = other_end_of_corner(out);
      if (!from_stub && end == start) {
        s.closed = true;
        s.homology = p;
        break;
      }
    }
    if (from_stub) s.stub_start = stub_of_end[start];
    return s;
  };
  for (int stub = 0; stub < static_cast<int>(md.stub_pair.size()); ++stub) {
    int start = static_cast<int>(std::find(stub_of_end.begin(), stub_of_end.end(), stub) - stub_of_end.begin());
    if (seen[start]) continue;
    Strand s = walk(start, true);
    md.stub_pair[s.stub_start] = s.stub_end;
    md.stub_pair[s.stub_end] = s.stub_start;
    md.strands.push_back(std::move(s));
  }
  for (int e = 0; e < ends; ++e)
    if (!seen[e]) md.strands.push_back(walk(e, false));
  return md;
}

std::vector<int> stub_involution(const Network& net) {
  if (net.surface != Surface::Disk) throw NetworkError(ErrorKind::Domain, "stub involution is defined for disk networks");
  return build_medial(net).stub_pair;
}

Minimality is_minimal(const Network& net) { return is_minimal(net, build_medial(net)); }

Minimality is_minimal(const Network& net, const MedialData& md) {
  if (net.surface == Surface::Pants) throw NetworkError(ErrorKind::Domain, "minimality is decided on the disk, annulus and torus");
  Minimality res;
  auto fail = [&](std::string why, int a, int b) {
    res.minimal = false;
    res.reason = std::move(why);
    res.strand_a = a;
    res.strand_b = b;
    return res;
  };
  const int ns = static_cast<int>(md.strands.size());
  for (int s = 0; s < ns; ++s)
    if (md.strands[s].closed && md.strands[s].homology == Exp{0, 0}) return fail("closed loop", s, s);
  auto period = [&](int s) {
    const Strand& st = md.strands[s];
    return st.closed ? std::vector<Exp>{st.homology} : std::vector<Exp>{};
  };
  for (int s = 0; s < ns; ++s)
    for (int t = s; t < ns; ++t) {
      std::vector<Exp> gens = period(s);
      for (const Exp& g : period(t)) gens.push_back(g);
      Lattice sum(gens);
      const bool parallel = md.strands[s].closed && md.strands[t].closed &&
                            md.strands[s].homology[0] * md.strands[t].homology[1] ==
                                md.strands[s].homology[1] * md.strands[t].homology[0];
      std::map<Exp, int> per_class;
      for (const auto& a : md.strands[s].passes)
        for (const auto& b : md.strands[t].passes) {
          if (a.edge != b.edge || a.type == b.type) continue;
          if (s == t && a.type != 0) continue;  // each base self-crossing once
          Exp diff = a.offset - b.offset;
          if (s == t) {
            Lattice own(period(s));
            if (own.contains(diff)) return fail("self-intersection", s, s);
            if (md.strands[s].closed) return fail("lifts of a closed strand cross infinitely often", s, s);
            // Open strand against its own translate by +-diff.
            Exp key = diff;
            if (key < Exp{0, 0} - key) key = Exp{0, 0} - key;
            if (++per_class[key] > 1) return fail("two lifts of one strand cross twice", s, s);
          } else {
            if (parallel) return fail("parallel lifts cross infinitely often", s, t);
            if (++per_class[sum.reduce(diff)] > 1) return fail("two strands cross twice", s, t);
          }
        }
    }
  return res;
}

Involution well_connected_involution(int n) {
  Involution p(2 * n);
  for (int i = 0; i < 2 * n; ++i) p[i] = (i + n) % (2 * n);
  return p;
}

bool is_fixed_point_free_involution(const Involution& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || p[i] >= static_cast<int>(p.size()) || p[i] == static_cast<int>(i) || p[p[i]] != static_cast<int>(i))
      return false;
  return true;
}

int crossing_number(const Involution& p) {
  const int m = static_cast<int>(p.size());
  int c = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int k = p[i], l = p[j];
      if (i < j && j < k && k < l) ++c;
    }
  return c;
}

bool is_boundary_crossing(const Involution& p, int site) {
  const int m = static_cast<int>(p.size());
  int a = site % m, b = (site + 1) % m;
  if (p[a] == b) return false;
  auto inside = [&](int x, int lo, int hi) {  // strictly between lo and hi going up (circular)
    int d = ((x - lo) % m + m) % m, w = ((hi - lo) % m + m) % m;
    return d > 0 && d < w;
  };
  // Chord (a, p[a]) separates b from p[b]?
  return inside(b, a, p[a]) != inside(p[b], a, p[a]);
}

Involution resolve_boundary_crossing(const Involution& p, int site) {
  if (!is_boundary_crossing(p, site))
    throw NetworkError(ErrorKind::Domain, "no boundary-adjacent crossing at site " + std::to_string(site + 1));
  const int m = static_cast<int>(p.size());
  int a = site % m, b = (site + 1) % m;
  auto sw = [&](int x) { return x == a ? b : x == b ? a : x; };
  Involution q(m);
  for (int i = 0; i < m; ++i) q[sw(i)] = sw(p[i]);
  return q;
}

std::string involution_str(const Involution& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (static_cast<int>(i) < p[i]) s += "(" + std::to_string(i + 1) + " " + std::to_string(p[i] + 1) + ")";
  return s;
}

HasseDiagram hasse_diagram(int n) {
  if (n < 1 || n > 5) throw NetworkError(ErrorKind::Domain, "hasse_diagram supports 1 <= n <= 5");
  HasseDiagram h;
  const int m = 2 * n;
  Involution cur(m, -1);
  std::vector<Involution> all;
  std::function<void()> go = [&] {
    int i = static_cast<int>(std::find(cur.begin(), cur.end(), -1) - cur.begin());
    if (i == m) {
      all.push_back(cur);
      return;
    }
    for (int j = i + 1; j < m; ++j)
      if (cur[j] < 0) {
        cur[i] = j, cur[j] = i;
        go();
        cur[i] = cur[j] = -1;
      }
  };
  go();
  std::sort(all.begin(), all.end(), [](const Involution& a, const Involution& b) {
    int ca = crossing_number(a), cb = crossing_number(b);
    return ca != cb ? ca < cb : a < b;
  });
  h.elements = all;
  std::map<Involution, int> index;
  for (std::size_t i = 0; i < all.size(); ++i) {
    index[all[i]] = static_cast<int>(i);
    h.grade.push_back(crossing_number(all[i]));
  }
  h.down.assign(all.size(), {});
  std::vector<char> has_up(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (int site = 0; site < m; ++site) {
      if (!is_boundary_crossing(all[i], site)) continue;
      int j = index.at(resolve_boundary_crossing(all[i], site));
      if (std::find(h.down[i].begin(), h.down[i].end(), j) == h.down[i].end()) h.down[i].push_back(j);
      has_up[j] = 1;
    }
    std::sort(h.down[i].begin(), h.down[i].end());
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!has_up[i]) h.maxima.push_back(static_cast<int>(i));
  return h;
}

}  // namespace ohmlab
