#include "ohmlab/laplacian.hpp"

#include <algorithm>
#include <queue>

namespace ohmlab {

namespace {

using Idx = std::vector<std::size_t>;

Idx to_idx(const std::vector<int>& v) { return Idx(v.begin(), v.end()); }

template <class T, class Phi>
Matrix<T> assemble(const Network& net, Phi phi) {
  Matrix<T> m(net.num_vertices, net.num_vertices);
  for (int d = 0; d < net.num_darts(); ++d) {
    const int u = net.tail(d), v = net.head(d);
    T c(net.conductance(d));
    m(u, u) = m(u, u) + c;
    m(u, v) = m(u, v) - c * phi(d);
  }
  return m;
}

std::vector<int> complement(const Network& net, const std::vector<int>& b) {
  std::vector<char> in(net.num_vertices, 0);
  for (int v : b) {
    if (v < 0 || v >= net.num_vertices) throw NetworkError(ErrorKind::Domain, "boundary vertex out of range");
    in[v] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < net.num_vertices; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

}  // namespace

RatMatrix laplacian(const Network& net) {
  return assemble<Rational>(net, [](int) { return Rational(1); });
}

Matrix<LaurentPoly> line_laplacian(const Network& net) {
  return assemble<LaurentPoly>(net, [&](int d) { return LaurentPoly::monomial(net.weight(d)); });
}

Matrix<GaussQ> unitary_laplacian(const Network& net, const GaussQ& u1, const GaussQ& u2) {
  if (u1.norm2() != 1 || u2.norm2() != 1)
    throw NetworkError(ErrorKind::Domain, "unitary connection needs |u1| = |u2| = 1");
  return assemble<GaussQ>(net, [&](int d) {
    Exp h = net.weight(d);
    return gauss_pow(u1, h[0]) * gauss_pow(u2, h[1]);
  });
}

RatMatrix adjugate2(const RatMatrix& m) {
  RatMatrix a(2, 2);
  a(0, 0) = m(1, 1);
  a(0, 1) = -m(0, 1);
  a(1, 0) = -m(1, 0);
  a(1, 1) = m(0, 0);
  return a;
}

RatMatrix sl2_laplacian(const Network& net) {
  const int n = net.num_vertices;
  RatMatrix m(2 * n, 2 * n);
  for (const auto& e : net.edges) {
    if (!e.t) throw NetworkError(ErrorKind::Domain, "edge " + std::to_string(e.id) + " has no SL2 transport");
    const RatMatrix& t = *e.t;
    if (t.rows() != 2 || t.cols() != 2 || t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0) != 1)
      throw NetworkError(ErrorKind::Domain, "edge " + std::to_string(e.id) + " transport is not in SL2");
  }
  for (int d = 0; d < net.num_darts(); ++d) {
    const int u = net.tail(d), v = net.head(d);
    const Edge& e = net.edges[Network::edge_of(d)];
    RatMatrix t = d & 1 ? adjugate2(*e.t) : *e.t;
    for (int i = 0; i < 2; ++i) {
      m(2 * u + i, 2 * u + i) += e.c;
      for (int j = 0; j < 2; ++j) m(2 * u + i, 2 * v + j) -= e.c * t(i, j);
    }
  }
  return m;
}

void set_sl2_transports(Network& net, const RatMatrix& a, const RatMatrix& b) {
  auto power = [](const RatMatrix& x, int k) {
    RatMatrix base = k < 0 ? adjugate2(x) : x, r = RatMatrix::identity(2);
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
  };
  for (auto& e : net.edges) e.t = power(a, e.h[0]) * power(b, e.h[1]);
}

bool is_self_dual(const RatMatrix& m) {
  const std::size_t n = m.rows() / 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatMatrix bij = m.submatrix({2 * i, 2 * i + 1}, {2 * j, 2 * j + 1});
      RatMatrix bji = m.submatrix({2 * j, 2 * j + 1}, {2 * i, 2 * i + 1});
      if (bij != adjugate2(bji)) return false;
    }
  return true;
}

bool is_hermitian(const Matrix<GaussQ>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != m(j, i).conj()) return false;
  return true;
}

RatMatrix dirichlet_submatrix(const Network& net, const std::vector<int>& boundary) {
  if (boundary.empty()) throw NetworkError(ErrorKind::Domain, "Dirichlet problem needs a nonempty boundary");
  Idx in = to_idx(complement(net, boundary));
  return laplacian(net).submatrix(in, in);
}

std::vector<Rational> harmonic_extension(const Network& net, const std::vector<int>& boundary,
                                         const std::vector<Rational>& u) {
  if (boundary.empty()) throw NetworkError(ErrorKind::Domain, "Dirichlet problem needs a nonempty boundary");
  if (u.size() != boundary.size()) throw NetworkError(ErrorKind::Domain, "one boundary value per boundary vertex");
  std::vector<int> inner = complement(net, boundary);
  RatMatrix lap = laplacian(net);
  std::vector<Rational> f(net.num_vertices);
  for (std::size_t i = 0; i < boundary.size(); ++i) f[boundary[i]] = u[i];
  if (inner.empty()) return f;
  // C f_I = -B^T u
  RatMatrix c = lap.submatrix(to_idx(inner), to_idx(inner));
  RatMatrix rhs(inner.size(), 1);
  for (std::size_t i = 0; i < inner.size(); ++i)
    for (std::size_t k = 0; k < boundary.size(); ++k) rhs(i, 0) -= lap(inner[i], boundary[k]) * u[k];
  RatMatrix x = solve(c, rhs);
  for (std::size_t i = 0; i < inner.size(); ++i) f[inner[i]] = x(i, 0);
  return f;
}

RatMatrix response_matrix(const Network& net) {
  if (net.nodes.empty()) throw NetworkError(ErrorKind::Domain, "response matrix needs nodes");
  return -schur_complement(laplacian(net), to_idx(net.nodes), to_idx(net.internal_vertices()));
}

Matrix<RatFunc> response_matrix_line(const Network& net) {
  if (net.nodes.empty()) throw NetworkError(ErrorKind::Domain, "response matrix needs nodes");
  for (const auto& e : net.edges)
    if (e.h[1] != 0) throw NetworkError(ErrorKind::Domain, "line response is univariate; edge uses z2");
  Matrix<RatFunc> lap = line_laplacian(net).map([](const LaurentPoly& p) { return RatFunc::from_laurent(p); });
  return -schur_complement(lap, to_idx(net.nodes), to_idx(net.internal_vertices()));
}

LaurentPoly interior_determinant(const Network& net) {
  Idx in = to_idx(net.internal_vertices());
  return det_bareiss(line_laplacian(net).submatrix(in, in));
}

LaurentPoly response_minor_numerator(const Network& net, const std::vector<int>& rows,
                                     const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw NetworkError(ErrorKind::Domain, "minor needs |R| = |S|");
  Idx r, c;
  for (int i : rows) r.push_back(net.nodes.at(i));
  for (int j : cols) c.push_back(net.nodes.at(j));
  for (int v : net.internal_vertices()) {
    r.push_back(v);
    c.push_back(v);
  }
  LaurentPoly d = det_bareiss(line_laplacian(net).submatrix(r, c));
  return rows.size() % 2 ? LaurentPoly() - d : d;
}

Rational dirichlet_energy(const Network& net, const std::vector<Rational>& f) {
  if (static_cast<int>(f.size()) != net.num_vertices) throw NetworkError(ErrorKind::Domain, "one value per vertex");
  Rational s = 0;
  for (const auto& e : net.edges) {
    Rational d = f[e.u] - f[e.v];
    s += e.c * d * d;
  }
  return s;
}

ConjugateResult harmonic_conjugate(const Network& net, const std::vector<Rational>& f, int anchor) {
  if (net.surface != Surface::Disk || !net.has_embedding())
    throw NetworkError(ErrorKind::Domain, "harmonic conjugate needs a disk embedding");
  if (static_cast<int>(f.size()) != net.num_vertices) throw NetworkError(ErrorKind::Domain, "one value per vertex");
  RatMatrix lap = laplacian(net);
  for (int v : net.internal_vertices()) {
    Rational s = 0;
    for (int w = 0; w < net.num_vertices; ++w) s += lap(v, w) * f[w];
    if (s != 0) throw NetworkError(ErrorKind::Domain, "potential is not harmonic at interior vertex " + std::to_string(v));
  }
  FaceData fd = trace_faces(net);
  ConjugateResult res;
  res.right.assign(net.num_darts(), -1);
  std::vector<int> ext(fd.faces.size(), -1);
  for (int i = 0; i < static_cast<int>(fd.faces.size()); ++i)
    if (i != fd.outer) {
      ext[i] = static_cast<int>(res.inner_faces.size());
      res.inner_faces.push_back(i);
    }
  const int inner = static_cast<int>(res.inner_faces.size());
  const int n = static_cast<int>(net.nodes.size());
  const auto& outer = fd.faces[fd.outer];
  if (n == 0) {
    for (int d : outer) res.right[d] = inner;
  } else {
    std::vector<int> corner = boundary_corners(net, fd);
    // Arc k starts just after node k's corner and ends at the dart entering node k+1.
    std::vector<int> arc_start(outer.size(), -1);
    for (int k = 0; k < n; ++k)
      for (std::size_t i = 0; i < outer.size(); ++i)
        if (outer[i] == Network::rev(corner[k])) arc_start[(i + 1) % outer.size()] = k;
    std::size_t i0 = 0;
    while (arc_start[i0] < 0) ++i0;
    int cur = -1;
    for (std::size_t s = 0; s < outer.size(); ++s) {
      std::size_t i = (i0 + s) % outer.size();
      if (arc_start[i] >= 0) cur = arc_start[i];
      res.right[outer[i]] = inner + cur;
    }
  }
  for (int d = 0; d < net.num_darts(); ++d)
    if (res.right[d] < 0) res.right[d] = ext[fd.face_of[d]];
  res.left.resize(net.num_darts());
  for (int d = 0; d < net.num_darts(); ++d) res.left[d] = res.right[Network::rev(d)];

  const int total = inner + std::max(n, 1);
  if (anchor < 0 || anchor >= total) throw NetworkError(ErrorKind::Domain, "anchor face out of range");
  auto jump = [&](int d) -> Rational { return net.conductance(d) * (f[net.head(d)] - f[net.tail(d)]); };
  std::vector<std::vector<int>> by_right(total);
  for (int d = 0; d < net.num_darts(); ++d) by_right[res.right[d]].push_back(d);
  std::vector<char> seen(total, 0);
  res.g.assign(total, 0);
  std::queue<int> q;
  q.push(anchor);
  seen[anchor] = 1;
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int d : by_right[a]) {
      int b = res.left[d];
      if (!seen[b]) {
        seen[b] = 1;
        res.g[b] = res.g[a] + jump(d);
        q.push(b);
      }
    }
  }
  for (int d = 0; d < net.num_darts(); ++d)
    if (res.g[res.left[d]] - res.g[res.right[d]] != jump(d))
      throw NetworkError(ErrorKind::Domain, "conjugate is path dependent around vertex " + std::to_string(net.tail(d)));
  return res;
}

TransferData greens_and_transfer(const Network& net, int ground) {
  net.validate(true);
  const int nv = net.num_vertices;
  if (ground < 0 || ground >= nv) throw NetworkError(ErrorKind::Domain, "ground vertex out of range");
  std::vector<int> rest;
  for (int v = 0; v < nv; ++v)
    if (v != ground) rest.push_back(v);
  RatMatrix inv = inverse(laplacian(net).submatrix(to_idx(rest), to_idx(rest)));
  TransferData t;
  t.green = RatMatrix(nv, nv);
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = 0; j < rest.size(); ++j) t.green(rest[i], rest[j]) = inv(i, j);
  const int m = net.num_edges();
  t.green_difference = RatMatrix(m, m);
  t.transfer = RatMatrix(m, m);
  const RatMatrix& g = t.green;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const Edge &e = net.edges[a], &f = net.edges[b];
      Rational gd = g(e.u, f.u) - g(e.u, f.v) - g(e.v, f.u) + g(e.v, f.v);
      t.green_difference(a, b) = gd;
      t.transfer(a, b) = f.c * gd;
    }
  return t;
}

}  // namespace ohmlab
