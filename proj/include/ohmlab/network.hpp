#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ohmlab/laurent.hpp"
#include "ohmlab/matrix.hpp"
#include "ohmlab/rational.hpp"

namespace ohmlab {

enum class Surface { Disk, Annulus, Torus, Pants };

std::string surface_name(Surface s);
Surface parse_surface(const std::string& s);

enum class ErrorKind { Schema, Disconnected, NonCocycle, Embedding, Cap, Domain };

// Every rejected input carries one of the kinds above; the CLI maps all of
// them to exit code 1.
class NetworkError : public InputError {
 public:
  NetworkError(ErrorKind k, const std::string& what) : InputError(what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Edge {
  int id = 0;  // external name; darts are "e<id>+" (u -> v) and "e<id>-"
  int u = 0, v = 0;
  Rational c = 1;
  Exp h{0, 0};                // homology weight of the dart u -> v
  std::optional<RatMatrix> t;  // SL2 transport of the dart u -> v
};

// Darts are indexed 2k (edge k, u -> v) and 2k+1 (edge k, v -> u), where k is
// the position in `edges`.
class Network {
 public:
  Surface surface = Surface::Disk;
  int num_vertices = 0;
  std::vector<int> nodes;  // boundary vertices in counterclockwise order
  std::vector<Edge> edges;
  // Darts leaving each vertex in counterclockwise order; empty when the
  // network carries no embedding.
  std::vector<std::vector<int>> rotation;
  std::optional<int> outer;  // disk: a dart of the outer face

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_darts() const { return 2 * num_edges(); }
  bool has_embedding() const { return !rotation.empty(); }

  static int edge_of(int d) { return d >> 1; }
  static int rev(int d) { return d ^ 1; }
  int tail(int d) const { return d & 1 ? edges[d >> 1].v : edges[d >> 1].u; }
  int head(int d) const { return d & 1 ? edges[d >> 1].u : edges[d >> 1].v; }
  Exp weight(int d) const {
    const Exp& h = edges[d >> 1].h;
    return d & 1 ? Exp{-h[0], -h[1]} : h;
  }
  const Rational& conductance(int d) const { return edges[d >> 1].c; }
  std::string dart_name(int d) const;
  int parse_dart(const std::string& name) const;

  bool is_node(int v) const;
  int node_index(int v) const;  // position in `nodes`, or -1
  std::vector<int> internal_vertices() const;
  std::vector<std::vector<int>> darts_out() const;  // unordered incidence
  int degree(int v) const;
  int next_edge_id() const;
  bool connected() const;

  // Next dart counterclockwise at tail(d).
  int sigma(int d) const;
  int sigma_inv(int d) const;
  // Face successor; faces lie to the right of their darts, so the outer face
  // of a plane drawing is walked counterclockwise.
  int face_next(int d) const { return sigma(rev(d)); }

  // Structural checks; throws NetworkError.  Connectivity is required only
  // when `require_connected`.
  void validate(bool require_connected = true) const;

  // Remove vertices with no incident edges and renumber.
  void compact_vertices();
};

// Face structure of an embedded network.
struct FaceData {
  std::vector<std::vector<int>> faces;  // dart cycles under face_next
  std::vector<int> face_of;             // dart -> face index
  std::vector<Exp> weight;              // total homology weight per face
  int outer = -1;                       // disk: outer face index
  std::vector<int> holes;               // annulus / pants: faces with nonzero weight
};

FaceData trace_faces(const Network& net);

// Checks the Euler characteristic, face weights (cocycle condition) and, on
// the disk, that the nodes occur counterclockwise on the outer face.
// Throws NetworkError.
void validate_embedding(const Network& net);

// Corner C(x) is the angle between dart x and sigma(x) at tail(x).  For each
// node, the boundary corner where its stubs attach (disk and annulus).
std::vector<int> boundary_corners(const Network& net, const FaceData& fd);

// Edge subsets are bit masks over edge positions (at most 64 edges).
using EdgeMask = unsigned long long;

// Components of the spanning subgraph (all vertices, edges in `mask`).
struct Components {
  std::vector<int> comp;  // vertex -> component
  int count = 0;
  std::vector<int> vertices_in, edges_in;  // per component
};
Components components(const Network& net, EdgeMask mask);

// Homology weight of a closed walk given as a dart sequence.
Exp walk_weight(const Network& net, const std::vector<int>& darts);

// The unique cycle (as a dart walk) of a unicyclic edge set restricted to one
// component; `edges` lists the component's edges.
std::vector<int> unicycle_walk(const Network& net, const std::vector<int>& edges);

// Dart path from a to b inside a tree given by edge list; empty if a == b.
std::vector<int> tree_path(const Network& net, const std::vector<int>& edges, int a, int b);

}  // namespace ohmlab
