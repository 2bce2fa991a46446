#pragma once

#include <vector>

#include "ohmlab/network.hpp"
#include "ohmlab/rng.hpp"

namespace ohmlab {

// Y network: nodes 0,1,2 joined to the internal vertex 3 with c1,c2,c3.
Network y_network(const Rational& c1, const Rational& c2, const Rational& c3);

// Well-connected disk network with n nodes and n(n-1)/2 edges, read off the
// wiring diagram of the bubble-sort word for the longest permutation.
// Gamma_3 is the Y network.  Conductances default to 1.  2 <= n <= 8.
Network gamma_network(int n, const std::vector<Rational>& c = {});

// Cylinder grid H_{m,n}: m concentric rings of n vertices (ring edges carry
// the zipper weight on the step from position n-1 to 0) joined radially.
// With `ring_nodes`, rings 1 and m are boundary nodes.  1 <= m,n <= 8.
Network cylinder(int m, int n, bool ring_nodes = false);

// Path v_0..v_{n-1} with conductances a (n-1 of them) and one
// noncontractible loop of conductance b_i at every vertex.
Network string_of_loops(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Torus grid with m vertices per row (period of z1) and n rows (period of
// z2), all conductances c.  Vertex (x,y) has index x + m y.
Network torus_grid(int m, int n, const Rational& c = 1);

// The 2x2 torus grid with conductance 3 on the interior horizontal edge of
// row 0.
Network torus_fixture();

// Complete graph without embedding, no nodes.
Network complete_graph(int n, const Rational& c = 1);

// Three edges between two vertices with weights (0,0), (1,0), (1,1): a
// pair of pants whose holes are the three faces.
Network pants_theta(const Rational& c0, const Rational& c1, const Rational& c2);

// K4 drawn with a central vertex; holes in faces 012, 023 and the outer face.
Network pants_k4(const std::vector<Rational>& c);

// w x h grid in the disk; the boundary vertices are the nodes,
// counterclockwise from (0,0).  Vertex (x,y) has index x + w y.
Network grid_disk(int w, int h, const Rational& c = 1);

// Path v_0 - ... - v_k with the given conductances; the two ends are nodes.
Network path_network(const std::vector<Rational>& c);

// Random connected circular planar network: `nodes` boundary vertices,
// `interior` others, at most `max_edges` edges, no loops or multi-edges,
// conductances p/q with 1 <= p,q <= 4.
Network random_disk_network(Rng& rng, int nodes, int interior, int max_edges);

// Random connected multigraph without embedding; on the annulus/torus every
// edge gets a random weight with entries in {-1,0,1} (second entry 0 on the
// annulus).  Loops allowed when `loops`.
Network random_weighted_graph(Rng& rng, Surface s, int vertices, int edges, bool loops = false);

// Inserts an edge from corner C(x) to corner C(y) (both darts present) and
// returns the new dart tail(x) -> tail(y).  When y < 0 the edge goes to the
// isolated vertex `to`.  The corners must lie on a common face.
int insert_edge(Network& net, int x, int y, const Rational& c, int to = -1);

// Deletes the edge at position k from `edges` and the rotation; later dart
// indices shift down by 2.  Vertices are kept.
void remove_edge(Network& net, int k);

// Builder used by the families and by generators.
class NetworkBuilder {
 public:
  NetworkBuilder(Surface s, int vertices) {
    net_.surface = s;
    net_.num_vertices = vertices;
    net_.rotation.assign(vertices, {});
  }
  // Returns the dart u -> v.
  int add_edge(int u, int v, const Rational& c, Exp h = {0, 0}) {
    Edge e;
    e.id = net_.num_edges();
    e.u = u;
    e.v = v;
    e.c = c;
    e.h = h;
    net_.edges.push_back(e);
    return 2 * (net_.num_edges() - 1);
  }
  void set_rotation(int v, std::vector<int> darts) { net_.rotation[v] = std::move(darts); }
  void set_nodes(std::vector<int> nodes) { net_.nodes = std::move(nodes); }
  void drop_embedding() { net_.rotation.clear(); }
  Network build() const;  // validates

 private:
  Network net_;
};

}  // namespace ohmlab
