#include <algorithm>

#include "doctest.h"
#include "ohmlab/families.hpp"
#include "ohmlab/io.hpp"

using namespace ohmlab;

namespace {

int euler(const Network& n) {
  return n.num_vertices - n.num_edges() + static_cast<int>(trace_faces(n).faces.size());
}

ErrorKind kind_of(const Json& j) {
  try {
    network_from_json(j);
  } catch (const NetworkError& e) {
    return e.kind();
  }
  FAIL("input was accepted");
  return ErrorKind::Schema;
}

Json triangle_json() {
  return Json::parse(R"({
    "surface": "disk", "vertices": 3, "nodes": [0, 1, 2],
    "edges": [{"id": 0, "u": 0, "v": 1, "c": "1"},
              {"id": 1, "u": 1, "v": 2, "c": "2"},
              {"id": 2, "u": 2, "v": 0, "c": "1/3"}],
    "rotation": {"0": ["e0+", "e2-"], "1": ["e1+", "e0-"], "2": ["e2+", "e1-"]}
  })");
}

}  // namespace

TEST_CASE("faces of small embeddings") {
  Network tri = network_from_json(triangle_json());
  CHECK(trace_faces(tri).faces.size() == 2);
  CHECK(euler(tri) == 2);

  Network t = torus_grid(2, 2);
  CHECK(trace_faces(t).faces.size() == 4);
  CHECK(euler(t) == 0);
  Network loop = torus_grid(1, 1);
  CHECK(loop.num_edges() == 2);
  CHECK(trace_faces(loop).faces.size() == 1);

  Network h = cylinder(2, 3);
  CHECK(h.num_edges() == 9);
  CHECK(trace_faces(h).holes.size() == 2);
  CHECK(trace_faces(pants_theta(1, 2, 3)).holes.size() == 3);
  CHECK(trace_faces(pants_k4({1, 1, 1, 1, 1, 1})).holes.size() == 3);
}

TEST_CASE("gamma networks") {
  for (int n = 2; n <= 8; ++n) {
    Network g = gamma_network(n);
    CHECK(g.num_edges() == n * (n - 1) / 2);
    CHECK(static_cast<int>(g.nodes.size()) == n);
    CHECK(euler(g) == 2);
  }
  Network g3 = gamma_network(3);
  CHECK(g3.num_vertices == 4);
  CHECK(g3.internal_vertices().size() == 1);
}

TEST_CASE("json round trip is canonical") {
  for (const Network& n : {network_from_json(triangle_json()), torus_fixture(), gamma_network(5),
                           cylinder(3, 4, true), string_of_loops({2}, {1, 3})}) {
    Json a = network_to_json(n);
    Json b = network_to_json(network_from_json(a));
    CHECK(canonical_dump(a) == canonical_dump(b));
  }
}

TEST_CASE("invalid inputs are rejected by kind") {
  Json j = triangle_json();
  j["extra"] = 1;
  CHECK(kind_of(j) == ErrorKind::Schema);

  j = triangle_json();
  j["edges"][0]["c"] = "-1";
  CHECK(kind_of(j) == ErrorKind::Schema);

  j = triangle_json();
  j["edges"][0]["c"] = "1/0";
  CHECK(kind_of(j) == ErrorKind::Schema);

  j = triangle_json();
  j["vertices"] = 4;
  CHECK(kind_of(j) == ErrorKind::Disconnected);

  j = triangle_json();
  j["surface"] = "annulus";
  j["edges"][0]["h"] = {1};
  j["edges"][1]["h"] = {1};
  j.erase("nodes");
  CHECK(kind_of(j) == ErrorKind::NonCocycle);

  j = triangle_json();
  j["rotation"]["0"] = {"e0+"};
  CHECK(kind_of(j) == ErrorKind::Schema);

  // A torus rotation system read as a disk has the wrong Euler characteristic.
  j = network_to_json(torus_grid(2, 2));
  j["surface"] = "disk";
  for (auto& e : j["edges"]) e.erase("h");
  CHECK(kind_of(j) == ErrorKind::Embedding);

  j = network_to_json(y_network(1, 2, 3));
  j["nodes"] = {0, 2, 1};
  CHECK(kind_of(j) == ErrorKind::Embedding);
}

TEST_CASE("random disk networks are valid and respect the edge cap") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.range(1, 5), in = rng.range(0, 3);
    if (n + in < 2) in = 1;
    int cap = std::max(n + in - 1, rng.range(n + in, 12));
    Network net = random_disk_network(rng, n, in, cap);
    CHECK(net.num_edges() <= cap);
    CHECK(net.num_vertices == n + in);
    CHECK_NOTHROW(validate_embedding(net));
    CHECK(euler(net) == 2);
    Json a = network_to_json(net);
    CHECK(canonical_dump(network_to_json(network_from_json(a))) == canonical_dump(a));
  }
}

TEST_CASE("grid and path families") {
  Network g = grid_disk(3, 3);
  CHECK(g.nodes.size() == 8);
  CHECK(g.internal_vertices() == std::vector<int>{4});
  CHECK(trace_faces(g).faces.size() == 5);
  Network p = path_network({1, 1});
  CHECK(p.nodes == std::vector<int>{0, 2});
}
