#include "ohmlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ohmlab {

namespace {

[[noreturn]] void schema(const std::string& m) { throw NetworkError(ErrorKind::Schema, m); }

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  schema("expected a rational written as \"p/q\"");
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

RatMatrix ratmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) schema("expected a matrix");
  RatMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) schema("ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  const bool two = p.uses_second_var();
  for (const auto& [e, c] : p.terms()) {
    Json ex = two ? Json::array({e[0], e[1]}) : Json::array({e[0]});
    terms.push_back({{"c", to_string(c)}, {"e", ex}});
  }
  return {{"terms", terms}, {"vars", two ? 2 : 1}};
}

LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms")) schema("expected a Laurent polynomial");
  LaurentPoly p;
  for (const auto& t : j["terms"]) {
    const Json& e = t.at("e");
    Exp x{as_int(e.at(0), "exponent"), e.size() > 1 ? as_int(e.at(1), "exponent") : 0};
    p += LaurentPoly::monomial(x, rational_from_json(t.at("c")));
  }
  return p;
}

Json to_json(const RatFunc& f) {
  return {{"den", to_json(f.den().to_laurent())}, {"num", to_json(f.num().to_laurent())}};
}

Json to_json(const Matrix<RatFunc>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const Matrix<LaurentPoly>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

namespace {

Network network_from_json_impl(const Json& j) {
  if (!j.is_object()) schema("network document must be a JSON object");
  static const std::set<std::string> known{"surface", "vertices", "nodes", "edges", "rotation", "outer", "name"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) schema("unknown field '" + k + "'");
  for (const char* k : {"surface", "vertices", "edges"})
    if (!j.contains(k)) schema(std::string("missing field '") + k + "'");
  Network net;
  if (!j["surface"].is_string()) schema("surface must be a string");
  net.surface = parse_surface(j["surface"].get<std::string>());
  net.num_vertices = as_int(j["vertices"], "vertices");
  if (net.num_vertices <= 0) schema("vertices must be positive");
  if (j.contains("nodes")) {
    if (!j["nodes"].is_array()) schema("nodes must be an array");
    for (const auto& v : j["nodes"]) net.nodes.push_back(as_int(v, "node"));
  }
  if (!j["edges"].is_array()) schema("edges must be an array");
  static const std::set<std::string> ekeys{"id", "u", "v", "c", "h", "t"};
  for (const auto& e : j["edges"]) {
    if (!e.is_object()) schema("edge must be an object");
    for (const auto& [k, v] : e.items())
      if (!ekeys.count(k)) schema("unknown edge field '" + k + "'");
    for (const char* k : {"id", "u", "v", "c"})
      if (!e.contains(k)) schema(std::string("edge missing field '") + k + "'");
    Edge ed;
    ed.id = as_int(e["id"], "edge id");
    ed.u = as_int(e["u"], "edge endpoint");
    ed.v = as_int(e["v"], "edge endpoint");
    ed.c = rational_from_json(e["c"]);
    if (e.contains("h")) {
      const Json& h = e["h"];
      if (!h.is_array() || h.empty() || h.size() > 2) schema("h must have one or two integers");
      ed.h = {as_int(h[0], "h"), h.size() > 1 ? as_int(h[1], "h") : 0};
    }
    if (e.contains("t")) ed.t = ratmatrix_from_json(e["t"]);
    net.edges.push_back(ed);
  }
  net.validate(false);
  if (j.contains("rotation")) {
    const Json& r = j["rotation"];
    if (!r.is_object()) schema("rotation must be an object keyed by vertex");
    net.rotation.assign(net.num_vertices, {});
    for (const auto& [k, darts] : r.items()) {
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(k, &used);
        if (used != k.size()) v = -1;
      } catch (const std::exception&) {
      }
      if (v < 0 || v >= net.num_vertices) schema("rotation key '" + k + "' is not a vertex");
      if (!darts.is_array()) schema("rotation entries must be arrays of dart names");
      for (const auto& d : darts) {
        if (!d.is_string()) schema("dart names must be strings");
        net.rotation[v].push_back(net.parse_dart(d.get<std::string>()));
      }
    }
  }
  if (j.contains("outer")) {
    if (!j["outer"].is_string()) schema("outer must be a dart name");
    net.outer = net.parse_dart(j["outer"].get<std::string>());
  }
  net.validate(true);
  if (net.has_embedding()) validate_embedding(net);
  return net;
}

}  // namespace

Network network_from_json(const Json& j) {
  try {
    return network_from_json_impl(j);
  } catch (const NetworkError&) {
    throw;
  } catch (const std::exception& e) {
    throw NetworkError(ErrorKind::Schema, e.what());
  }
}

Json network_to_json(const Network& net) {
  Json j;
  j["surface"] = surface_name(net.surface);
  j["vertices"] = net.num_vertices;
  j["nodes"] = net.nodes;
  Json edges = Json::array();
  for (const auto& e : net.edges) {
    Json je{{"id", e.id}, {"u", e.u}, {"v", e.v}, {"c", to_string(e.c)}};
    if (net.surface == Surface::Annulus) je["h"] = Json::array({e.h[0]});
    else if (net.surface != Surface::Disk) je["h"] = Json::array({e.h[0], e.h[1]});
    if (e.t) je["t"] = to_json(*e.t);
    edges.push_back(je);
  }
  j["edges"] = edges;
  if (net.has_embedding()) {
    Json r = Json::object();
    for (int v = 0; v < net.num_vertices; ++v) {
      Json ds = Json::array();
      for (int d : net.rotation[v]) ds.push_back(net.dart_name(d));
      r[std::to_string(v)] = ds;
    }
    j["rotation"] = r;
  }
  if (net.outer) j["outer"] = net.dart_name(*net.outer);
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw NetworkError(ErrorKind::Schema, "'" + path + "' is not valid JSON: " + e.what());
  }
}

Network load_network(const std::string& path) { return network_from_json(read_json_file(path)); }

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << canonical_dump(network_to_json(net));
}

}  // namespace ohmlab
