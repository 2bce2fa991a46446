// ohmlab command-line front end.  Every subcommand prints one RunReport (JSON)
// on stdout or to --out.  Exit 0: all verdicts true; 2: some verdict false
// (a failed reconstruction is one); 1: input or usage error.

#include <openssl/evp.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ohmlab/combinatorics.hpp"
#include "ohmlab/families.hpp"
#include "ohmlab/io.hpp"
#include "ohmlab/laplacian.hpp"
#include "ohmlab/medial.hpp"
#include "ohmlab/surfaces.hpp"
#include "ohmlab/transforms.hpp"

using namespace ohmlab;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  bool as_float = false;
  bool timing = false;
  std::string out;
};
Globals g;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

// Numbers: exact "p/q" strings, or doubles under --float.
Json num(const Rational& q) { return g.as_float ? Json(q.get_d()) : Json(to_string(q)); }

Json jmat(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(num(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

Json jexp(const Exp& e) { return Json::array({e[0], e[1]}); }

Json jpoly(const LaurentPoly& p) {
  Json terms = Json::array();
  const bool two = p.uses_second_var();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"c", num(c)}, {"e", two ? jexp(e) : Json::array({e[0]})}});
  return {{"terms", terms}, {"vars", two ? 2 : 1}, {"text", p.str()}};
}

Json jupoly(const UPoly& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(num(x));
  return c;
}

struct Report {
  std::string command;
  Json inputs = Json::array();
  Json outputs = Json::object();
  Json verdicts = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void input(const std::string& path, const Json& doc) {
    inputs.push_back({{"path", path}, {"digest", sha256_hex(canonical_dump(doc))}});
  }
  void verdict(const std::string& name, bool ok) { verdicts[name] = ok; }
  bool all_pass() const {
    for (const auto& [k, v] : verdicts.items())
      if (!v.get<bool>()) return false;
    return true;
  }
  int emit() const {
    Json r{{"command", command},
           {"seed", g.seed},
           {"inputs", inputs},
           {"outputs", outputs},
           {"verdicts", verdicts},
           {"output_digest", sha256_hex(canonical_dump(outputs))},
           {"pass", all_pass()}};
    if (g.timing)
      r["wall_time_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::string text = canonical_dump(r);
    if (g.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(g.out);
      if (!f) throw InputError("cannot write " + g.out);
      f << text;
    }
    return all_pass() ? 0 : 2;
  }
};

Network read_network(Report& rep, const std::string& path) {
  Json doc = read_json_file(path);
  rep.input(path, doc);
  return network_from_json(doc);
}

// A polynomial document ({"terms": ...}) or a network, whose characteristic
// polynomial is used.
LaurentPoly read_poly(Report& rep, const std::string& path) {
  Json doc = read_json_file(path);
  rep.input(path, doc);
  if (doc.is_object() && doc.contains("terms")) return laurent_from_json(doc);
  return char_poly(network_from_json(doc));
}

Json edge_ids(const Network& net, EdgeMask m) {
  Json ids = Json::array();
  for (int k = 0; k < net.num_edges(); ++k)
    if (m >> k & 1) ids.push_back(net.edges[k].id);
  return ids;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated list of integers, got '" + s + "'");
    }
  }
  return out;
}

double chi_square_p(const std::vector<long>& observed, const std::vector<Rational>& weight, long samples) {
  Rational total = 0;
  for (const auto& w : weight) total += w;
  double chi = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = samples * Rational(weight[i] / total).get_d();
    chi += (observed[i] - expected) * (observed[i] - expected) / expected;
  }
  if (observed.size() < 2) return 1;
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi));
}

// ---- subcommands -----------------------------------------------------------

int cmd_response(const std::string& path) {
  Report rep{"response"};
  Network net = read_network(rep, path);
  rep.outputs["surface"] = surface_name(net.surface);
  const RatMatrix l = response_matrix(net);
  rep.outputs["L"] = jmat(l);
  bool sym = true, rows_zero = true, offdiag = true;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < l.cols(); ++j) {
      s += l(i, j);
      sym = sym && l(i, j) == l(j, i);
      if (i != j) offdiag = offdiag && sgn(l(i, j)) >= 0;
    }
    rows_zero = rows_zero && sgn(s) == 0;
  }
  rep.verdict("symmetric", sym);
  rep.verdict("rows_sum_to_zero", rows_zero);
  rep.verdict("offdiagonal_nonnegative", offdiag);
  if (net.surface == Surface::Annulus && !net.nodes.empty()) {
    const Matrix<RatFunc> lz = response_matrix_line(net);
    Json rows = Json::array();
    for (std::size_t i = 0; i < lz.rows(); ++i) {
      Json r = Json::array();
      for (std::size_t j = 0; j < lz.cols(); ++j)
        r.push_back({{"num", jupoly(lz(i, j).num())}, {"den", jupoly(lz(i, j).den())}});
      rows.push_back(r);
    }
    rep.outputs["L_line"] = rows;
  }
  return rep.emit();
}

int cmd_groves(const std::string& path) {
  Report rep{"groves"};
  Network net = read_network(rep, path);
  const int n = static_cast<int>(net.nodes.size());
  GroveSum gs = grove_sums(net);
  Json by = Json::object();
  for (const auto& [p, w] : gs.by_partition) by[partition_str(p, n)] = num(w);
  rep.outputs["by_partition"] = by;
  rep.outputs["total"] = num(gs.total);
  const RatMatrix l = response_matrix(net);
  const Rational unc = gs.uncrossing(n);
  bool agree = true;
  Json ratios = Json::object();
  if (n <= 6 && sgn(unc) != 0) {
    for (const auto& sigma : planar_partitions(n)) {
      const Rational enumerated = gs.of(sigma) / unc, via = grove_probability(l, sigma);
      ratios[partition_str(sigma, n)] = num(via);
      agree = agree && enumerated == via;
    }
    rep.outputs["ratio_to_uncrossing"] = ratios;
    rep.verdict("projection_matches_enumeration", agree);
  }
  return rep.emit();
}

int cmd_crsf(const std::string& path) {
  Report rep{"crsf"};
  Network net = read_network(rep, path);
  CrsfSums s = enumerate_crsfs(net);
  rep.outputs["total"] = jpoly(s.total);
  rep.outputs["essential_total"] = jpoly(s.essential_total);
  Json by_count = Json::object();
  for (const auto& [k, b] : s.by_count) by_count[std::to_string(k)] = {{"weight", num(b.weight)}, {"count", b.count}};
  rep.outputs["by_count"] = by_count;
  Json by_h = Json::array();
  for (const auto& [classes, b] : s.by_homology) {
    Json cs = Json::array();
    for (const auto& c : classes) cs.push_back(jexp(c));
    by_h.push_back({{"classes", cs}, {"weight", num(b.weight)}, {"count", b.count}});
  }
  rep.outputs["by_homology"] = by_h;
  rep.verdict("equals_line_laplacian_det", det_bareiss(line_laplacian(net)) == s.total);
  return rep.emit();
}

int cmd_sample(const std::string& path, long samples) {
  Report rep{"sample"};
  Network net = read_network(rep, path);
  Rng rng(g.seed);
  std::map<EdgeMask, long> hits;
  for (long i = 0; i < samples; ++i) ++hits[wilson_sample(net, rng)];
  TreeSum ts = enumerate_spanning_trees(net);
  std::vector<long> observed;
  std::vector<Rational> weight;
  Json trees = Json::array();
  bool only_trees = true;
  for (const auto& [m, c] : hits)
    only_trees = only_trees && std::find(ts.trees.begin(), ts.trees.end(), m) != ts.trees.end();
  for (EdgeMask m : ts.trees) {
    observed.push_back(hits.count(m) ? hits[m] : 0);
    weight.push_back(mask_weight(net, m));
    trees.push_back({{"edges", edge_ids(net, m)},
                     {"count", observed.back()},
                     {"probability", num(Rational(weight.back() / ts.total))}});
  }
  const double p = chi_square_p(observed, weight, samples);
  rep.outputs["samples"] = samples;
  rep.outputs["trees"] = trees;
  rep.outputs["chi_square_p"] = p;
  rep.verdict("samples_are_spanning_trees", only_trees);
  rep.verdict("chi_square_p_above_0.001", p > 0.001);
  return rep.emit();
}

int cmd_medial(const std::string& path) {
  Report rep{"medial"};
  Network net = read_network(rep, path);
  MedialData md = build_medial(net);
  Json strands = Json::array();
  for (const auto& s : md.strands) {
    Json edges = Json::array();
    for (const auto& p : s.passes) edges.push_back(net.edges[p.edge].id);
    Json j{{"edges", edges}, {"closed", s.closed}};
    if (s.closed)
      j["homology"] = jexp(s.homology);
    else
      j["stubs"] = Json::array({s.stub_start + 1, s.stub_end + 1});
    strands.push_back(j);
  }
  rep.outputs["medial_vertices"] = md.medial_vertices;
  rep.outputs["strands"] = strands;
  if (!md.stub_pair.empty()) rep.outputs["stub_involution"] = involution_str(md.stub_pair);
  if (net.surface != Surface::Pants) {
    Minimality m = is_minimal(net, md);
    rep.outputs["minimal"] = m.minimal;
    if (!m.minimal) rep.outputs["reason"] = m.reason;
    if (net.surface == Surface::Disk && net.num_edges() <= 30)
      rep.outputs["jacobian_rank"] = response_jacobian_rank(net);
  }
  return rep.emit();
}

int cmd_transform(const std::string& path, const std::string& move, int vertex, const std::string& edges, int random) {
  Report rep{"transform"};
  Network net = read_network(rep, path);
  std::vector<Move> applied;
  Network cur = net;
  if (!move.empty()) {
    Move m{parse_move(move), vertex, edges.empty() ? std::vector<int>{} : parse_int_list(edges)};
    applied.push_back(m);
    cur = apply_move(cur, m);
  }
  Rng rng(g.seed);
  for (int i = 0; i < random; ++i) {
    std::vector<Move> moves = legal_moves(cur);
    if (moves.empty()) break;
    const Move m = moves[rng.below(moves.size())];
    applied.push_back(m);
    cur = apply_move(cur, m);
  }
  Json names = Json::array();
  Network walk = net;
  for (const auto& m : applied) {
    names.push_back(move_str(walk, m));
    walk = apply_move(walk, m);
  }
  rep.outputs["moves"] = names;
  rep.outputs["network"] = network_to_json(cur);
  if (!net.nodes.empty()) {
    rep.verdict("response_unchanged", response_matrix(net) == response_matrix(cur));
    if (net.surface == Surface::Annulus)
      rep.verdict("line_response_unchanged", response_matrix_line(net) == response_matrix_line(cur));
  }
  return rep.emit();
}

int cmd_reconstruct(const std::string& topo_path, const std::string& l_path) {
  Report rep{"reconstruct"};
  Network topo = read_network(rep, topo_path);
  Json ldoc = read_json_file(l_path);
  rep.input(l_path, ldoc);
  const RatMatrix l = ratmatrix_from_json(ldoc.is_object() && ldoc.contains("L") ? ldoc["L"] : ldoc);
  try {
    Reconstruction r = reconstruct(topo, l);
    Json cs = Json::object();
    for (int k = 0; k < topo.num_edges(); ++k) cs[std::to_string(topo.edges[k].id)] = num(r.conductance[k]);
    Json steps = Json::array();
    for (const auto& s : r.steps)
      steps.push_back({{"kind", s.spike ? "spike" : "boundary-edge"},
                       {"edge", s.edge_id},
                       {"conductance", num(s.conductance)},
                       {"witness", minor_str(s.witness)}});
    rep.outputs["conductances"] = cs;
    rep.outputs["steps"] = steps;
    Network rebuilt = topo;
    for (int k = 0; k < topo.num_edges(); ++k) rebuilt.edges[k].c = r.conductance[k];
    rep.verdict("response_reproduced", response_matrix(rebuilt) == l);
  } catch (const ReconstructionError& e) {
    rep.outputs["error"] = e.what();
    rep.outputs["peel_step"] = e.step();
    rep.verdict("reconstructed", false);
  }
  return rep.emit();
}

int cmd_minors(const std::string& path) {
  Report rep{"minors"};
  Network net = read_network(rep, path);
  const RatMatrix l = response_matrix(net);
  const int n = static_cast<int>(l.rows());
  Json central = Json::array();
  bool central_positive = true;
  for (const auto& m : central_minors(n)) {
    const Rational v = minor_value(l, m);
    central_positive = central_positive && sgn(v) > 0;
    central.push_back({{"minor", minor_str(m)}, {"value", num(v)}});
  }
  bool nonneg = true, positive = true;
  int zero = 0;
  for (const auto& m : noninterlaced_minors(n)) {
    const int s = sgn(minor_value(l, m));
    nonneg = nonneg && s >= 0;
    positive = positive && s > 0;
    zero += s == 0;
  }
  rep.outputs["central"] = central;
  rep.outputs["central_positive"] = central_positive;
  rep.outputs["well_connected"] = positive;
  rep.outputs["zero_noninterlaced_minors"] = zero;
  rep.verdict("noninterlaced_minors_nonnegative", nonneg);
  if (central_positive) rep.verdict("central_positive_implies_well_connected", positive);
  return rep.emit();
}

int cmd_jacobian(const std::string& path) {
  Report rep{"jacobian"};
  Network net = read_network(rep, path);
  LogJacobian j = log_jacobian(net);
  Json ms = Json::array();
  for (const auto& m : j.minors) ms.push_back(minor_str(m));
  const long double fd = log_jacobian_fd(net, frac(1, 1000000));
  rep.outputs["minors"] = ms;
  rep.outputs["matrix"] = jmat(j.matrix);
  rep.outputs["det"] = num(j.det);
  rep.outputs["finite_difference_det"] = static_cast<double>(fd);
  rep.verdict("det_is_plus_or_minus_one", abs(j.det) == 1);
  rep.verdict("finite_difference_within_1e-6", std::abs(std::abs(fd) - 1) < 1e-6L);
  return rep.emit();
}

int cmd_charpoly(const std::string& path) {
  Report rep{"charpoly"};
  Network net = read_network(rep, path);
  const LaurentPoly p = char_poly(net);
  rep.outputs["poly"] = jpoly(p);
  rep.verdict("symmetric", p.is_symmetric());
  if (net.surface == Surface::Annulus) {
    AnnulusRootVerdict v = annulus_root_report(p);
    Json roots = Json::array();
    for (double r : v.report.positive_real_values()) roots.push_back(r);
    rep.outputs["positive_real_roots"] = roots;
    if (!v.pass) rep.outputs["witness"] = v.witness;
    rep.verdict("distinct_positive_roots_except_double_one", v.pass);
    CyclePgf pgf = cycle_count_pgf(p);
    Json prob = Json::array();
    for (const auto& x : pgf.probability) prob.push_back(num(x));
    rep.outputs["cycle_count_probability"] = prob;
  }
  return rep.emit();
}

int cmd_newton(const std::string& path) {
  Report rep{"newton"};
  const LaurentPoly p = read_poly(rep, path);
  const auto poly = newton_polygon(p);
  Json v = Json::array();
  for (const auto& e : poly) v.push_back(jexp(e));
  rep.outputs["vertices"] = v;
  rep.verdict("centrally_symmetric", is_centrally_symmetric(poly));
  return rep.emit();
}

int cmd_decompose(const std::string& path) {
  Report rep{"decompose"};
  const LaurentPoly p = read_poly(rep, path);
  HomologyDecomposition d = homology_decompose(p);
  Json c = Json::array();
  for (const auto& [e, v] : d.c) c.push_back({{"class", jexp(e)}, {"c", num(v)}});
  rep.outputs["coefficients"] = c;
  if (!d.valid) rep.outputs["reason"] = d.reason;
  rep.verdict("network_polynomial", d.valid);
  if (d.valid) rep.verdict("reassembles", reassemble(d) == p);
  return rep.emit();
}

int cmd_free_energy(const std::string& path, int grid) {
  Report rep{"free-energy"};
  const LaurentPoly p = read_poly(rep, path);
  FreeEnergy f = free_energy(p, grid);
  rep.outputs["value"] = f.value;
  rep.outputs["coarse"] = f.coarse;
  rep.outputs["fine"] = f.fine;
  rep.outputs["grid"] = f.grid;
  // Extrapolated values from N/2 and N agree.
  const FreeEnergy half = free_energy(p, std::max(2, grid / 2));
  rep.outputs["value_at_half_grid"] = half.value;
  rep.verdict("converged_1e-6", std::abs(f.value - half.value) < 1e-6);
  return rep.emit();
}

int cmd_amoeba(const std::string& path, int grid, double lo, double hi, bool points) {
  Report rep{"amoeba"};
  const LaurentPoly p = read_poly(rep, path);
  AmoebaScan s = amoeba_sample(p, grid, lo, hi);
  rep.outputs["grid"] = grid;
  rep.outputs["range"] = Json::array({lo, hi});
  rep.outputs["max_count"] = s.max_count;
  int inside = 0;
  for (const auto& pt : s.points) inside += pt.count > 0;
  rep.outputs["tori_meeting_curve"] = inside;
  if (points) {
    Json pts = Json::array();
    for (const auto& pt : s.points) pts.push_back(Json::array({pt.log_r1, pt.log_r2, pt.count}));
    rep.outputs["points"] = pts;
  }
  rep.verdict("harnack", s.harnack);
  return rep.emit();
}

// ---- corpus ----------------------------------------------------------------

struct CorpusCounts {
  int disk = 20, annulus = 10, torus = 6, gamma = 4;
};

std::vector<std::pair<std::string, Network>> make_corpus(std::uint64_t seed, const CorpusCounts& c) {
  Rng rng(seed);
  std::vector<std::pair<std::string, Network>> out;
  char name[64];
  for (int i = 0; i < c.disk; ++i) {
    std::snprintf(name, sizeof name, "disk_%03d.json", i);
    out.emplace_back(name, random_disk_network(rng, rng.range(2, 5), rng.range(0, 3), 12));
  }
  for (int i = 0; i < c.annulus; ++i) {
    std::snprintf(name, sizeof name, "annulus_%03d.json", i);
    const int n = rng.range(1, 4);
    std::vector<Rational> a, b;
    for (int k = 0; k + 1 < n; ++k) a.push_back(rng.positive_rational());
    for (int k = 0; k < n; ++k) b.push_back(rng.positive_rational());
    out.emplace_back(name, string_of_loops(a, b));
  }
  for (int i = 0; i < c.torus; ++i) {
    std::snprintf(name, sizeof name, "torus_%03d.json", i);
    const int m = rng.range(1, 3), n = rng.range(1, 2);
    Network t = torus_grid(m, n);
    for (auto& e : t.edges) e.c = rng.positive_rational();
    out.emplace_back(name, t);
  }
  for (int i = 0; i < c.gamma; ++i) {
    std::snprintf(name, sizeof name, "gamma%d.json", i + 2);
    std::vector<Rational> cs;
    for (int k = 0; k < (i + 2) * (i + 1) / 2; ++k) cs.push_back(rng.positive_rational());
    out.emplace_back(name, gamma_network(i + 2, cs));
  }
  return out;
}

int cmd_gen_corpus(const std::string& dir, const CorpusCounts& counts) {
  Report rep{"gen-corpus"};
  fs::create_directories(dir);
  Json files = Json::object();
  for (const auto& [name, net] : make_corpus(g.seed, counts)) {
    const std::string text = canonical_dump(network_to_json(net));
    std::ofstream f(fs::path(dir) / name);
    if (!f) throw InputError("cannot write " + (fs::path(dir) / name).string());
    f << text;
    files[name] = sha256_hex(text);
  }
  rep.outputs["directory"] = dir;
  rep.outputs["files"] = files;
  return rep.emit();
}

// Property checks on one corpus network; verdict names are prefixed by `tag`.
void verify_network(Report& rep, const std::string& tag, const Network& net) {
  auto v = [&](const std::string& what, bool ok) { rep.verdict(tag + ":" + what, ok); };
  if (net.num_edges() <= edge_cap(kTreeCap)) {
    std::vector<std::size_t> keep;
    for (int i = 1; i < net.num_vertices; ++i) keep.push_back(i);
    const RatMatrix reduced = laplacian(net).submatrix(keep, keep);
    v("matrix_tree", (net.num_vertices == 1 ? Rational(1) : det(reduced)) == enumerate_spanning_trees(net).total);
  }
  if (net.surface == Surface::Disk) {
    const RatMatrix l = response_matrix(net);
    bool ok = true;
    for (std::size_t i = 0; i < l.rows(); ++i)
      for (std::size_t j = 0; j < l.cols(); ++j) ok = ok && l(i, j) == l(j, i) && (i == j || sgn(l(i, j)) >= 0);
    v("response_symmetric_nonnegative", ok);
    const bool minimal = is_minimal(net).minimal;
    if (tag.starts_with("gamma")) v("gamma_minimal", minimal);
    v("minimality_matches_jacobian_rank", minimal == (response_jacobian_rank(net) == net.num_edges()));
    bool nonneg = true;
    for (const auto& m : noninterlaced_minors(static_cast<int>(l.rows()))) nonneg = nonneg && sgn(minor_value(l, m)) >= 0;
    v("noninterlaced_minors_nonnegative", nonneg);
    if (minimal && !net.nodes.empty()) {
      Network topo = net;
      for (auto& e : topo.edges) e.c = 1;
      bool round_trip = true;
      try {
        Reconstruction r = reconstruct(topo, l);
        for (int k = 0; k < net.num_edges(); ++k) round_trip = round_trip && r.conductance[k] == net.edges[k].c;
      } catch (const std::exception&) {
        round_trip = false;
      }
      v("reconstruction_round_trip", round_trip);
    }
    int moves = 0;
    Network cur = net;
    Rng rng(g.seed ^ std::hash<std::string>{}(tag));
    bool invariant = true;
    for (; moves < 10; ++moves) {
      auto legal = legal_moves(cur);
      if (legal.empty()) break;
      cur = apply_move(cur, legal[rng.below(legal.size())]);
      invariant = invariant && response_matrix(cur) == l;
    }
    v("moves_preserve_response", invariant);
  } else if (net.surface == Surface::Annulus || net.surface == Surface::Torus) {
    const LaurentPoly p = char_poly(net);
    if (net.num_edges() <= 12) v("forman", p == enumerate_crsfs(net).total);
    HomologyDecomposition d = homology_decompose(p);
    v("decomposition", d.valid && reassemble(d) == p);
    v("newton_polygon_symmetric", is_centrally_symmetric(newton_polygon(p)));
    if (net.surface == Surface::Annulus) v("annulus_roots", annulus_root_report(p).pass);
  }
}

int cmd_verify_all(const std::string& dir, const CorpusCounts& counts) {
  Report rep{"verify-all"};
  std::vector<std::pair<std::string, Network>> corpus;
  if (dir.empty()) {
    corpus = make_corpus(g.seed, counts);
  } else {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) corpus.emplace_back(p.filename().string(), read_network(rep, p.string()));
  }
  for (const auto& [name, net] : corpus) verify_network(rep, name, net);
  rep.outputs["networks"] = corpus.size();
  rep.outputs["checks"] = rep.verdicts.size();
  return rep.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ohmlab: electrical networks, groves, CRSFs and spectral curves"};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--float", g.as_float, "Print numbers as IEEE doubles instead of exact p/q strings");
  app.add_option("--out", g.out, "Write the report to this file");
  app.add_flag("--timing", g.timing, "Include wall time in the report (breaks byte-identical output)");

  std::string file, topo, lfile, move, edges, dir;
  int vertex = -1, random = 0, grid = 0;
  long samples = 30000;
  double lo = -3, hi = 3;
  bool points = false;
  CorpusCounts counts;

  auto net_cmd = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("network", file, "Network JSON file")->required()->check(CLI::ExistingFile);
    return sc;
  };
  auto* response = net_cmd("response", "Response matrix L");
  auto* groves = net_cmd("groves", "Grove sums by partition and the projection-matrix ratios");
  auto* crsf = net_cmd("crsf", "Cycle-rooted spanning forest sums");
  auto* sample = net_cmd("sample", "Wilson sampling with a chi-square check");
  sample->add_option("--samples", samples, "Number of samples")->capture_default_str();
  auto* medial = net_cmd("medial", "Strands, stub involution and minimality");
  auto* transform = net_cmd("transform", "Apply electrical transformations");
  transform->add_option("--move", move, "dead-branch, self-loop, series, parallel, ydelta or deltay");
  transform->add_option("--vertex", vertex, "Site vertex for vertex moves");
  transform->add_option("--edges", edges, "Comma-separated edge positions for edge moves");
  transform->add_option("--random", random, "Then apply this many random legal moves");
  auto* recon = app.add_subcommand("reconstruct", "Recover conductances from a response matrix");
  recon->add_option("--topology", topo, "Network JSON giving the topology")->required()->check(CLI::ExistingFile);
  recon->add_option("--L", lfile, "Response matrix JSON")->required()->check(CLI::ExistingFile);
  auto* minors = net_cmd("minors", "Central and noninterlaced minors");
  auto* jacobian = net_cmd("jacobian", "Log-Jacobian of central minors");
  auto* charpoly = net_cmd("charpoly", "Characteristic polynomial of an annulus or torus network");
  auto poly_cmd = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("input", file, "Network or polynomial JSON file")->required()->check(CLI::ExistingFile);
    return sc;
  };
  auto* newton = poly_cmd("newton", "Newton polygon");
  auto* decompose = poly_cmd("decompose", "Homology decomposition of a torus polynomial");
  auto* fe = poly_cmd("free-energy", "Free energy (torus integral of log P)");
  fe->add_option("--grid", grid, "Coarse grid size N (default 128)");
  auto* amoeba = poly_cmd("amoeba", "Torus root counts over a log-radius grid");
  amoeba->add_option("--grid", grid, "Grid size (default 50)");
  amoeba->add_option("--lo", lo, "Lower log-radius")->capture_default_str();
  amoeba->add_option("--hi", hi, "Upper log-radius")->capture_default_str();
  amoeba->add_flag("--points", points, "Include every grid point");
  auto corpus_opts = [&](CLI::App* sc) {
    sc->add_option("--disk", counts.disk)->capture_default_str();
    sc->add_option("--annulus", counts.annulus)->capture_default_str();
    sc->add_option("--torus", counts.torus)->capture_default_str();
    sc->add_option("--gamma", counts.gamma, "Gamma_2 .. Gamma_(k+1)")->capture_default_str();
  };
  auto* gen = app.add_subcommand("gen-corpus", "Write a reproducible random corpus");
  gen->add_option("--dir", dir, "Output directory")->required();
  corpus_opts(gen);
  auto* verify = app.add_subcommand("verify-all", "Property checks over a corpus");
  verify->add_option("--dir", dir, "Corpus directory (default: generate from --seed)");
  corpus_opts(verify);

  // CLI11 reports a stray word only as a missing subcommand.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" || a == "--out") {
      ++i;
      continue;
    }
    if (a.starts_with("-")) continue;
    if (!app.get_subcommand_no_throw(a)) {
      std::cerr << "ohmlab: unknown subcommand '" << a << "'\n";
      return 1;
    }
    break;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*response) return cmd_response(file);
    if (*groves) return cmd_groves(file);
    if (*crsf) return cmd_crsf(file);
    if (*sample) return cmd_sample(file, samples);
    if (*medial) return cmd_medial(file);
    if (*transform) return cmd_transform(file, move, vertex, edges, random);
    if (*recon) return cmd_reconstruct(topo, lfile);
    if (*minors) return cmd_minors(file);
    if (*jacobian) return cmd_jacobian(file);
    if (*charpoly) return cmd_charpoly(file);
    if (*newton) return cmd_newton(file);
    if (*decompose) return cmd_decompose(file);
    if (*fe) return cmd_free_energy(file, grid > 0 ? grid : 128);
    if (*amoeba) return cmd_amoeba(file, grid > 0 ? grid : 50, lo, hi, points);
    if (*gen) return cmd_gen_corpus(dir, counts);
    if (*verify) return cmd_verify_all(dir, counts);
  } catch (const InputError& e) {
    std::cerr << "ohmlab: input error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "ohmlab: malformed JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ohmlab: invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ohmlab: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
