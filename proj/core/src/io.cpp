#include "netoco/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "netoco/error.hpp"

namespace netoco {

using json = nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

// Non-finite numbers become null; JSON has no infinity.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

json mat(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Eigen::VectorXd to_vec(const json& j, double null_value = std::nan("")) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_null()) {
      v[i] = null_value;
    } else if (j[i].is_number()) {
      v[i] = j[i].get<double>();
    } else {
      throw ParseError("expected a number");
    }
  }
  return v;
}

Eigen::MatrixXd to_mat(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix");
  Eigen::MatrixXd m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    Eigen::VectorXd row = to_vec(j[i]);
    if (row.size() != m.cols()) throw ParseError("ragged matrix");
    m.row(i) = row.transpose();
  }
  return m;
}

std::vector<std::vector<double>> to_table(const json& j) {
  try {
    return j.get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("expected a table of numbers: ") + e.what());
  }
}

json check_json(const Check& c) {
  return {{"inequality", c.inequality},
          {"passed", c.passed},
          {"worst_margin", number(c.worst_margin)},
          {"witness", c.witness}};
}

json report_head(const std::string& kind, const std::string& config_echo) {
  json r;
  r["schema"] = kReportSchema;
  r["kind"] = kind;
  r["config"] = parse(config_echo);
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json toml_node(const toml::node& n) {
  if (auto t = n.as_table()) {
    json o = json::object();
    for (auto&& [k, v] : *t) o[std::string(k.str())] = toml_node(v);
    return o;
  }
  if (auto a = n.as_array()) {
    json o = json::array();
    for (auto&& v : *a) o.push_back(toml_node(v));
    return o;
  }
  if (auto v = n.as_string()) return v->get();
  if (auto v = n.as_integer()) return v->get();
  if (auto v = n.as_floating_point()) return number(v->get());
  if (auto v = n.as_boolean()) return v->get();
  throw ParseError("unsupported TOML value (dates are not accepted)");
}

Constants constants_from(const json& j) {
  Constants c;
  c.mu = get_or(j, "mu", c.mu);
  c.ell_f = get_or(j, "ell_f", c.ell_f);
  c.ell_T = get_or(j, "ell_T", c.ell_T);
  c.ell_S = get_or(j, "ell_S", c.ell_S);
  return c;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

Network parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int declared = -1;
  int max_index = -1;
  int lineno = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "vertices") {
      if (!(ls >> declared) || declared < 0) throw ParseError("bad vertex count on line " + std::to_string(lineno));
      continue;
    }
    int u, v;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw ParseError("bad edge on line " + std::to_string(lineno));
    }
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) throw ParseError("bad edge on line " + std::to_string(lineno));
    edges.emplace_back(u, v);
    max_index = std::max({max_index, u, v});
  }
  int n = declared >= 0 ? declared : max_index + 1;
  return Network(n, edges);
}

Network network_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("type") && j.contains("edges")) {
    auto edges = get<std::vector<std::pair<int, int>>>(j, "edges");
    return Network(j.contains("n") ? get<int>(j, "n") : get<int>(j, "vertices"), edges);
  }
  std::string type = get<std::string>(j, "type");
  if (type == "path") return path_graph(get<int>(j, "n"));
  if (type == "cycle") return cycle_graph(get<int>(j, "n"));
  if (type == "grid") return grid_graph(get<int>(j, "rows"), get<int>(j, "cols"));
  if (type == "star") return star_graph(get<int>(j, "leaves"));
  if (type == "complete") return complete_graph(get<int>(j, "n"));
  if (type == "ring_of_blocks") return ring_of_blocks(get<int>(j, "blocks"), get<int>(j, "block_size"));
  if (type == "edge_list") return parse_edge_list(read_file(get<std::string>(j, "file")));
  if (type == "edges") {
    auto edges = get<std::vector<std::pair<int, int>>>(j, "edges");
    return Network(get<int>(j, "vertices"), edges);
  }
  throw ParseError("unknown graph type '" + type + "'");
}

std::string network_to_json(const Network& net) {
  json e = json::array();
  for (const Edge& ed : net.edges()) e.push_back({ed.u, ed.v});
  return json{{"type", "edges"}, {"vertices", net.vertex_count()}, {"edges", e}}.dump();
}

std::string instance_to_json(const Instance& inst) {
  const InstanceData& d = inst.data();
  json j;
  j["schema"] = kInstanceSchema;
  j["graph"] = parse(network_to_json(d.net));
  j["horizon"] = d.horizon;
  j["dim"] = d.dim;
  j["constants"] = {{"mu", d.constants.mu},
                    {"ell_f", d.constants.ell_f},
                    {"ell_T", d.constants.ell_T},
                    {"ell_S", d.constants.ell_S}};
  json x0 = json::array();
  for (const auto& x : d.x0) x0.push_back(vec(x));
  j["x0"] = x0;
  json steps = json::array();
  for (int t = 0; t < d.horizon; ++t) {
    json step;
    json node = json::array(), temporal = json::array(), spatial = json::array(), boxes = json::array();
    for (const auto& f : d.node[t]) {
      node.push_back({{"A", mat(f.hessian())}, {"b", vec(f.linear())}, {"c", f.constant()}});
    }
    for (const auto& c : d.temporal[t]) {
      temporal.push_back({{"H", mat(c.hessian())}, {"g", vec(c.linear())}, {"c", c.constant()}});
    }
    for (const auto& s : d.spatial[t]) {
      spatial.push_back({{"H", mat(s.hessian())}, {"g", vec(s.linear())}, {"c", s.constant()}});
    }
    for (const auto& b : d.boxes[t]) boxes.push_back({{"lower", vec(b.lower())}, {"upper", vec(b.upper())}});
    step["node"] = node;
    step["temporal"] = temporal;
    step["spatial"] = spatial;
    step["boxes"] = boxes;
    steps.push_back(step);
  }
  j["steps"] = steps;
  return j.dump();
}

Instance instance_from_json(const std::string& text) {
  json j = parse(text);
  if (get_or<std::string>(j, "schema", "") != kInstanceSchema) {
    throw ParseError(std::string("instance schema must be ") + kInstanceSchema);
  }
  InstanceData d;
  d.net = network_from_json(j.at("graph").dump());
  d.horizon = get<int>(j, "horizon");
  d.dim = get<int>(j, "dim");
  d.constants = constants_from(j.at("constants"));
  for (const auto& x : get<json>(j, "x0")) d.x0.push_back(to_vec(x));
  const json& steps = get<json>(j, "steps");
  if (static_cast<int>(steps.size()) != d.horizon) throw ParseError("instance needs one step per time");
  for (const auto& step : steps) {
    d.node.emplace_back();
    d.temporal.emplace_back();
    d.spatial.emplace_back();
    d.boxes.emplace_back();
    for (const auto& f : get<json>(step, "node")) {
      d.node.back().emplace_back(to_mat(f.at("A")), to_vec(f.at("b")), get<double>(f, "c"));
    }
    for (const auto& c : get<json>(step, "temporal")) {
      d.temporal.back().emplace_back(to_mat(c.at("H")), to_vec(c.at("g")), get<double>(c, "c"));
    }
    for (const auto& s : get<json>(step, "spatial")) {
      d.spatial.back().emplace_back(to_mat(s.at("H")), to_vec(s.at("g")), get<double>(s, "c"));
    }
    for (const auto& b : get<json>(step, "boxes")) {
      d.boxes.back().emplace_back(to_vec(b.at("lower"), -kInf), to_vec(b.at("upper"), kInf));
    }
  }
  return Instance(std::move(d));
}

PricingParams pricing_params_from_json(const std::string& text, const Network& net) {
  json j = parse(text);
  if (j.contains("random")) {
    const json& r = j.at("random");
    RandomPricingOptions o;
    o.a_min = get_or(r, "a_min", o.a_min);
    o.a_max = get_or(r, "a_max", o.a_max);
    o.b_max = get_or(r, "b_max", o.b_max);
    o.eta_max = get_or(r, "eta_max", o.eta_max);
    o.xi_min = get_or(r, "xi_min", o.xi_min);
    o.xi_max = get_or(r, "xi_max", o.xi_max);
    o.price_cap = get_or(r, "price_cap", o.price_cap);
    o.mu = get_or(r, "mu", o.mu);
    return random_pricing_params(net, get<int>(r, "horizon"), get_or<std::uint64_t>(r, "seed", 0), o);
  }
  PricingParams p;
  p.horizon = get<int>(j, "horizon");
  p.a = to_table(get<json>(j, "a"));
  p.k = to_table(get<json>(j, "k"));
  p.b = to_table(get<json>(j, "b"));
  p.price_cap = to_table(get<json>(j, "price_cap"));
  for (auto& row : p.price_cap) {
    for (auto& x : row) {
      if (x <= 0.0) x = kInf;
    }
  }
  p.eta_forward = to_table(get<json>(j, "eta_forward"));
  p.eta_backward = to_table(get<json>(j, "eta_backward"));
  p.mu = get_or(j, "mu", p.mu);
  p.x0 = get_or(j, "x0", std::vector<double>{});
  return p;
}

Instance instance_from_config(const std::string& text) {
  json j = parse(text);
  if (j.contains("file")) return instance_from_json(read_file(get<std::string>(j, "file")));
  Network net = network_from_json(get<json>(j, "graph").dump());
  if (j.contains("pricing")) {
    return pricing_instance(pricing_params_from_json(j.at("pricing").dump(), net), net).instance;
  }
  RandomInstanceOptions o;
  if (j.contains("options")) {
    const json& oj = j.at("options");
    o.box_half_width_min = get_or(oj, "box_half_width_min", o.box_half_width_min);
    o.box_half_width_max = get_or(oj, "box_half_width_max", o.box_half_width_max);
    o.unbounded = get_or(oj, "unbounded", o.unbounded);
    o.center_spread = get_or(oj, "center_spread", o.center_spread);
    o.signed_spatial = get_or(oj, "signed_spatial", o.signed_spatial);
    o.x0_scale = get_or(oj, "x0_scale", o.x0_scale);
  }
  Constants c = j.contains("constants") ? constants_from(j.at("constants")) : Constants{};
  return random_instance(net, get<int>(j, "horizon"), get_or(j, "dim", 1), c,
                         get_or<std::uint64_t>(j, "seed", 0), o);
}

std::string toml_to_json(const std::string& text) {
  try {
    toml::table t = toml::parse(text);
    return toml_node(t).dump();
  } catch (const toml::parse_error& e) {
    throw ParseError(std::string("invalid TOML: ") + std::string(e.description()));
  }
}

std::string read_config(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0) return toml_to_json(text);
  return parse(text).dump();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,v,dim,value\n" << std::setprecision(17);
  for (std::size_t t = 0; t < traj.actions.size(); ++t) {
    for (std::size_t v = 0; v < traj.actions[t].size(); ++v) {
      const auto& x = traj.actions[t][v];
      for (Eigen::Index i = 0; i < x.size(); ++i) os << t << ',' << v << ',' << i << ',' << x[i] << '\n';
    }
  }
}

void write_costs_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,hitting,switching\n" << std::setprecision(17);
  for (std::size_t t = 0; t < traj.costs.hitting.size(); ++t) {
    os << t + 1 << ',' << traj.costs.hitting[t] << ',' << traj.costs.switching[t] << '\n';
  }
}

std::string trajectory_json(const Trajectory& traj) {
  json j;
  json actions = json::array();
  for (const auto& step : traj.actions) {
    json s = json::array();
    for (const auto& x : step) s.push_back(vec(x));
    actions.push_back(s);
  }
  j["schema"] = kReportSchema;
  j["kind"] = "trajectory";
  j["horizon"] = traj.horizon();
  j["actions"] = actions;
  j["hitting"] = traj.costs.hitting;
  j["switching"] = traj.costs.switching;
  j["total_cost"] = traj.total_cost();
  return dump(j);
}

std::string constants_json(const DecayParams& p, int k, int r) {
  GlobalDecay g = p.global;
  LowerBoundFactors lb = lower_bound_factors(p.mu, p.ell_T, p.ell_S, p.max_degree);
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "constants";
  j["inputs"] = {{"mu", p.mu}, {"ell_f", p.ell_f}, {"ell_T", p.ell_T}, {"ell_S", p.ell_S},
                 {"max_degree", p.max_degree}, {"k", k}, {"r", r}};
  j["rho_T"] = number(p.rho_T);
  j["rho_S"] = number(p.rho_S);
  j["C1"] = number(p.C1);
  j["rho_G"] = number(g.rho_G);
  j["C_G"] = number(g.C_G);
  j["C0"] = number(g.C0);
  j["C3"] = number(c3(p.h, p.rho_S, r));
  j["lambda_T"] = lb.lambda_T;
  j["lambda_S"] = lb.lambda_S;
  j["lambda_S_branch"] = lb.branch == LambdaBranch::First ? "first" : "second";
  j["lambda_degree_ok"] = lb.degree_ok;
  CrBound b = cr_upper_bound(p, k, r);
  j["cr_bound"] = {{"condition_met", b.condition_met}, {"gate", number(b.gate)}, {"bound", number(b.bound)}};
  AugmentationVerdict a = augmentation_relations(p.mu, p.ell_T, p.ell_S, p.max_degree);
  j["augmentation"] = {{"temporal_lower", a.temporal_lower},
                       {"temporal_upper", a.temporal_upper},
                       {"spatial", a.spatial}};
  return dump(j);
}

std::string report_json(const PerturbationSweep& s, const std::string& config_echo) {
  json r = report_head("perturbation", config_echo);
  r["window"] = {{"t", s.t}, {"v", s.v}, {"k", s.k}, {"r", s.r}};
  r["basic"] = {{"rho_T", s.basic.rho_T}, {"rho_S", s.basic.rho_S}, {"C1", s.basic.C1}};
  r["tight"] = {{"rho_T", number(s.tight.rho_T)}, {"rho_S", number(s.tight.rho_S)},
                {"C1", number(s.tight.C1)}, {"violations", s.tight.violations}};
  double worst = 0.0;
  for (const auto& rec : s.records) {
    if (rec.ceiling > 0.0) worst = std::max(worst, rec.response / rec.ceiling);
  }
  r["summary"] = {{"records", s.records.size()}, {"worst_response_over_ceiling", worst}};
  r["checks"] = {check_json(s.basic_check), check_json(s.tight_check)};
  return dump(r);
}

std::string report_json(const CrSweep& s, const std::string& config_echo) {
  json r = report_head("cr-sweep", config_echo);
  r["k_list"] = s.k_list;
  r["r_list"] = s.r_list;
  r["opt_cost"] = s.opt_cost;
  json cells = json::array();
  for (const auto& c : s.cells) {
    cells.push_back({{"k", c.k}, {"r", c.r}, {"alg_cost", c.alg_cost}, {"ratio", c.ratio},
                     {"gate", number(c.bound.gate)}, {"condition_met", c.bound.condition_met},
                     {"bound", number(c.bound.bound)}});
  }
  r["cells"] = cells;
  r["checks"] = {check_json(s.ceiling), check_json(s.monotone_k), check_json(s.monotone_r)};
  return dump(r);
}

std::string report_json(const SpatialLowerReport& s, const std::string& config_echo) {
  json r = report_head("lower-bound", config_echo);
  r["blocks"] = s.blocks;
  r["block_size"] = s.block_size;
  r["ell"] = s.ell;
  r["seeds"] = s.seeds.size();
  r["lambda_S"] = s.factors.lambda_S;
  r["floor_pairs"] = s.floor.records.size();
  json rows = json::array();
  for (const auto& row : s.rows) {
    rows.push_back({{"r", row.r}, {"mean_excess", row.mean_excess}, {"expected_excess", row.expected_excess},
                    {"lambda_S_pow_r", row.lambda_S_pow_r}});
  }
  r["rows"] = rows;
  r["checks"] = {check_json(s.floor.check), check_json(s.decreasing)};
  return dump(r);
}

std::string report_json(const PricingReport& s, const std::string& config_echo) {
  json r = report_head("pricing", config_echo);
  r["cost_ratio"] = s.cost_ratio;
  r["revenue_alg"] = s.revenue_alg;
  r["revenue_opt"] = s.revenue_opt;
  r["revenue_ratio"] = number(s.revenue_ratio);
  r["eta"] = s.eta;
  r["lemma_floor"] = s.lemma_floor;
  r["identity_error"] = s.identity_error;
  r["checks"] = {check_json(s.lemma)};
  return dump(r);
}

std::string report_json(const AccumulationVerdict& a, const PerStepVerdict& p, const std::string& config_echo) {
  json r = report_head("errors", config_echo);
  r["accumulation"] = {{"lhs", a.lhs}, {"rhs", a.rhs}, {"factor", number(a.factor)}, {"errors", a.errors}};
  json rows = json::array();
  for (const auto& row : p.rows) {
    rows.push_back({{"t", row.t}, {"error_sq", row.error_sq}, {"prev_gap_sq", row.prev_gap_sq},
                    {"rhs", number(row.rhs)}});
  }
  r["per_step"] = rows;
  r["checks"] = {check_json(a.check), check_json(p.check)};
  return dump(r);
}

void write_perturbation_csv(std::ostream& os, const PerturbationSweep& s) {
  os << "source_t,source_v,initial,probe_t,probe_v,temporal_distance,spatial_distance,magnitude,response,"
        "ceiling,tight_ceiling\n"
     << std::setprecision(12);
  for (const auto& r : s.records) {
    os << r.source.t << ',' << r.source.v << ',' << (r.initial ? 1 : 0) << ',' << r.probe.t << ','
       << r.probe.v << ',' << r.temporal_distance << ',' << r.spatial_distance << ',' << r.magnitude << ','
       << r.response << ',' << r.ceiling << ',';
    if (r.tight_ceiling) os << *r.tight_ceiling;
    os << '\n';
  }
}

void write_cr_csv(std::ostream& os, const CrSweep& s) {
  os << "k,r,alg_cost,ratio,gate,condition_met,bound\n" << std::setprecision(15);
  for (const auto& c : s.cells) {
    os << c.k << ',' << c.r << ',' << c.alg_cost << ',' << c.ratio << ',' << c.bound.gate << ','
       << (c.bound.condition_met ? 1 : 0) << ',' << c.bound.bound << '\n';
  }
}

void write_estimator_csv(std::ostream& os, const SpatialLowerReport& s) {
  os << "r,mean_excess,expected_excess,lambda_S_pow_r\n" << std::setprecision(15);
  for (const auto& row : s.rows) {
    os << row.r << ',' << row.mean_excess << ',' << row.expected_excess << ',' << row.lambda_S_pow_r << '\n';
  }
}

}  // namespace netoco
