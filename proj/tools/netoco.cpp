// netoco command line: runs LPC, offline optima and the checked experiments.
// Exit codes: 0 all checks passed, 1 some inequality failed, 2 usage or
// input error.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <netoco/error.hpp>
#include <netoco/experiments.hpp>
#include <netoco/io.hpp>
#include <netoco/lpc.hpp>
#include <netoco/solver.hpp>
#include <netoco/theory.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::string out_dir = ".";
  std::string backend = "active-set";
  double tolerance = 1e-9;
};

json load(const Common& c) {
  if (c.config.empty()) return json::object();
  return json::parse(netoco::read_config(c.config));
}

netoco::SolverSettings settings_of(const Common& c) {
  netoco::SolverSettings s;
  s.backend = netoco::backend_from_string(c.backend);
  s.tolerance = c.tolerance;
  return s;
}

template <class T>
T pick(const std::optional<T>& flag, const json& cfg, const char* key, T fallback) {
  if (flag) return *flag;
  if (cfg.contains(key)) return cfg.at(key).get<T>();
  return fallback;
}

json default_instance() {
  return {{"graph", {{"type", "cycle"}, {"n", 8}}},
          {"horizon", 10},
          {"dim", 1},
          {"seed", 3},
          {"constants", {{"mu", 1.0}, {"ell_f", 2.0}, {"ell_T", 0.25}, {"ell_S", 0.125}}}};
}

// The instance lives under "instance", or at top level for short configs.
netoco::Instance instance_of(const json& cfg) {
  if (cfg.contains("instance")) return netoco::instance_from_config(cfg.at("instance").dump());
  if (cfg.contains("graph") || cfg.contains("file")) return netoco::instance_from_config(cfg.dump());
  return netoco::instance_from_config(default_instance().dump());
}

fs::path out_path(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

void save(const Common& c, const std::string& name, const std::string& content) {
  netoco::write_file(out_path(c, name).string(), content);
}

template <class Writer>
void save_csv(const Common& c, const std::string& name, Writer&& write) {
  std::ofstream os(out_path(c, name));
  write(os);
}

int verdict(std::initializer_list<const netoco::Check*> checks) {
  int code = 0;
  for (const auto* ch : checks) {
    std::cout << (ch->passed ? "PASS " : "FAIL ") << ch->inequality;
    if (!ch->passed) std::cout << "  witness: " << ch->witness;
    std::cout << "\n";
    if (!ch->passed) code = 1;
  }
  return code;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config, "TOML or JSON config file")->check(CLI::ExistingFile);
  app->add_option("-o,--out", c.out_dir, "output directory");
  app->add_option("--backend", c.backend, "QP backend: active-set or projected-gradient");
  app->add_option("--tolerance", c.tolerance, "KKT residual tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netoco: localized predictive control on networks"};
  app.require_subcommand(1);
  Common common;

  std::optional<int> k, r, t, v, blocks, block_size, seeds, max_degree;
  std::optional<double> delta, ell, mu, ell_f, ell_T, ell_S;
  std::optional<std::uint64_t> seed;
  std::vector<int> k_list, r_list;

  auto* run_lpc = app.add_subcommand("run-lpc", "run LPC and write the trajectory");
  auto* run_opt = app.add_subcommand("run-opt", "solve the offline optimum");
  auto* pert = app.add_subcommand("perturbation", "measure perturbation decay in one local window");
  auto* sweep = app.add_subcommand("cr-sweep", "competitive ratio over a (k, r) grid");
  auto* lower = app.add_subcommand("lower-bound", "Laplacian floor and local estimator demo");
  auto* pricing = app.add_subcommand("pricing", "pricing instance: cost ratio and revenue ratio");
  auto* theory = app.add_subcommand("theory", "print the constants table");
  auto* all = app.add_subcommand("check-all", "run every check on a config");
  for (auto* sub : {run_lpc, run_opt, pert, sweep, lower, pricing, theory, all}) add_common(sub, common);
  for (auto* sub : {run_lpc, pert, pricing, theory, all}) {
    sub->add_option("-k", k, "prediction horizon");
    sub->add_option("-r", r, "communication radius");
  }
  pert->add_option("-t", t, "window time");
  pert->add_option("-v,--vertex", v, "window agent");
  pert->add_option("--delta", delta, "relative perturbation size");
  pert->add_option("--seed", seed, "direction seed");
  sweep->add_option("--k-list", k_list, "prediction horizons")->delimiter(',');
  sweep->add_option("--r-list", r_list, "radii")->delimiter(',');
  lower->add_option("--blocks", blocks, "number of blocks N");
  lower->add_option("--block-size", block_size, "block size d");
  lower->add_option("--ell", ell, "spatial weight");
  lower->add_option("--r-list", r_list, "radii")->delimiter(',');
  lower->add_option("--seeds", seeds, "number of w samples");
  theory->add_option("--mu", mu);
  theory->add_option("--ell-f", ell_f);
  theory->add_option("--ell-T", ell_T);
  theory->add_option("--ell-S", ell_S);
  theory->add_option("--max-degree", max_degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with a zero code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const json cfg = load(common);
    const auto settings = settings_of(common);
    auto lpc_cfg = [&] {
      netoco::LpcConfig c;
      c.k = pick(k, cfg, "k", 2);
      c.r = pick(r, cfg, "r", 1);
      c.solver = settings;
      c.validate();
      return c;
    };

    if (run_lpc->parsed()) {
      auto inst = instance_of(cfg);
      auto traj = netoco::lpc_run(inst, lpc_cfg());
      save_csv(common, "lpc_trajectory.csv", [&](std::ostream& os) { netoco::write_trajectory_csv(os, traj); });
      save_csv(common, "lpc_costs.csv", [&](std::ostream& os) { netoco::write_costs_csv(os, traj); });
      save(common, "lpc_trajectory.json", netoco::trajectory_json(traj));
      std::cout << "cost(ALG) = " << traj.total_cost() << "\n";
      return 0;
    }
    if (run_opt->parsed()) {
      auto inst = instance_of(cfg);
      auto opt = netoco::offline_opt(inst, settings);
      save_csv(common, "opt_trajectory.csv",
               [&](std::ostream& os) { netoco::write_trajectory_csv(os, opt.trajectory); });
      save_csv(common, "opt_costs.csv", [&](std::ostream& os) { netoco::write_costs_csv(os, opt.trajectory); });
      save(common, "opt_trajectory.json", netoco::trajectory_json(opt.trajectory));
      std::cout << "cost(OPT) = " << opt.trajectory.total_cost() << "  (kkt residual "
                << opt.report.kkt_residual << ", " << netoco::to_string(opt.report.method) << ")\n";
      return 0;
    }
    if (pert->parsed()) {
      auto inst = instance_of(cfg);
      auto c = lpc_cfg();
      netoco::PerturbationOptions opts;
      opts.delta = pick(delta, cfg, "delta", opts.delta);
      opts.seed = pick(seed, cfg, "seed", opts.seed);
      auto s = netoco::perturbation_sweep(inst, pick(t, cfg, "t", 1), pick(v, cfg, "v", 0), c.k, c.r, opts);
      save_csv(common, "perturbation.csv", [&](std::ostream& os) { netoco::write_perturbation_csv(os, s); });
      save(common, "perturbation.json", netoco::report_json(s, cfg.dump()));
      std::cout << s.records.size() << " records\n";
      return verdict({&s.basic_check, &s.tight_check});
    }
    if (sweep->parsed()) {
      auto inst = instance_of(cfg);
      if (k_list.empty()) k_list = cfg.value("k_list", std::vector<int>{2, 3, 4, 5, 6});
      if (r_list.empty()) r_list = cfg.value("r_list", std::vector<int>{1, 2, 3, 4});
      auto s = netoco::cr_sweep(inst, k_list, r_list, settings);
      save_csv(common, "cr_sweep.csv", [&](std::ostream& os) { netoco::write_cr_csv(os, s); });
      save(common, "cr_sweep.json", netoco::report_json(s, cfg.dump()));
      for (const auto& cell : s.cells) {
        std::cout << "k=" << cell.k << " r=" << cell.r << " CR=" << cell.ratio << "\n";
      }
      return verdict({&s.ceiling, &s.monotone_k, &s.monotone_r});
    }
    if (lower->parsed()) {
      if (r_list.empty()) r_list = cfg.value("r_list", std::vector<int>{1, 2, 3, 4});
      int n = pick(seeds, cfg, "seeds", 50);
      std::vector<std::uint64_t> seed_list;
      for (int i = 0; i < n; ++i) seed_list.push_back(static_cast<std::uint64_t>(i));
      auto s = netoco::spatial_lower_demo(pick(blocks, cfg, "blocks", 10), pick(block_size, cfg, "block_size", 2),
                                          pick(ell, cfg, "ell", 4.0), r_list, seed_list);
      save_csv(common, "lower_bound.csv", [&](std::ostream& os) { netoco::write_estimator_csv(os, s); });
      save(common, "lower_bound.json", netoco::report_json(s, cfg.dump()));
      for (const auto& row : s.rows) {
        std::cout << "r=" << row.r << " excess=" << row.mean_excess << " lambda_S^r=" << row.lambda_S_pow_r << "\n";
      }
      return verdict({&s.floor.check, &s.decreasing});
    }
    if (pricing->parsed()) {
      json graph = cfg.value("graph", json{{"type", "path"}, {"n", 10}});
      auto net = netoco::network_from_json(graph.dump());
      json pj = cfg.value("pricing", json{{"random", {{"horizon", 8}, {"seed", 0}}}});
      auto params = netoco::pricing_params_from_json(pj.dump(), net);
      auto rep = netoco::pricing_demo(params, net, lpc_cfg());
      save(common, "pricing.json", netoco::report_json(rep, cfg.dump()));
      std::cout << "cost CR = " << rep.cost_ratio << "  revenue ratio = " << rep.revenue_ratio
                << "  floor = " << rep.lemma_floor << "\n";
      return verdict({&rep.lemma});
    }
    if (theory->parsed()) {
      int D = pick(max_degree, cfg, "max_degree", 3);
      auto p = netoco::decay_params_basic(pick(mu, cfg, "mu", 1.0), pick(ell_f, cfg, "ell_f", 1.0),
                                          pick(ell_T, cfg, "ell_T", 0.0), pick(ell_S, cfg, "ell_S", 0.0), D,
                                          netoco::BoundaryGrowth::exponential(D));
      auto c = lpc_cfg();
      std::string table = netoco::constants_json(p, c.k, c.r);
      save(common, "constants.json", table);
      std::cout << table;
      return 0;
    }
    if (all->parsed()) {
      auto inst = instance_of(cfg);
      auto c = lpc_cfg();
      auto opt = netoco::offline_opt(inst, settings).trajectory;
      auto alg = netoco::lpc_run(inst, c);
      auto acc = netoco::error_accumulation_check(inst, alg, opt, settings);
      auto step = netoco::per_step_bound_check(inst, c, alg, opt);
      netoco::PerturbationOptions opts;
      auto s = netoco::perturbation_sweep(inst, 1, 0, c.k, c.r, opts);
      std::vector<int> ks = cfg.value("k_list", std::vector<int>{2, 3, 4});
      std::vector<int> rs = cfg.value("r_list", std::vector<int>{1, 2});
      auto cr = netoco::cr_sweep(inst, ks, rs, settings);
      save(common, "errors.json", netoco::report_json(acc, step, cfg.dump()));
      save(common, "perturbation.json", netoco::report_json(s, cfg.dump()));
      save(common, "cr_sweep.json", netoco::report_json(cr, cfg.dump()));
      return verdict({&acc.check, &step.check, &s.basic_check, &s.tight_check, &cr.ceiling});
    }
  } catch (const netoco::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
