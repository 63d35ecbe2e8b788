#include "sib/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sib/baselines.hpp"
#include "sib/bounds.hpp"
#include "sib/data_pipeline.hpp"
#include "sib/graph_gen.hpp"
#include "sib/policy_linrel.hpp"
#include "sib/policy_linucb.hpp"
#include "sib/policy_thompson.hpp"

namespace sib {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::vector<std::string> errors;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section header
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n") cfg.n = std::stoi(value);
      else if (key == "d") cfg.d = std::stoi(value);
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else if (key == "sigma") cfg.sigma = std::stod(value);
      else if (key == "horizon") cfg.horizon = std::stoi(value);
      else if (key == "catalog") cfg.catalog = value;
      else if (key == "catalog_size") cfg.catalog_size = std::stoi(value);
      else if (key == "catalog_file") cfg.catalog_file = value;
      else if (key == "graph") cfg.graph = value;
      else if (key == "graph_file") cfg.graph_file = value;
      else if (key == "teleport") cfg.teleport = std::stod(value);
      else if (key == "dynamics") cfg.dynamics = value;
      else if (key == "policies") cfg.policies = split_list(value);
      else if (key == "delta") cfg.delta = std::stod(value);
      else if (key == "beta_scale") cfg.beta_scale = std::stod(value);
      else if (key == "lambda") cfg.lambda = std::stod(value);
      else if (key == "kappa") cfg.kappa = std::stod(value);
      else if (key == "ts_mode") cfg.ts_mode = value;
      else if (key == "linucb_c") cfg.linucb_c = std::stod(value);
      else if (key == "linucb_max_iter") cfg.linucb_max_iter = std::stoi(value);
      else if (key == "linucb_tol") cfg.linucb_tol = std::stod(value);
      else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : split_list(value)) cfg.seeds.push_back(std::stoull(s));
      } else if (key == "u0_file") cfg.u0_file = value;
      else if (key == "timing") cfg.timing = (value == "true" || value == "1" || value == "on");
      else if (key == "workers") cfg.workers = std::stoi(value);
      else errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::exception&) {
      errors.push_back("line " + std::to_string(lineno) + ": cannot parse value for '" + key + "'");
    }
  }
  if (!errors.empty()) {
    std::string msg = "config errors:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  return cfg;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  const std::set<std::string> known_policies = {"linrel", "ts", "regression", "rand", "linucb"};
  if (cfg.n < 1) errs.push_back("n: must be at least 1");
  if (cfg.d < 1) errs.push_back("d: must be at least 1");
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) errs.push_back("alpha: must lie in (0,1]");
  if (cfg.sigma < 0.0 || !std::isfinite(cfg.sigma)) errs.push_back("sigma: must be finite and nonnegative");
  if (cfg.horizon < 1) errs.push_back("horizon: must be at least 1");
  if (cfg.catalog != "ball" && cfg.catalog != "finite") errs.push_back("catalog: must be 'ball' or 'finite'");
  if (cfg.catalog == "finite" && cfg.catalog_file.empty() && cfg.catalog_size < 1) {
    errs.push_back("catalog_size: must be at least 1");
  }
  if (cfg.graph != "cmp" && cfg.graph != "er" && cfg.graph != "ba" && cfg.graph != "file") {
    errs.push_back("graph: must be one of cmp, er, ba, file");
  }
  if (cfg.graph == "file" && cfg.graph_file.empty()) errs.push_back("graph_file: required when graph = file");
  if (cfg.teleport < 0.0 || cfg.teleport >= 1.0) errs.push_back("teleport: must lie in [0,1)");
  if (cfg.dynamics != "expected" && cfg.dynamics != "stochastic" && cfg.dynamics != "fixpoint") {
    errs.push_back("dynamics: must be one of expected, stochastic, fixpoint");
  }
  if (cfg.policies.empty()) errs.push_back("policies: at least one policy required");
  for (const auto& p : cfg.policies) {
    if (!known_policies.count(p)) errs.push_back("policies: unknown policy '" + p + "'");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) errs.push_back("delta: must lie in (0,1)");
  if (!(cfg.beta_scale > 0.0)) errs.push_back("beta_scale: must be positive");
  if (!(cfg.lambda > 0.0)) errs.push_back("lambda: must be positive");
  if (!(cfg.kappa > 0.0)) errs.push_back("kappa: must be positive");
  if (cfg.ts_mode != "recompute" && cfg.ts_mode != "incremental") {
    errs.push_back("ts_mode: must be 'recompute' or 'incremental'");
  }
  if (cfg.seeds.empty()) errs.push_back("seeds: at least one seed required");
  const bool has_ts = std::count(cfg.policies.begin(), cfg.policies.end(), "ts") > 0;
  if (has_ts && cfg.sigma <= 0.0) errs.push_back("sigma: policy 'ts' needs sigma > 0");
  const bool has_linucb = std::count(cfg.policies.begin(), cfg.policies.end(), "linucb") > 0;
  if (has_linucb && cfg.catalog != "ball") {
    errs.push_back("catalog: policy 'linucb' supports only the unit ball");
  }
  return errs;
}

SimConfig make_sim_config(const ExperimentConfig& cfg, uint64_t seed) {
  SimConfig sim;
  sim.alpha = cfg.alpha;
  sim.sigma = cfg.sigma;
  sim.horizon = cfg.horizon;
  sim.ridge_lambda = cfg.lambda;
  sim.seed = seed;
  if (cfg.dynamics == "stochastic") sim.dynamics = DynamicsMode::Stochastic;
  else if (cfg.dynamics == "fixpoint") sim.dynamics = DynamicsMode::Fixpoint;
  else sim.dynamics = DynamicsMode::Expected;

  RngStream env_rng(hash_tag(seed, "env"));
  if (cfg.catalog == "ball") {
    sim.catalog = Catalog::unit_ball(cfg.d);
  } else if (!cfg.catalog_file.empty()) {
    sim.catalog = Catalog::load_csv(cfg.catalog_file);
  } else {
    std::vector<Vector> items;
    items.reserve(static_cast<size_t>(cfg.catalog_size));
    for (int k = 0; k < cfg.catalog_size; ++k) {
      Vector v(cfg.d);
      for (int j = 0; j < cfg.d; ++j) v(j) = env_rng.uniform();
      items.push_back(std::move(v));
    }
    sim.catalog = Catalog::finite(std::move(items));
  }

  if (!cfg.u0_file.empty()) {
    sim.U0 = load_matrix_csv(cfg.u0_file);
    if (sim.U0.rows() != cfg.n || sim.U0.cols() != cfg.d) {
      throw std::runtime_error("u0_file: expected a " + std::to_string(cfg.n) + " x " +
                               std::to_string(cfg.d) + " matrix");
    }
  } else {
    sim.U0.resize(cfg.n, cfg.d);
    for (int i = 0; i < cfg.n; ++i) {
      for (int j = 0; j < cfg.d; ++j) sim.U0(i, j) = env_rng.uniform();
    }
  }

  if (cfg.graph == "cmp") sim.graph = complete_graph(cfg.n);
  else if (cfg.graph == "er") sim.graph = erdos_renyi(cfg.n, hash_tag(seed, "graph"));
  else if (cfg.graph == "ba") sim.graph = barabasi_albert(cfg.n, hash_tag(seed, "graph"));
  else {
    // Edge-list files carry a src,dst,weight header; anything else is read
    // as a dense row-stochastic matrix (e.g. the ingest pipeline's p.csv,
    // which already has its teleport blend applied).
    std::ifstream probe(cfg.graph_file);
    std::string first_line;
    std::getline(probe, first_line);
    if (first_line.rfind("src,", 0) == 0) {
      sim.graph = load_edge_csv(cfg.graph_file, cfg.teleport);
    } else {
      sim.graph = InfluenceGraph::from_matrix(load_matrix_csv(cfg.graph_file));
    }
  }
  if (sim.graph.n != cfg.n) {
    throw std::runtime_error("graph_file: node count " + std::to_string(sim.graph.n) +
                             " does not match n = " + std::to_string(cfg.n));
  }
  return sim;
}

RunResult run_policy(const std::string& policy, const SimConfig& sim,
                     const ExperimentConfig& cfg) {
  if (policy == "linrel") return run_linrel(sim, LinRelConfig{cfg.delta, cfg.beta_scale});
  if (policy == "ts") {
    ThompsonConfig tc;
    tc.kappa = cfg.kappa;
    tc.mode = cfg.ts_mode == "incremental" ? ThompsonConfig::Mode::Incremental
                                           : ThompsonConfig::Mode::Recompute;
    return run_thompson(sim, tc);
  }
  if (policy == "regression") return run_regression(sim);
  if (policy == "rand") return run_rand(sim);
  if (policy == "linucb") {
    return run_linucb(sim, LinUcbConfig{cfg.linucb_c, cfg.linucb_max_iter, cfg.linucb_tol});
  }
  throw std::invalid_argument("unknown policy: " + policy);
}

void run_grid(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto errs = validate(cfg);
  if (!errs.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  std::filesystem::create_directories(out_dir);

  struct Cell {
    std::string policy;
    uint64_t seed;
    RunResult result;
    std::exception_ptr error;
  };
  std::vector<Cell> cells;
  for (const auto& policy : cfg.policies) {
    for (uint64_t seed : cfg.seeds) cells.push_back(Cell{policy, seed, {}, nullptr});
  }

  unsigned budget = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  budget = std::min<unsigned>(budget, static_cast<unsigned>(cells.size()));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      Cell& cell = cells[k];
      try {
        const SimConfig sim = make_sim_config(cfg, cell.seed);
        cell.result = run_policy(cell.policy, sim, cfg);
      } catch (...) {
        cell.error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < budget; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& cell : cells) {
    if (cell.error) std::rethrow_exception(cell.error);
  }

  // regret.csv — one row per recorded round, deterministic cell order.
  {
    std::ofstream out(out_dir + "/regret.csv");
    out << "run_id,policy,seed,t,inst_regret,cum_regret,wall_ns\n";
    for (const auto& cell : cells) {
      const std::string run_id = cell.policy + "-" + std::to_string(cell.seed);
      for (const auto& rec : cell.result.records) {
        out << run_id << ',' << cell.policy << ',' << cell.seed << ',' << rec.t << ','
            << fmt(rec.inst_regret) << ',' << fmt(rec.cum_regret) << ','
            << (cfg.timing ? rec.wall_ns : 0) << '\n';
      }
    }
  }

  // summary.csv — per-policy mean/stderr of R(T) and mean per-round time.
  {
    std::ofstream out(out_dir + "/summary.csv");
    out << "policy,mean_R_T,stderr_R_T,mean_ns_per_round\n";
    for (const auto& policy : cfg.policies) {
      std::vector<double> finals;
      double ns_total = 0.0;
      long rounds = 0;
      for (const auto& cell : cells) {
        if (cell.policy != policy) continue;
        finals.push_back(cell.result.total_regret());
        for (const auto& rec : cell.result.records) {
          ns_total += static_cast<double>(rec.wall_ns);
          ++rounds;
        }
      }
      const double k = static_cast<double>(finals.size());
      double mean = 0.0;
      for (double f : finals) mean += f;
      mean /= k;
      double var = 0.0;
      for (double f : finals) var += (f - mean) * (f - mean);
      const double stderr_rt = finals.size() > 1 ? std::sqrt(var / (k - 1.0) / k) : 0.0;
      const double mean_ns = cfg.timing && rounds > 0 ? ns_total / static_cast<double>(rounds) : 0.0;
      out << policy << ',' << fmt(mean) << ',' << fmt(stderr_rt) << ',' << fmt(mean_ns) << '\n';
    }
  }

  // per-policy mean regret curves, for the plot script
  for (const auto& policy : cfg.policies) {
    std::ofstream out(out_dir + "/curve_" + policy + ".csv");
    out << "t,mean_cum_regret,stderr\n";
    for (int t = 1; t <= cfg.horizon; ++t) {
      std::vector<double> vals;
      for (const auto& cell : cells) {
        if (cell.policy != policy) continue;
        vals.push_back(cell.result.records[static_cast<size_t>(t - 1)].cum_regret);
      }
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= static_cast<double>(vals.size());
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      const double se = vals.size() > 1
                            ? std::sqrt(var / (static_cast<double>(vals.size()) - 1.0) /
                                        static_cast<double>(vals.size()))
                            : 0.0;
      out << t << ',' << fmt(mean) << ',' << fmt(se) << '\n';
    }
  }

  emit_plots(cfg.policies, out_dir);

  std::ofstream bounds_out(out_dir + "/bounds.txt");
  bounds_out << report_bounds(cfg);
}

std::string report_bounds(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const int T = cfg.horizon;
  out << "theoretical regret bounds (n=" << cfg.n << ", d=" << cfg.d << ", delta=" << cfg.delta
      << ", T=" << T << ")\n";
  out << "  beta_T (confidence-set schedule): " << beta_t(T, cfg.n, cfg.d, cfg.delta) << "\n";
  out << "  confidence-set C2 bound:          "
      << linrel_regret_bound(T, cfg.n, cfg.d, cfg.delta, ConfidenceSet::C2) << "\n";
  out << "  confidence-set C1 bound:          "
      << linrel_regret_bound(T, cfg.n, cfg.d, cfg.delta, ConfidenceSet::C1) << "\n";
  out << "  posterior-sampling beta_T:        " << ts_beta(T, cfg.n, cfg.d, cfg.delta) << "\n";
  out << "  posterior-sampling Bayes bound:   "
      << ts_bayes_regret_bound(T, cfg.n, cfg.d, cfg.delta) << "\n";
  return out.str();
}

std::string emit_plots(const std::vector<std::string>& policies, const std::string& out_dir) {
  const std::string path = out_dir + "/plot.gp";
  std::ofstream out(path);
  out << "# mean cumulative regret per policy\n";
  out << "set datafile separator ','\n";
  out << "set xlabel 't'\n";
  out << "set ylabel 'cumulative regret'\n";
  out << "set key left top\n";
  bool first = true;
  for (const auto& policy : policies) {
    const std::string curve = out_dir + "/curve_" + policy + ".csv";
    if (!std::filesystem::exists(curve)) continue;
    out << (first ? "plot " : "replot ") << "'curve_" << policy
        << ".csv' using 1:2 skip 1 with lines title '" << policy << "'\n";
    first = false;
  }
  return path;
}

}  // namespace sib
