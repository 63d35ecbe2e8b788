// sibsim — social-influence bandit simulator CLI.
//
// Subcommands:
//   run        execute a policy x seed grid from a config file
//   bounds     print the theoretical regret bounds for a config
//   ingest     ratings + social edges -> u0.csv / p.csv
//   gen-graph  write a synthetic influence graph as edge-list CSV

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sib/data_pipeline.hpp"
#include "sib/experiment.hpp"
#include "sib/graph_gen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"social-influence bandit simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run a policy x seed experiment grid");
  std::string run_config;
  std::vector<std::string> run_policies;
  std::vector<uint64_t> run_seeds;
  std::string run_out = "results";
  bool run_timing = false;
  int run_workers = -1;
  run_cmd->add_option("--config", run_config, "config file (key = value lines)")->required();
  run_cmd->add_option("--policy", run_policies, "override the config's policy list");
  run_cmd->add_option("--seeds", run_seeds, "override the config's seed list");
  run_cmd->add_option("--out", run_out, "output directory");
  run_cmd->add_flag("--timing", run_timing, "record measured wall time in the CSVs");
  run_cmd->add_option("--workers", run_workers, "parallel worker budget");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "print theoretical regret bounds");
  std::string bounds_config;
  bounds_cmd->add_option("--config", bounds_config, "config file")->required();

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "build u0.csv / p.csv from ratings and edges");
  std::string ingest_ratings, ingest_edges, ingest_out = "data";
  int ingest_min_reviews = 1500;
  double ingest_lambda = 1e-3;
  double ingest_teleport = 1e-3;
  ingest_cmd->add_option("--ratings", ingest_ratings, "ratings CSV (user,item,stars,f1..fd)")->required();
  ingest_cmd->add_option("--edges", ingest_edges, "edge CSV (src,dst)")->required();
  ingest_cmd->add_option("--out", ingest_out, "output directory");
  ingest_cmd->add_option("--min-reviews", ingest_min_reviews, "review-count cutoff per user");
  ingest_cmd->add_option("--lambda", ingest_lambda, "per-user ridge strength");
  ingest_cmd->add_option("--teleport", ingest_teleport, "ergodicity blend for P");

  // gen-graph
  auto* gen_cmd = app.add_subcommand("gen-graph", "write a synthetic influence graph");
  std::string gen_model = "cmp", gen_out = "graph.csv";
  int gen_n = 10;
  uint64_t gen_seed = 1;
  gen_cmd->add_option("--model", gen_model, "cmp, er or ba")->required();
  gen_cmd->add_option("--n", gen_n, "user count")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      sib::ExperimentConfig cfg = sib::load_config(run_config);
      if (!run_policies.empty()) cfg.policies = run_policies;
      if (!run_seeds.empty()) cfg.seeds = run_seeds;
      if (run_timing) cfg.timing = true;
      if (run_workers >= 0) cfg.workers = run_workers;
      const auto errs = sib::validate(cfg);
      if (!errs.empty()) {
        std::cerr << "invalid config:\n";
        for (const auto& e : errs) std::cerr << "  " << e << "\n";
        return 1;
      }
      sib::run_grid(cfg, run_out);
      std::cout << sib::report_bounds(cfg);
      std::cout << "results written to " << run_out << "/\n";
    } else if (*bounds_cmd) {
      sib::ExperimentConfig cfg = sib::load_config(bounds_config);
      std::cout << sib::report_bounds(cfg);
    } else if (*ingest_cmd) {
      auto table = sib::load_ratings_csv(ingest_ratings);
      table = sib::filter_users(table, ingest_min_reviews);
      if (table.rows.empty()) {
        std::cerr << "no users survive the " << ingest_min_reviews << "-review cutoff\n";
        return 1;
      }
      std::vector<std::string> users;
      const sib::ProfileMatrix U0 = sib::regress_profiles(table, ingest_lambda, &users);
      const sib::InfluenceGraph graph =
          sib::build_social_P(sib::load_edges_csv(ingest_edges), users, ingest_teleport);
      std::filesystem::create_directories(ingest_out);
      sib::write_matrix_csv(ingest_out + "/u0.csv", U0);
      sib::write_matrix_csv(ingest_out + "/p.csv", graph.P);
      std::cout << "retained " << users.size() << " users, d = " << table.d << "\n";
      std::cout << "wrote " << ingest_out << "/u0.csv and " << ingest_out << "/p.csv\n";
    } else if (*gen_cmd) {
      sib::InfluenceGraph graph;
      if (gen_model == "cmp") graph = sib::complete_graph(gen_n);
      else if (gen_model == "er") graph = sib::erdos_renyi(gen_n, gen_seed);
      else if (gen_model == "ba") graph = sib::barabasi_albert(gen_n, gen_seed);
      else {
        std::cerr << "unknown model '" << gen_model << "' (expected cmp, er or ba)\n";
        return 1;
      }
      sib::save_edge_csv(graph, gen_out);
      std::cout << "wrote " << gen_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
