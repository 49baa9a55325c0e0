#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "infmin/ingest.hpp"
#include "infmin/runner.hpp"

namespace {

using namespace infmin;

struct CommonOpts {
  std::string input;
  bool undirected = false;
  std::string prob = "file";
  std::string model = "ic";
  std::string seeds;
  std::uint64_t rng_seed = 0;
  std::int64_t theta = 10'000;
  std::uint32_t extract_nodes = 0;
  std::uint32_t extract_edges = 0;
};

void add_dataset_options(CLI::App* cmd, CommonOpts& o, bool with_seeds) {
  cmd->add_option("--input", o.input, "edge list file")->required();
  cmd->add_flag("--undirected", o.undirected, "expand each edge to both directions");
  cmd->add_option("--prob", o.prob, "probability model")
      ->check(CLI::IsMember({"tr", "wc", "file"}));
  cmd->add_option("--model", o.model, "diffusion model")
      ->check(CLI::IsMember({"ic", "lt"}));
  cmd->add_option("--rng-seed", o.rng_seed, "master random seed");
  if (with_seeds) {
    cmd->add_option("--seeds", o.seeds, "seed file path or random:K")->required();
    cmd->add_option("--extract-nodes", o.extract_nodes,
                    "extract a subgraph of at least this many nodes first");
    cmd->add_option("--extract-edges", o.extract_edges,
                    "extract a subgraph of at least this many induced edges first");
  }
}

RunConfig make_config(const CommonOpts& o) {
  RunConfig cfg;
  cfg.dataset.path = o.input;
  cfg.dataset.directed = !o.undirected;
  cfg.dataset.prob_model = o.prob == "tr"   ? ProbModel::TR
                           : o.prob == "wc" ? ProbModel::WC
                                            : ProbModel::Explicit;
  cfg.model = o.model == "lt" ? Model::LT : Model::IC;
  cfg.master_seed = o.rng_seed;
  cfg.theta = o.theta;
  cfg.extract_nodes = o.extract_nodes;
  cfg.extract_edges = o.extract_edges;
  if (o.seeds.rfind("random:", 0) == 0) {
    cfg.seeds.random = true;
    cfg.seeds.k = static_cast<std::uint32_t>(std::stoul(o.seeds.substr(7)));
  } else {
    cfg.seeds.file = o.seeds;
  }
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"influence minimization via node/edge blocking"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread count (0 = runtime default)");

  // --- run ---------------------------------------------------------------
  CommonOpts run_opts;
  std::string run_strategy = "node", run_algo = "ag", run_eval = "mcs", run_bg_mode = "fresh";
  std::vector<std::uint32_t> run_budgets{1};
  std::int64_t run_mcs_rounds = 10'000, run_eval_rounds = 100'000;
  std::uint32_t run_repeats = 5;
  double run_time_limit = 86'400.0;
  bool run_timings = false, run_gr_topup = false;
  std::string run_out, run_csv;

  CLI::App* run_cmd = app.add_subcommand("run", "run a blocking algorithm");
  add_dataset_options(run_cmd, run_opts, true);
  run_cmd->add_option("--strategy", run_strategy)->check(CLI::IsMember({"node", "edge"}));
  run_cmd->add_option("--algo", run_algo)
      ->check(CLI::IsMember({"exact", "rand", "outdeg", "bg", "ag", "gr"}));
  run_cmd->add_option("--budget", run_budgets, "budget or comma-separated sweep")
      ->delimiter(',');
  run_cmd->add_option("--theta", run_opts.theta, "sampled worlds per decrease table");
  run_cmd->add_option("--mcs-rounds", run_mcs_rounds, "baseline simulation rounds");
  run_cmd->add_option("--eval-rounds", run_eval_rounds, "final evaluation rounds");
  run_cmd->add_option("--eval", run_eval, "final spread evaluator")
      ->check(CLI::IsMember({"mcs", "exact", "auto"}));
  run_cmd->add_option("--repeats", run_repeats);
  run_cmd->add_option("--time-limit", run_time_limit, "seconds before aborting");
  run_cmd->add_option("--bg-mode", run_bg_mode, "baseline world reuse")
      ->check(CLI::IsMember({"fresh", "crn"}));
  run_cmd->add_flag("--gr-topup", run_gr_topup,
                    "let greedy replace fill budget past the seed out-degree");
  run_cmd->add_flag("--timings", run_timings, "include wall times in JSON output");
  run_cmd->add_option("--out", run_out, "JSON output path (- = stdout)");
  run_cmd->add_option("--csv", run_csv, "CSV path to append per-repeat rows");

  // --- inspect -----------------------------------------------------------
  CommonOpts ins_opts;
  std::string ins_strategy = "node", ins_out;
  CLI::App* ins_cmd = app.add_subcommand("inspect", "dump one decrease table as CSV");
  add_dataset_options(ins_cmd, ins_opts, true);
  ins_cmd->add_option("--strategy", ins_strategy)->check(CLI::IsMember({"node", "edge"}));
  ins_cmd->add_option("--theta", ins_opts.theta);
  ins_cmd->add_option("--out", ins_out, "CSV output path (- = stdout)");

  // --- stats -------------------------------------------------------------
  CommonOpts st_opts;
  CLI::App* st_cmd = app.add_subcommand("stats", "dataset statistics");
  add_dataset_options(st_cmd, st_opts, false);

  // --- extract -----------------------------------------------------------
  CommonOpts ex_opts;
  std::uint32_t ex_nodes = 0, ex_edges = 0;
  std::string ex_out;
  CLI::App* ex_cmd = app.add_subcommand("extract", "extract a neighborhood subgraph");
  add_dataset_options(ex_cmd, ex_opts, false);
  ex_cmd->add_option("--target-nodes", ex_nodes);
  ex_cmd->add_option("--target-edges", ex_edges);
  ex_cmd->add_option("--out", ex_out, "edge list output path")->required();

  // --- gen ---------------------------------------------------------------
  std::uint32_t gen_n = 10'000, gen_m = 100'000, gen_core = 0, gen_core_out = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic edge list");
  gen_cmd->add_option("--nodes", gen_n);
  gen_cmd->add_option("--edges", gen_m);
  gen_cmd->add_option("--core", gen_core, "dense core size");
  gen_cmd->add_option("--core-out", gen_core_out, "out-degree inside the core");
  gen_cmd->add_option("--rng-seed", gen_seed);
  gen_cmd->add_option("--out", gen_out, "edge list output path")->required();

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (run_cmd->parsed()) {
      RunConfig cfg = make_config(run_opts);
      cfg.strategy = run_strategy == "edge" ? BlockKind::Edge : BlockKind::Node;
      cfg.algorithm = run_algo == "exact"    ? Algorithm::Exact
                      : run_algo == "rand"   ? Algorithm::Rand
                      : run_algo == "outdeg" ? Algorithm::OutDeg
                      : run_algo == "bg"     ? Algorithm::BG
                      : run_algo == "gr"     ? Algorithm::GR
                                             : Algorithm::AG;
      cfg.budgets = run_budgets;
      cfg.mcs_rounds = run_mcs_rounds;
      cfg.eval_rounds = run_eval_rounds;
      cfg.eval = run_eval == "exact" ? EvalMode::ExactOracle
                 : run_eval == "auto" ? EvalMode::Auto
                                      : EvalMode::Mcs;
      cfg.repeats = run_repeats;
      cfg.time_limit_s = run_time_limit;
      cfg.bg_mode = run_bg_mode == "crn" ? McsMode::CommonRandomNumbers
                                         : McsMode::FreshWorlds;
      cfg.gr_top_up = run_gr_topup;
      cfg.include_timings = run_timings;

      RunRecord rec = run(cfg);
      if (!run_out.empty()) write_text(run_out, run_record_json(rec));
      if (!run_csv.empty()) append_run_csv(rec, run_csv);
      if (run_out.empty() && run_csv.empty()) std::cout << run_record_json(rec);
      if (rec.timed_out) {
        std::cerr << "time limit exceeded; record flagged as partial\n";
        return 3;
      }
      return 0;
    }
    if (ins_cmd->parsed()) {
      RunConfig cfg = make_config(ins_opts);
      cfg.strategy = ins_strategy == "edge" ? BlockKind::Edge : BlockKind::Node;
      write_text(ins_out, inspect_delta(cfg));
      return 0;
    }
    if (st_cmd->parsed()) {
      LoadResult loaded = load_edge_list(st_opts.input, !st_opts.undirected);
      DatasetStats st = stats(loaded.graph);
      std::printf("n %u\nm %u\nd_avg %.6g\nd_max %u\nself_loops_dropped %u\n", st.n,
                  st.m, st.d_avg, st.d_max, loaded.self_loops_dropped);
      return 0;
    }
    if (ex_cmd->parsed()) {
      if ((ex_nodes == 0) == (ex_edges == 0))
        throw ConfigError("extract: give exactly one of --target-nodes/--target-edges");
      LoadResult loaded = load_edge_list(ex_opts.input, !ex_opts.undirected);
      ProbGraph sub = extract_subgraph(loaded.graph, ex_edges ? ex_edges : ex_nodes,
                                       ex_edges != 0, ex_opts.rng_seed);
      write_edge_list(sub, ex_out, loaded.has_probabilities);
      std::fprintf(stderr, "extracted %u nodes, %u edges\n", sub.node_count(),
                   sub.edge_count());
      return 0;
    }
    if (gen_cmd->parsed()) {
      ProbGraph g = synthetic_graph(gen_n, gen_m, gen_core, gen_core_out, gen_seed);
      write_edge_list(g, gen_out, false);
      std::fprintf(stderr, "generated %u nodes, %u edges\n", g.node_count(),
                   g.edge_count());
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const TimeoutError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
