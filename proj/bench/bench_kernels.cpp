// Timings for the sampled-world kernels: serial reference vs the OpenMP
// versions, and the decrease-table greedy vs the per-candidate baseline.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "infmin/decrease.hpp"
#include "infmin/ingest.hpp"
#include "infmin/minimize.hpp"
#include "infmin/runner.hpp"
#include "infmin/sampling.hpp"

using namespace infmin;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  std::uint32_t n = 10'000, m = 100'000;
  std::int64_t theta = 1'000;
  if (argc > 1) n = static_cast<std::uint32_t>(std::atoi(argv[1]));
  if (argc > 2) m = static_cast<std::uint32_t>(std::atoi(argv[2]));
  if (argc > 3) theta = std::atoll(argv[3]);

  ProbGraph base = synthetic_graph(n, m, /*core=*/200, /*core_out=*/30, /*seed=*/7);
  ProbGraph g = assign_tr(base, 7);
  std::vector<NodeId> seeds = random_seed_set(g, 10, 7);
  ProbGraph seeded(g.node_count(), g.edges(), seeds, Model::IC, g.original_ids());
  ProbGraph unified = seeded.unify_seeds();
  const NodeId s = unified.seeds()[0];

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("graph: n=%u m=%u, theta=%lld, threads=%d\n", unified.node_count(),
              unified.edge_count(), static_cast<long long>(theta), threads);

  SpreadEstimate e1, e2;
  const double mcs_ser = time_ms([&] { e1 = mcs_spread_serial(unified, s, theta, 42); });
  const double mcs_par = time_ms([&] { e2 = mcs_spread(unified, s, theta, 42); });
  std::printf("mcs_spread        serial %8.1f ms   parallel %8.1f ms   speedup %.2fx%s\n",
              mcs_ser, mcs_par, mcs_ser / mcs_par,
              e1.mean == e2.mean ? "" : "  MISMATCH");

  DecreaseTable d1, d2;
  const double desc_ser =
      time_ms([&] { d1 = node_decrease_table_serial(unified, s, theta, 42); });
  const double desc_par =
      time_ms([&] { d2 = node_decrease_table(unified, s, theta, 42); });
  std::printf("node decreases    serial %8.1f ms   parallel %8.1f ms   speedup %.2fx%s\n",
              desc_ser, desc_par, desc_ser / desc_par,
              d1.raw_counts == d2.raw_counts ? "" : "  MISMATCH");

  DecreaseTable de1, de2;
  const double split_ser =
      time_ms([&] { de1 = edge_decrease_table_serial(unified, s, theta / 2, 42); });
  const double split_par =
      time_ms([&] { de2 = edge_decrease_table(unified, s, theta / 2, 42); });
  std::printf("edge decreases    serial %8.1f ms   parallel %8.1f ms   speedup %.2fx%s\n",
              split_ser, split_par, split_ser / split_par,
              de1.raw_counts == de2.raw_counts ? "" : "  MISMATCH");

  AlgoOptions opt;
  opt.theta = 200;
  opt.mcs_rounds = 200;
  BlockResult ag, bg;
  const double ag_ms =
      time_ms([&] { ag = advanced_greedy(unified, s, 5, 42, BlockKind::Node, opt); });
  const double bg_ms =
      time_ms([&] { bg = baseline_greedy(unified, s, 5, 42, BlockKind::Node, opt); });
  std::printf("greedy b=5        advanced %6.1f ms  baseline %10.1f ms   ratio %.1fx\n",
              ag_ms, bg_ms, bg_ms / ag_ms);
  std::printf("  residuals: advanced %.3f  baseline %.3f\n", ag.residual.mean,
              bg.residual.mean);
  return 0;
}
