#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "infmin/sampling.hpp"
#include "support.hpp"

using namespace infmin;
using namespace testsupport;

namespace {

// Independent LT expected-spread oracle: recursive enumeration of every
// node's in-edge choice (a different code path from the production odometer).
double lt_spread_recursive(const ProbGraph& g, NodeId s) {
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!g.in_edges(v).empty()) nodes.push_back(v);
  std::vector<std::int64_t> selected(g.node_count(), -1);

  double total = 0.0;
  auto reachable = [&]() {
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::vector<NodeId> queue{s};
    seen[s] = 1;
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (EdgeId e : g.out_edges(queue[i])) {
        const NodeId v = g.edge(e).dst;
        if (selected[v] == static_cast<std::int64_t>(e) && !seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
          ++count;
        }
      }
    }
    return count;
  };
  std::function<void(std::size_t, double)> recurse = [&](std::size_t i, double pr) {
    if (pr == 0.0) return;
    if (i == nodes.size()) {
      total += pr * reachable();
      return;
    }
    const NodeId v = nodes[i];
    double none = 1.0;
    for (EdgeId e : g.in_edges(v)) {
      selected[v] = static_cast<std::int64_t>(e);
      recurse(i + 1, pr * g.edge(e).p);
      none -= g.edge(e).p;
    }
    selected[v] = -1;
    if (none > 1e-12) recurse(i + 1, pr * none);
  };
  recurse(0, 1.0);
  return total;
}

} // namespace

TEST_CASE("IC worlds always contain the certain edges") {
  ProbGraph g = toy_graph();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SampledWorld w = sample_world(g, seed);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).p == 1.0) CHECK(w.live[e] == 1);
    }
  }
}

TEST_CASE("IC uncertain-pair configurations match their probabilities") {
  ProbGraph g = toy_graph();
  const auto e58 = static_cast<EdgeId>(g.find_edge(V5, V8));
  const auto e98 = static_cast<EdgeId>(g.find_edge(V9, V8));
  const int rounds = 100'000;
  std::map<std::pair<bool, bool>, int> freq;
  const std::uint64_t stream = derive_seed(99, seed_salt::kWorlds);
  for (int i = 0; i < rounds; ++i) {
    SampledWorld w = sample_world(g, derive_seed(stream, i));
    ++freq[{w.live[e58] != 0, w.live[e98] != 0}];
  }
  auto frac = [&](bool a, bool b) { return static_cast<double>(freq[{a, b}]) / rounds; };
  CHECK(std::abs(frac(true, true) - 0.1) < 0.01);
  CHECK(std::abs(frac(true, false) - 0.4) < 0.01);
  CHECK(std::abs(frac(false, true) - 0.1) < 0.01);
  CHECK(std::abs(frac(false, false) - 0.4) < 0.01);
}

TEST_CASE("LT worlds pick one in-edge with the configured probabilities") {
  // node 2 has in-edges with p 0.3 (from 0) and 0.7 (from 1)
  ProbGraph g(3, {{0, 2, 0.3}, {1, 2, 0.7}}, {0}, Model::LT);
  const int rounds = 100'000;
  int from0 = 0, from1 = 0, none = 0;
  for (int i = 0; i < rounds; ++i) {
    SampledWorld w = sample_world(g, derive_seed(7, i));
    std::uint32_t live_in = w.live[0] + w.live[1];
    REQUIRE(live_in <= 1);
    if (w.live[0]) ++from0;
    else if (w.live[1]) ++from1;
    else ++none;
  }
  CHECK(std::abs(from0 / double(rounds) - 0.3) < 0.01);
  CHECK(std::abs(from1 / double(rounds) - 0.7) < 0.01);
  CHECK(none == 0);
}

TEST_CASE("LT leftover mass means no incoming edge") {
  ProbGraph g(3, {{0, 2, 0.25}, {1, 2, 0.25}}, {0}, Model::LT);
  const int rounds = 100'000;
  int none = 0;
  for (int i = 0; i < rounds; ++i) {
    SampledWorld w = sample_world(g, derive_seed(8, i));
    if (!w.live[0] && !w.live[1]) ++none;
  }
  CHECK(std::abs(none / double(rounds) - 0.5) < 0.01);
}

TEST_CASE("reachable_count") {
  ProbGraph g = toy_graph();
  SampledWorld w = sample_world(g, 1);

  SUBCASE("no live edges reaches only the source") {
    std::fill(w.live.begin(), w.live.end(), 0);
    CHECK(reachable_count(w, V1) == 1);
  }
  SUBCASE("all uncertain edges live reaches everything") {
    std::fill(w.live.begin(), w.live.end(), 1);
    CHECK(reachable_count(w, V1) == 9);
  }
  SUBCASE("both edges into v8 dead cuts off v8 and v7") {
    std::fill(w.live.begin(), w.live.end(), 1);
    w.live[static_cast<EdgeId>(g.find_edge(V5, V8))] = 0;
    w.live[static_cast<EdgeId>(g.find_edge(V9, V8))] = 0;
    CHECK(reachable_count(w, V1) == 7);
  }
}

TEST_CASE("mcs_spread approaches the exact toy value") {
  ProbGraph g = toy_graph();
  SpreadEstimate est = mcs_spread(g, V1, 100'000, 12345);
  CHECK(est.mean >= 7.60);
  CHECK(est.mean <= 7.72);
  CHECK(est.mean >= 1.0); // seed-count floor
  CHECK(est.mean <= 9.0); // node-count ceiling
}

TEST_CASE("mcs_spread is exact on deterministic graphs") {
  ProbGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}}, {0}, Model::IC);
  SpreadEstimate est = mcs_spread(g, 0, 1'000, 5, /*keep_counts=*/true);
  CHECK(est.mean == 3.0);
  for (std::uint32_t c : est.per_round_counts) CHECK(c == 3);
}

TEST_CASE("mcs_spread on the toy graph minus v5 is exactly 3") {
  ProbGraph g = toy_graph().remove_nodes(std::vector<NodeId>{V5});
  SpreadEstimate est = mcs_spread(g, V1, 10'000, 99);
  CHECK(est.mean == 3.0);
}

TEST_CASE("mcs_spread rejects zero rounds") {
  ProbGraph g = toy_graph();
  CHECK_THROWS_AS(mcs_spread(g, V1, 0, 1), std::invalid_argument);
}

TEST_CASE("per-round counts sum to the mean") {
  ProbGraph g = toy_graph();
  SpreadEstimate est = mcs_spread(g, V1, 5'000, 77, /*keep_counts=*/true);
  std::uint64_t total = 0;
  for (std::uint32_t c : est.per_round_counts) total += c;
  CHECK(est.mean == static_cast<double>(total) / 5'000.0);
}

TEST_CASE("parallel and serial estimates are bit-identical") {
  ProbGraph g = toy_graph();
  for (std::uint64_t seed : {1ULL, 42ULL, 1234567ULL}) {
    SpreadEstimate a = mcs_spread(g, V1, 4'000, seed, true);
    SpreadEstimate b = mcs_spread_serial(g, V1, 4'000, seed, true);
    CHECK(a.mean == b.mean);
    CHECK(a.per_round_counts == b.per_round_counts);
  }
}

TEST_CASE("same master seed reproduces identical worlds") {
  ProbGraph g = random_digraph(20, 0.2, {0.3, 0.8}, 5);
  for (int i = 0; i < 50; ++i) {
    SampledWorld a = sample_world(g, derive_seed(11, i));
    SampledWorld b = sample_world(g, derive_seed(11, i));
    CHECK(a.live == b.live);
  }
}

TEST_CASE("mcs_spread stays within four standard errors almost always") {
  ProbGraph g = toy_graph();
  const std::int64_t r = 2'000;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SpreadEstimate est = mcs_spread(g, V1, r, seed, true);
    double var = 0.0;
    for (std::uint32_t c : est.per_round_counts) {
      const double d = static_cast<double>(c) - est.mean;
      var += d * d;
    }
    var /= static_cast<double>(r - 1);
    if (std::abs(est.mean - 7.66) <= 4.0 * std::sqrt(var / static_cast<double>(r))) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("exact_spread golden values") {
  ProbGraph g = toy_graph();
  CHECK(exact_spread(g, V1) == doctest::Approx(7.66).epsilon(1e-12));
  CHECK(exact_spread(g.remove_nodes(std::vector<NodeId>{V2}), V1) ==
        doctest::Approx(6.66).epsilon(1e-12));
}

TEST_CASE("exact_spread on deterministic graphs is the reachable count") {
  ProbGraph g(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}}, {0}, Model::IC);
  CHECK(exact_spread(g, 0) == 3.0);
}

TEST_CASE("exact_spread enforces the uncertain-edge cap") {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 26; ++i) edges.push_back({i, i + 1, 0.5});
  ProbGraph g(27, std::move(edges), {0}, Model::IC);
  CHECK_THROWS_WITH_AS(exact_spread(g, 0), doctest::Contains("infeasible"),
                       std::runtime_error);
  CHECK_NOTHROW(exact_spread(g, 0, /*max_uncertain=*/26));
}

TEST_CASE("exact_spread agrees with full-edge enumeration") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ProbGraph g = random_digraph(5, 0.35, {0.2, 0.6, 1.0}, seed);
    if (g.edge_count() > 14) continue;
    CHECK(exact_spread(g, 0) ==
          doctest::Approx(enumerate_all_edges_spread(g, 0)).epsilon(1e-12));
  }
}

TEST_CASE("exact_spread does not depend on edge ordering") {
  ProbGraph g = toy_graph();
  std::vector<Edge> reversed(g.edges().rbegin(), g.edges().rend());
  ProbGraph permuted(g.node_count(), std::move(reversed), {V1}, Model::IC);
  CHECK(exact_spread(g, V1) == doctest::Approx(exact_spread(permuted, V1)).epsilon(1e-12));
}

TEST_CASE("exact_spread under LT matches a recursive enumeration") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ProbGraph g = random_lt_graph(6, 0.4, seed);
    CHECK(exact_spread(g, 0) ==
          doctest::Approx(lt_spread_recursive(g, 0)).epsilon(1e-10));
  }
}

TEST_CASE("LT sampling converges to the LT exact spread") {
  ProbGraph g = random_lt_graph(7, 0.4, 3);
  const double truth = exact_spread(g, 0);
  SpreadEstimate est = mcs_spread(g, 0, 100'000, 21);
  CHECK(std::abs(est.mean - truth) < 0.05);
}

TEST_CASE("lazy cascades match the sampled-world distribution") {
  ProbGraph g = toy_graph();
  CascadeSimulator sim(g);
  SUBCASE("IC mean") {
    Rng rng(derive_seed(4, 0));
    double total = 0.0;
    const int rounds = 200'000;
    for (int i = 0; i < rounds; ++i) total += sim.run(V1, rng);
    CHECK(std::abs(total / rounds - 7.66) < 0.03);
  }
  SUBCASE("skipping v5 pins the cascade at 3") {
    Rng rng(derive_seed(4, 1));
    for (int i = 0; i < 500; ++i) CHECK(sim.run(V1, rng, V5) == 3);
  }
  SUBCASE("skipping the v5->v9 edge matches its exact residual") {
    Rng rng(derive_seed(4, 2));
    const std::int64_t e = g.find_edge(V5, V9);
    double total = 0.0;
    const int rounds = 200'000;
    for (int i = 0; i < rounds; ++i)
      total += sim.run(V1, rng, CascadeSimulator::kNoNode, e);
    CHECK(std::abs(total / rounds - 6.55) < 0.03);
  }
}

TEST_CASE("lazy LT cascades match the LT exact spread") {
  ProbGraph g = random_lt_graph(7, 0.5, 9);
  const double truth = exact_spread(g, 0);
  CascadeSimulator sim(g);
  Rng rng(derive_seed(5, 0));
  double total = 0.0;
  const int rounds = 150'000;
  for (int i = 0; i < rounds; ++i) total += sim.run(0, rng);
  CHECK(std::abs(total / rounds - truth) < 0.04);
}
