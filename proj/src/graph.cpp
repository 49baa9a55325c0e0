#include "infmin/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace infmin {

namespace {
constexpr double kLtSumTolerance = 1e-12;
}

ProbGraph::ProbGraph(std::uint32_t n, std::vector<Edge> edges,
                     std::vector<NodeId> seeds, Model model,
                     std::vector<std::int64_t> original_ids)
    : n_(n),
      edges_(std::move(edges)),
      seeds_(std::move(seeds)),
      model_(model),
      removed_(n, 0),
      original_ids_(std::move(original_ids)) {
  for (const Edge& e : edges_) {
    if (e.src >= n_ || e.dst >= n_)
      throw std::invalid_argument("edge endpoint out of range");
  }
  for (NodeId s : seeds_) {
    if (s >= n_) throw std::invalid_argument("seed out of range");
  }
  std::sort(seeds_.begin(), seeds_.end());
  seeds_.erase(std::unique(seeds_.begin(), seeds_.end()), seeds_.end());
  if (original_ids_.empty()) {
    original_ids_.resize(n_);
    for (std::uint32_t u = 0; u < n_; ++u) original_ids_[u] = u;
  }
  if (original_ids_.size() != n_)
    throw std::invalid_argument("original id table size mismatch");
  build_adjacency();
}

void ProbGraph::build_adjacency() {
  out_begin_.assign(n_ + 1, 0);
  in_begin_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_begin_[e.src + 1];
    ++in_begin_[e.dst + 1];
  }
  for (std::uint32_t u = 0; u < n_; ++u) {
    out_begin_[u + 1] += out_begin_[u];
    in_begin_[u + 1] += in_begin_[u];
  }
  out_edge_.resize(edges_.size());
  in_edge_.resize(edges_.size());
  std::vector<std::uint32_t> out_pos(out_begin_.begin(), out_begin_.end() - 1);
  std::vector<std::uint32_t> in_pos(in_begin_.begin(), in_begin_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    out_edge_[out_pos[edges_[e].src]++] = e;
    in_edge_[in_pos[edges_[e].dst]++] = e;
  }
}

bool ProbGraph::is_seed(NodeId u) const {
  return std::binary_search(seeds_.begin(), seeds_.end(), u);
}

NodeId ProbGraph::node_of_original(std::int64_t orig) const {
  for (std::uint32_t u = 0; u < n_; ++u)
    if (original_ids_[u] == orig) return u;
  throw std::invalid_argument("unknown original node id " + std::to_string(orig));
}

std::vector<Violation> ProbGraph::validate() const {
  std::vector<Violation> report;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (!(ed.p >= 0.0 && ed.p <= 1.0)) {
      report.push_back({"prob_out_of_range",
                        "edge (" + std::to_string(ed.src) + "," +
                            std::to_string(ed.dst) + ") has probability " +
                            std::to_string(ed.p) + " outside [0,1]"});
    }
    if (ed.src == ed.dst) {
      report.push_back({"self_loop", "self-loop at node " + std::to_string(ed.src)});
    }
  }
  {
    std::vector<EdgePair> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) pairs.emplace_back(e.src, e.dst);
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i] == pairs[i - 1]) {
        report.push_back({"duplicate_edge",
                          "duplicate edge (" + std::to_string(pairs[i].first) + "," +
                              std::to_string(pairs[i].second) + ")"});
      }
    }
  }
  if (model_ == Model::LT) {
    for (std::uint32_t v = 0; v < n_; ++v) {
      double sum = 0.0;
      for (EdgeId e : in_edges(v)) sum += edges_[e].p;
      if (sum > 1.0 + kLtSumTolerance) {
        report.push_back({"lt_in_sum_exceeds_one",
                          "LT in-probability sum " + std::to_string(sum) +
                              " at node " + std::to_string(v)});
      }
    }
  }
  for (NodeId s : seeds_) {
    if (removed_[s]) {
      report.push_back({"seed_removed", "seed " + std::to_string(s) + " is removed"});
    }
  }
  return report;
}

ProbGraph ProbGraph::unify_seeds() const {
  if (seeds_.empty()) throw std::invalid_argument("unify_seeds: empty seed set");
  if (seeds_.size() == 1) return *this;

  const NodeId super = n_;
  std::vector<std::uint8_t> seed_mask(n_, 0);
  for (NodeId s : seeds_) seed_mask[s] = 1;

  // Merged probability of reaching u from the seed set, per target u.
  std::unordered_map<NodeId, double> merged;
  std::vector<NodeId> targets; // in first-encounter order for determinism
  std::vector<Edge> new_edges;
  new_edges.reserve(edges_.size());
  for (const Edge& e : edges_) {
    const bool from_seed = seed_mask[e.src] != 0;
    const bool to_seed = seed_mask[e.dst] != 0;
    if (to_seed) continue; // edges into seeds never matter once they merge
    if (!from_seed) {
      new_edges.push_back(e);
      continue;
    }
    auto [it, inserted] = merged.try_emplace(
        e.dst, model_ == Model::IC ? 1.0 : 0.0);
    if (inserted) targets.push_back(e.dst);
    if (model_ == Model::IC) {
      it->second *= 1.0 - e.p; // accumulate miss probability
    } else {
      it->second += e.p;
    }
  }
  for (NodeId t : targets) {
    double p = model_ == Model::IC ? 1.0 - merged[t] : merged[t];
    if (model_ == Model::LT && p > 1.0 + kLtSumTolerance) {
      throw std::runtime_error("LT merge overflow: merged seed probability " +
                               std::to_string(p) + " at node " + std::to_string(t));
    }
    if (model_ == Model::LT) p = std::min(p, 1.0);
    new_edges.push_back({super, t, p});
  }

  std::vector<std::int64_t> ids = original_ids_;
  ids.push_back(-1);

  ProbGraph out(n_ + 1, std::move(new_edges), {super}, model_, std::move(ids));
  out.removed_ = removed_;
  out.removed_.push_back(0);
  out.removed_count_ = removed_count_;
  for (NodeId s : seeds_) {
    if (!out.removed_[s]) {
      out.removed_[s] = 1;
      ++out.removed_count_;
    }
  }
  out.spread_offset_ = spread_offset_ + static_cast<std::int64_t>(seeds_.size()) - 1;
  return out;
}

ProbGraph ProbGraph::remove_nodes(std::span<const NodeId> blocked) const {
  std::vector<std::uint8_t> mask(n_, 0);
  for (NodeId u : blocked) {
    if (u >= n_) throw std::invalid_argument("remove_nodes: node out of range");
    if (is_seed(u)) throw std::invalid_argument("remove_nodes: node " +
                                                std::to_string(u) + " is a seed");
    mask[u] = 1;
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!mask[e.src] && !mask[e.dst]) kept.push_back(e);
  }
  ProbGraph out(n_, std::move(kept), seeds_, model_, original_ids_);
  out.removed_ = removed_;
  out.removed_count_ = removed_count_;
  for (std::uint32_t u = 0; u < n_; ++u) {
    if (mask[u] && !out.removed_[u]) {
      out.removed_[u] = 1;
      ++out.removed_count_;
    }
  }
  out.spread_offset_ = spread_offset_;
  return out;
}

ProbGraph ProbGraph::remove_edges(std::span<const EdgePair> blocked) const {
  std::vector<std::uint8_t> drop(edges_.size(), 0);
  for (const EdgePair& pe : blocked) {
    std::int64_t e = find_edge(pe.first, pe.second);
    if (e < 0)
      throw std::invalid_argument("remove_edges: edge (" + std::to_string(pe.first) +
                                  "," + std::to_string(pe.second) + ") not in graph");
    drop[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (!drop[e]) kept.push_back(edges_[e]);
  }
  ProbGraph out(n_, std::move(kept), seeds_, model_, original_ids_);
  out.removed_ = removed_;
  out.removed_count_ = removed_count_;
  out.spread_offset_ = spread_offset_;
  return out;
}

std::int64_t ProbGraph::find_edge(NodeId src, NodeId dst) const {
  if (src >= n_) return -1;
  for (EdgeId e : out_edges(src)) {
    if (edges_[e].dst == dst) return static_cast<std::int64_t>(e);
  }
  return -1;
}

ProbGraph ProbGraph::with_probabilities(std::vector<double> p) const {
  if (p.size() != edges_.size())
    throw std::invalid_argument("with_probabilities: size mismatch");
  ProbGraph out = *this;
  for (EdgeId e = 0; e < edges_.size(); ++e) out.edges_[e].p = p[e];
  return out;
}

} // namespace infmin
