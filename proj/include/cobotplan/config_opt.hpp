#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "cobotplan/kinematics.hpp"
#include "cobotplan/trajectory.hpp"

namespace cobotplan {

// L1 distance between configurations on their (-pi, pi] representatives. No
// wrap-around shortcut: the cost of crossing the +-pi seam is the full swing.
inline double joint_variation(const JointConfig& a, const JointConfig& b) {
  return std::abs(b.theta1 - a.theta1) + std::abs(b.theta3 - a.theta3) +
         std::abs(b.theta4 - a.theta4);
}

// Solution layers along a trajectory; edges are implicit and complete between
// adjacent layers, weighted by joint_variation.
struct LayeredGraph {
  std::vector<std::vector<JointConfig>> layers;

  std::size_t layer_count() const { return layers.size(); }
};

inline LayeredGraph build_layered_graph(const TrajectoryPlan& plan) {
  LayeredGraph g;
  g.layers.reserve(plan.samples.size());
  for (const TrajectorySample& s : plan.samples)
    g.layers.push_back(s.solutions.solutions);
  return g;
}

// One chosen configuration per layer plus the summed edge cost.
struct ConfigPath {
  std::vector<std::size_t> chosen;
  double total_cost = 0.0;
};

namespace detail {

inline void require_layers(const LayeredGraph& g) {
  if (g.layers.empty())
    throw std::invalid_argument("config_opt: graph has no layers");
  for (const auto& layer : g.layers)
    if (layer.empty()) throw std::invalid_argument("config_opt: empty layer");
}

}  // namespace detail

// Recomputes the cost of a chosen index sequence.
inline double path_cost(const LayeredGraph& g,
                        std::span<const std::size_t> chosen) {
  if (chosen.size() != g.layers.size())
    throw std::out_of_range("path_cost: one index per layer required");
  double total = 0.0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i] >= g.layers[i].size())
      throw std::out_of_range("path_cost: index out of range");
    if (i > 0)
      total += joint_variation(g.layers[i - 1][chosen[i - 1]],
                               g.layers[i][chosen[i]]);
  }
  return total;
}

// Greedy walk: from the chosen vertex of each layer, step to the next-layer
// vertex of minimum edge weight, ties to the lowest index.
inline ConfigPath greedy_path(const LayeredGraph& g, std::size_t start_index) {
  detail::require_layers(g);
  if (start_index >= g.layers.front().size())
    throw std::out_of_range("greedy_path: start index out of range");

  ConfigPath path;
  path.chosen.reserve(g.layers.size());
  path.chosen.push_back(start_index);
  for (std::size_t i = 0; i + 1 < g.layers.size(); ++i) {
    const JointConfig& cur = g.layers[i][path.chosen.back()];
    const auto& next = g.layers[i + 1];
    std::size_t best = 0;
    double best_w = joint_variation(cur, next[0]);
    for (std::size_t k = 1; k < next.size(); ++k) {
      const double w = joint_variation(cur, next[k]);
      if (w < best_w) {
        best_w = w;
        best = k;
      }
    }
    path.chosen.push_back(best);
    path.total_cost += best_w;
  }
  return path;
}

// Best greedy walk over all start vertices; ties to the lowest start index.
inline ConfigPath best_greedy(const LayeredGraph& g) {
  detail::require_layers(g);
  ConfigPath best;
  for (std::size_t m = 0; m < g.layers.front().size(); ++m) {
    ConfigPath cand = greedy_path(g, m);
    if (m == 0 || cand.total_cost < best.total_cost) best = std::move(cand);
  }
  return best;
}

namespace detail {

// Vertex ids flatten (layer, index) in layer-major order.
struct FlatGraph {
  std::vector<std::size_t> offset;  // per layer
  std::size_t total = 0;

  explicit FlatGraph(const LayeredGraph& g) {
    offset.reserve(g.layers.size());
    for (const auto& layer : g.layers) {
      offset.push_back(total);
      total += layer.size();
    }
  }
};

inline std::vector<std::size_t> chain_of(const std::vector<std::uint32_t>& pred,
                                         const FlatGraph& flat,
                                         std::size_t layer, std::size_t id) {
  std::vector<std::size_t> chain(layer + 1);
  for (std::size_t l = layer + 1; l-- > 0;) {
    chain[l] = id - flat.offset[l];
    if (l > 0) id = pred[id];
  }
  return chain;
}

}  // namespace detail

// Global minimum-variation path: one Dijkstra run per start vertex of the
// first layer (binary heap), then the best (start, end) pair wins; cost ties
// fall back to the lexicographically smallest index sequence.
inline ConfigPath dijkstra_path(const LayeredGraph& g) {
  detail::require_layers(g);
  const std::size_t n = g.layers.size();
  const detail::FlatGraph flat(g);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  ConfigPath best;
  bool have_best = false;

  std::vector<double> dist(flat.total);
  std::vector<std::uint32_t> pred(flat.total);
  std::vector<std::uint8_t> settled(flat.total);
  std::vector<std::size_t> vertex_layer(flat.total);
  for (std::size_t l = 0, id = 0; l < n; ++l)
    for (std::size_t k = 0; k < g.layers[l].size(); ++k, ++id)
      vertex_layer[id] = l;

  using HeapItem = std::pair<double, std::uint32_t>;

  for (std::size_t m = 0; m < g.layers.front().size(); ++m) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred.begin(), pred.end(), 0);
    std::fill(settled.begin(), settled.end(), 0);

    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    const std::uint32_t source = static_cast<std::uint32_t>(flat.offset[0] + m);
    dist[source] = 0.0;
    heap.push({0.0, source});

    while (!heap.empty()) {
      const auto [d, id] = heap.top();
      heap.pop();
      if (settled[id]) continue;
      settled[id] = 1;
      const std::size_t layer = vertex_layer[id];
      if (layer + 1 >= n) continue;
      const JointConfig& cur = g.layers[layer][id - flat.offset[layer]];
      const auto& next = g.layers[layer + 1];
      for (std::size_t k = 0; k < next.size(); ++k) {
        const std::uint32_t v =
            static_cast<std::uint32_t>(flat.offset[layer + 1] + k);
        const double nd = d + joint_variation(cur, next[k]);
        if (nd < dist[v]) {
          dist[v] = nd;
          pred[v] = id;
          heap.push({nd, v});
        } else if (nd == dist[v] && !settled[v]) {
          // Cost tie: keep the lexicographically smaller prefix.
          if (detail::chain_of(pred, flat, layer, id) <
              detail::chain_of(pred, flat, layer, pred[v]))
            pred[v] = id;
        }
      }
    }

    for (std::size_t k = 0; k < g.layers.back().size(); ++k) {
      const std::size_t end_id = flat.offset[n - 1] + k;
      if (dist[end_id] == kInf) continue;
      std::vector<std::size_t> chain =
          detail::chain_of(pred, flat, n - 1, end_id);
      if (!have_best || dist[end_id] < best.total_cost ||
          (dist[end_id] == best.total_cost && chain < best.chosen)) {
        best.chosen = std::move(chain);
        best.total_cost = dist[end_id];
        have_best = true;
      }
    }
  }
  return best;
}

}  // namespace cobotplan
