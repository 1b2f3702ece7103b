#include "drfgp/graph.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "drfgp/errors.hpp"
#include "drfgp/rng.hpp"

namespace drfgp {

CommGraph::CommGraph(int num_agents, std::vector<std::pair<int, int>> edges)
    : num_agents_(num_agents), edges_(std::move(edges)) {
  if (num_agents_ < 1) {
    throw GraphError("graph needs at least one agent");
  }
  for (auto& [i, j] : edges_) {
    if (i == j) {
      throw GraphError("self-loop at agent " + std::to_string(i));
    }
    if (i < 0 || j < 0 || i >= num_agents_ || j >= num_agents_) {
      throw GraphError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                       ") out of range for " + std::to_string(num_agents_) +
                       " agents");
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw GraphError("duplicate edge");
  }
  neighbors_.resize(num_agents_);
  for (const auto& [i, j] : edges_) {
    neighbors_[i].push_back(j);
    neighbors_[j].push_back(i);
  }
  for (auto& nbrs : neighbors_) std::sort(nbrs.begin(), nbrs.end());
}

bool CommGraph::connected() const {
  std::vector<char> seen(num_agents_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : neighbors_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == num_agents_;
}

CommGraph CommGraph::complete(int num_agents) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(num_agents) * (num_agents - 1) / 2);
  for (int i = 0; i < num_agents; ++i) {
    for (int j = i + 1; j < num_agents; ++j) {
      edges.emplace_back(i, j);
    }
  }
  return CommGraph(num_agents, std::move(edges));
}

CommGraph random_graph(int num_agents, double edge_probability,
                       std::uint64_t seed) {
  if (num_agents < 1) {
    throw GraphError("random_graph: need at least one agent");
  }
  if (!(edge_probability > 0.0) || edge_probability > 1.0) {
    throw GraphError("random_graph: edge probability must be in (0, 1]");
  }
  constexpr int kMaxDraws = 10000;
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < num_agents; ++i) {
      for (int j = i + 1; j < num_agents; ++j) {
        if (uniform01(gen) < edge_probability) {
          edges.emplace_back(i, j);
        }
      }
    }
    CommGraph graph(num_agents, std::move(edges));
    if (graph.connected()) {
      return graph;
    }
  }
  throw GraphError("random_graph: no connected graph in " +
                   std::to_string(kMaxDraws) + " draws (n=" +
                   std::to_string(num_agents) + ", p=" +
                   std::to_string(edge_probability) + ")");
}

}  // namespace drfgp
