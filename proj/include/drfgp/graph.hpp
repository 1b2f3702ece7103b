#ifndef DRFGP_GRAPH_HPP
#define DRFGP_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace drfgp {

/// Undirected communication graph. Edges are stored as (i, j) with i < j;
/// self-loops and duplicates are rejected at construction.
class CommGraph {
 public:
  CommGraph(int num_agents, std::vector<std::pair<int, int>> edges);

  int num_agents() const { return num_agents_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int agent) const {
    return neighbors_[agent];
  }
  int degree(int agent) const {
    return static_cast<int>(neighbors_[agent].size());
  }
  bool connected() const;

  static CommGraph complete(int num_agents);

 private:
  int num_agents_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;
};

/// Erdos-Renyi draw with the given edge probability, redrawn until connected.
/// All draws consume one generator stream, so the result is a pure function
/// of (num_agents, edge_probability, seed). Gives up after 10^4 rejections.
CommGraph random_graph(int num_agents, double edge_probability,
                       std::uint64_t seed);

}  // namespace drfgp

#endif  // DRFGP_GRAPH_HPP
