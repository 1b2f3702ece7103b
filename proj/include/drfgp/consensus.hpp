#ifndef DRFGP_CONSENSUS_HPP
#define DRFGP_CONSENSUS_HPP

#include <Eigen/Dense>

#include "drfgp/graph.hpp"

namespace drfgp {

enum class WeightScheme {
  Uniform,     // 1/(deg+1) over self and neighbors; row-stochastic only
  Metropolis,  // 1/(1+max(deg_i, deg_j)); symmetric, doubly stochastic
};

/// Consensus mixing matrix on a communication graph. Entry (i, j) is nonzero
/// only for j == i or (i, j) an edge, so one application of the matrix is one
/// synchronized neighbor exchange.
class WeightMatrix {
 public:
  const Eigen::MatrixXd& weights() const { return weights_; }
  WeightScheme scheme() const { return scheme_; }
  int num_agents() const { return static_cast<int>(weights_.rows()); }

 private:
  friend WeightMatrix build_weights(const CommGraph&, WeightScheme);
  WeightMatrix(Eigen::MatrixXd weights, WeightScheme scheme)
      : weights_(std::move(weights)), scheme_(scheme) {}

  Eigen::MatrixXd weights_;
  WeightScheme scheme_;
};

/// Throws GraphError if the graph is disconnected (consensus would not mix).
WeightMatrix build_weights(const CommGraph& graph, WeightScheme scheme);

/// One averaging round. Row n of `values` is agent n's payload; the result
/// row n is sum_j W(n,j) * values(j).
Eigen::MatrixXd consensus_round(const Eigen::Ref<const Eigen::MatrixXd>& values,
                                const WeightMatrix& weights);

/// `rounds` applications of consensus_round; zero rounds returns the input.
Eigen::MatrixXd run_consensus(Eigen::MatrixXd values,
                              const WeightMatrix& weights, int rounds);

// Symmetric matrices travel as their upper triangle to halve payload volume.
int packed_symmetric_size(int dim);  // dim*(dim+1)/2
void pack_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& symmetric,
                    Eigen::Ref<Eigen::VectorXd> out);
void unpack_symmetric(const Eigen::Ref<const Eigen::VectorXd>& packed,
                      Eigen::Ref<Eigen::MatrixXd> out);

}  // namespace drfgp

#endif  // DRFGP_CONSENSUS_HPP
