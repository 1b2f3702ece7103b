#include "drfgp/consensus.hpp"

#include <algorithm>
#include <string>

#include "drfgp/errors.hpp"

namespace drfgp {

WeightMatrix build_weights(const CommGraph& graph, WeightScheme scheme) {
  if (!graph.connected()) {
    throw GraphError("build_weights: graph is not connected");
  }
  const int n = graph.num_agents();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  switch (scheme) {
    case WeightScheme::Uniform:
      for (int i = 0; i < n; ++i) {
        const double share = 1.0 / (graph.degree(i) + 1.0);
        w(i, i) = share;
        for (int j : graph.neighbors(i)) {
          w(i, j) = share;
        }
      }
      break;
    case WeightScheme::Metropolis:
      for (const auto& [i, j] : graph.edges()) {
        const double wij = 1.0 / (1.0 + std::max(graph.degree(i), graph.degree(j)));
        w(i, j) = wij;
        w(j, i) = wij;
      }
      for (int i = 0; i < n; ++i) {
        w(i, i) = 1.0 - w.row(i).sum();
      }
      break;
  }
  return WeightMatrix(std::move(w), scheme);
}

Eigen::MatrixXd consensus_round(const Eigen::Ref<const Eigen::MatrixXd>& values,
                                const WeightMatrix& weights) {
  if (values.rows() != weights.num_agents()) {
    throw ShapeError("consensus_round: " + std::to_string(values.rows()) +
                     " payload rows for " +
                     std::to_string(weights.num_agents()) + " agents");
  }
  return weights.weights() * values;
}

Eigen::MatrixXd run_consensus(Eigen::MatrixXd values,
                              const WeightMatrix& weights, int rounds) {
  if (rounds < 0) {
    throw InvalidSpecError("run_consensus: rounds must be >= 0");
  }
  for (int r = 0; r < rounds; ++r) {
    values = consensus_round(values, weights);
  }
  return values;
}

int packed_symmetric_size(int dim) { return dim * (dim + 1) / 2; }

void pack_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& symmetric,
                    Eigen::Ref<Eigen::VectorXd> out) {
  const int n = static_cast<int>(symmetric.rows());
  if (symmetric.cols() != n) {
    throw ShapeError("pack_symmetric: matrix is not square");
  }
  if (out.size() != packed_symmetric_size(n)) {
    throw ShapeError("pack_symmetric: output buffer has wrong length");
  }
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out[k++] = symmetric(i, j);
    }
  }
}

void unpack_symmetric(const Eigen::Ref<const Eigen::VectorXd>& packed,
                      Eigen::Ref<Eigen::MatrixXd> out) {
  const int n = static_cast<int>(out.rows());
  if (out.cols() != n || packed.size() != packed_symmetric_size(n)) {
    throw ShapeError("unpack_symmetric: buffer lengths do not match");
  }
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out(i, j) = packed[k];
      out(j, i) = packed[k];
      ++k;
    }
  }
}

}  // namespace drfgp
