#ifndef DRFGP_DATASET_HPP
#define DRFGP_DATASET_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace drfgp {

struct DatasetSchema {
  std::string target_column = "last";  // column name, 0-based index, or "last"
  char delimiter = ',';
  bool has_header = true;
};

/// Numeric regression data in file order. Inputs are the non-target columns;
/// rows with missing or unparseable cells are rejected at load time.
struct Dataset {
  Eigen::MatrixXd inputs;   // T x D
  Eigen::VectorXd targets;  // T
  std::vector<std::string> input_names;
  std::string target_name;

  bool standardized = false;
  Eigen::VectorXd input_means;  // per column, from the training prefix
  Eigen::VectorXd input_stds;

  Eigen::Index rows() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }
};

Dataset load_dataset(const std::string& path, const DatasetSchema& schema);

/// Center and scale each input column to mean 0 / std 1 using statistics from
/// the first `train_rows` rows only, so holdout rows never leak into them.
/// Near-constant columns are centered but left unscaled.
void standardize_inputs(Dataset& dataset, Eigen::Index train_rows);

}  // namespace drfgp

#endif  // DRFGP_DATASET_HPP
