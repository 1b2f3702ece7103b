#include "drfgp/dataset.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drfgp/errors.hpp"

namespace drfgp {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, int line_no, int col_no) {
  const std::string cell = trim(raw);
  if (cell.empty()) {
    throw ParseError("missing value at line " + std::to_string(line_no) +
                     ", column " + std::to_string(col_no));
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse '" + cell + "' at line " +
                     std::to_string(line_no) + ", column " +
                     std::to_string(col_no));
  }
}

int resolve_target(const DatasetSchema& schema,
                   const std::vector<std::string>& names, int num_columns) {
  const std::string& spec = schema.target_column;
  if (spec.empty() || spec == "last") {
    return num_columns - 1;
  }
  bool numeric = !spec.empty();
  for (char c : spec) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      numeric = false;
      break;
    }
  }
  if (numeric) {
    const int idx = std::stoi(spec);
    if (idx < 0 || idx >= num_columns) {
      throw SchemaError("target column index " + spec + " out of range for " +
                        std::to_string(num_columns) + " columns");
    }
    return idx;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == spec) return static_cast<int>(i);
  }
  throw SchemaError("target column '" + spec + "' not found" +
                    (schema.has_header ? "" : " (file has no header)"));
}

}  // namespace

Dataset load_dataset(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open dataset file '" + path + "'");
  }

  std::string line;
  int line_no = 0;
  std::vector<std::string> names;
  int num_columns = -1;

  if (schema.has_header) {
    if (!std::getline(in, line)) {
      throw ParseError("dataset '" + path + "' is empty");
    }
    ++line_no;
    for (const std::string& f : split_line(line, schema.delimiter)) {
      names.push_back(trim(f));
    }
    num_columns = static_cast<int>(names.size());
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line, schema.delimiter);
    if (num_columns < 0) {
      num_columns = static_cast<int>(fields.size());
      for (int c = 0; c < num_columns; ++c) {
        names.push_back("col" + std::to_string(c));
      }
    }
    if (static_cast<int>(fields.size()) != num_columns) {
      throw ParseError("line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(num_columns));
    }
    std::vector<double> row(num_columns);
    for (int c = 0; c < num_columns; ++c) {
      row[c] = parse_cell(fields[c], line_no, c + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError("dataset '" + path + "' has no data rows");
  }
  if (num_columns < 2) {
    throw SchemaError("dataset needs at least one input column and a target");
  }

  const int target = resolve_target(schema, names, num_columns);
  const Eigen::Index T = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index D = num_columns - 1;

  Dataset ds;
  ds.inputs.resize(T, D);
  ds.targets.resize(T);
  for (Eigen::Index i = 0; i < T; ++i) {
    Eigen::Index d = 0;
    for (int c = 0; c < num_columns; ++c) {
      if (c == target) {
        ds.targets[i] = rows[i][c];
      } else {
        ds.inputs(i, d++) = rows[i][c];
      }
    }
  }
  for (int c = 0; c < num_columns; ++c) {
    if (c == target) {
      ds.target_name = names[c];
    } else {
      ds.input_names.push_back(names[c]);
    }
  }
  return ds;
}

void standardize_inputs(Dataset& dataset, Eigen::Index train_rows) {
  if (train_rows < 1 || train_rows > dataset.rows()) {
    throw ShapeError("standardize_inputs: training prefix of " +
                     std::to_string(train_rows) + " rows out of range");
  }
  const Eigen::Index D = dataset.dim();
  dataset.input_means.resize(D);
  dataset.input_stds.resize(D);
  const auto train = dataset.inputs.topRows(train_rows);
  for (Eigen::Index d = 0; d < D; ++d) {
    const double mean = train.col(d).mean();
    const double var =
        (train.col(d).array() - mean).square().sum() / train_rows;
    double std = std::sqrt(var);
    if (!(std > 1e-12)) std = 1.0;  // near-constant column: center only
    dataset.input_means[d] = mean;
    dataset.input_stds[d] = std;
    dataset.inputs.col(d) = (dataset.inputs.col(d).array() - mean) / std;
  }
  dataset.standardized = true;
}

}  // namespace drfgp
