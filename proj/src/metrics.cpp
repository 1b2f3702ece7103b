#include "drfgp/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "drfgp/errors.hpp"

namespace drfgp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_field(const std::string& s, const char* what, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("metrics line ") + std::to_string(line_no) +
                     ": bad " + what + " field '" + s + "'");
  }
}

}  // namespace

void write_metrics(const MetricsLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write metrics file '" + path + "'");
  }
  out << "# drfgp-metrics v1 agents=" << log.num_agents
      << " models=" << log.num_models << "\n";
  out << "phase,step,agent,target,mixture_mean,mixture_variance";
  for (int m = 0; m < log.num_models; ++m) out << ",model_mean_" << m;
  for (int m = 0; m < log.num_models; ++m) out << ",model_variance_" << m;
  for (int m = 0; m < log.num_models; ++m) out << ",weight_" << m;
  out << "\n";
  for (const MetricsRecord& r : log.records) {
    out << (r.phase == Phase::Train ? "train" : "holdout") << ',' << r.step
        << ',' << r.agent << ',' << fmt(r.target) << ',' << fmt(r.mixture_mean)
        << ',' << fmt(r.mixture_variance);
    for (double v : r.model_means) out << ',' << fmt(v);
    for (double v : r.model_variances) out << ',' << fmt(v);
    for (double v : r.weights) out << ',' << fmt(v);
    out << "\n";
  }
  if (!out) {
    throw IoError("failed while writing metrics file '" + path + "'");
  }
}

MetricsLog read_metrics(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open metrics file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("metrics file '" + path + "' is empty");
  }
  MetricsLog log;
  int agents = 0, models = 0;
  if (std::sscanf(line.c_str(), "# drfgp-metrics v1 agents=%d models=%d",
                  &agents, &models) != 2) {
    throw ParseError("metrics file '" + path + "': bad magic line");
  }
  log.num_agents = agents;
  log.num_models = models;
  if (!std::getline(in, line)) {
    throw ParseError("metrics file '" + path + "': missing column header");
  }

  const std::size_t expected_fields = 6 + 3 * static_cast<std::size_t>(models);
  int line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (fields.size() != expected_fields) {
      throw ParseError("metrics line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(expected_fields));
    }
    MetricsRecord r;
    if (fields[0] == "train") r.phase = Phase::Train;
    else if (fields[0] == "holdout") r.phase = Phase::Holdout;
    else throw ParseError("metrics line " + std::to_string(line_no) +
                          ": unknown phase '" + fields[0] + "'");
    r.step = static_cast<int>(parse_field(fields[1], "step", line_no));
    r.agent = static_cast<int>(parse_field(fields[2], "agent", line_no));
    r.target = parse_field(fields[3], "target", line_no);
    r.mixture_mean = parse_field(fields[4], "mixture_mean", line_no);
    r.mixture_variance = parse_field(fields[5], "mixture_variance", line_no);
    std::size_t k = 6;
    for (int m = 0; m < models; ++m)
      r.model_means.push_back(parse_field(fields[k++], "model_mean", line_no));
    for (int m = 0; m < models; ++m)
      r.model_variances.push_back(parse_field(fields[k++], "model_variance", line_no));
    for (int m = 0; m < models; ++m)
      r.weights.push_back(parse_field(fields[k++], "weight", line_no));
    log.records.push_back(std::move(r));
  }
  return log;
}

std::vector<std::pair<int, double>> running_mse(const MetricsLog& log,
                                                int sample_every) {
  if (sample_every < 1) {
    throw InvalidSpecError("running_mse: sample_every must be >= 1");
  }
  // Squared errors of sampled train steps, keyed by step.
  std::map<int, double> step_sq_err;
  int max_step = 0;
  for (const MetricsRecord& r : log.records) {
    if (r.phase != Phase::Train) continue;
    max_step = std::max(max_step, r.step);
    if (r.step % sample_every != 0) continue;
    const double e = r.mixture_mean - r.target;
    step_sq_err[r.step] += e * e;
  }
  std::vector<std::pair<int, double>> series;
  const double n = static_cast<double>(log.num_agents);
  double cumulative = 0.0;
  int samples = 0;
  for (int t = sample_every; t <= max_step; t += sample_every) {
    auto it = step_sq_err.find(t);
    cumulative += (it == step_sq_err.end()) ? 0.0 : it->second;
    ++samples;
    series.emplace_back(t, cumulative / (n * samples));
  }
  return series;
}

double holdout_mse(const MetricsLog& log) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const MetricsRecord& r : log.records) {
    if (r.phase != Phase::Holdout) continue;
    const double e = r.mixture_mean - r.target;
    sum += e * e;
    ++count;
  }
  if (count == 0) {
    throw InvalidSpecError("holdout_mse: log has no holdout records");
  }
  return sum / static_cast<double>(count);
}

void write_summary(const MetricsLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write summary file '" + path + "'");
  }
  std::size_t train = 0, holdout = 0;
  for (const MetricsRecord& r : log.records) {
    (r.phase == Phase::Train ? train : holdout)++;
  }
  out << "# drfgp-summary v1\n";
  out << "num_agents = " << log.num_agents << "\n";
  out << "num_models = " << log.num_models << "\n";
  out << "train_records = " << train << "\n";
  out << "holdout_records = " << holdout << "\n";
  if (holdout > 0) {
    out << "holdout_mse = " << fmt(holdout_mse(log)) << "\n";
  }
  if (log.final_weights.rows() == log.num_agents &&
      log.final_weights.cols() == log.num_models) {
    for (int n = 0; n < log.num_agents; ++n) {
      out << "agent_" << n << "_weights =";
      for (int m = 0; m < log.num_models; ++m) {
        out << ' ' << fmt(log.final_weights(n, m));
      }
      out << "\n";
    }
  }
  if (!out) {
    throw IoError("failed while writing summary file '" + path + "'");
  }
}

}  // namespace drfgp
