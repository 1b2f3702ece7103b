#include "drfgp/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "drfgp/consensus.hpp"
#include "drfgp/errors.hpp"

namespace drfgp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_vector(std::ofstream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << fmt(v[i]);
  }
  out << "\n";
}

Eigen::VectorXd read_vector(std::istream& in, Eigen::Index size,
                            const char* what) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!(in >> v[i])) {
      throw ParseError(std::string("snapshot: truncated ") + what);
    }
  }
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, std::uint64_t config_hash,
                    int step, const std::vector<Agent>& agents) {
  if (agents.empty()) {
    throw InvalidSpecError("write_snapshot: no agents");
  }
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write snapshot file '" + path + "'");
  }
  const int M = agents.front().num_models();
  const int J = agents.front().num_features();
  const int dim = 2 * J;
  out << "drfgp-snapshot v1\n";
  out << "config_hash " << config_hash << "\n";
  out << "step " << step << "\n";
  out << "agents " << agents.size() << "\n";
  out << "models " << M << "\n";
  out << "features " << J << "\n";
  Eigen::VectorXd packed(packed_symmetric_size(dim));
  for (const Agent& agent : agents) {
    write_vector(out, agent.log_weights().values());
    for (int m = 0; m < M; ++m) {
      write_vector(out, agent.state(m).info_vec());
      pack_symmetric(agent.state(m).precision(), packed);
      write_vector(out, packed);
    }
  }
  if (!out) {
    throw IoError("failed while writing snapshot file '" + path + "'");
  }
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open snapshot file '" + path + "'");
  }
  std::string magic;
  std::getline(in, magic);
  if (magic != "drfgp-snapshot v1") {
    throw ParseError("snapshot '" + path + "': bad magic line '" + magic + "'");
  }
  Snapshot snap;
  std::string key;
  auto expect_key = [&](const char* name, auto& value) {
    if (!(in >> key >> value) || key != name) {
      throw ParseError("snapshot '" + path + "': expected '" +
                       std::string(name) + "' field");
    }
  };
  expect_key("config_hash", snap.config_hash);
  expect_key("step", snap.step);
  expect_key("agents", snap.num_agents);
  expect_key("models", snap.num_models);
  expect_key("features", snap.num_features);
  if (snap.num_agents < 1 || snap.num_models < 1 || snap.num_features < 1) {
    throw ParseError("snapshot '" + path + "': nonsensical header");
  }
  const int dim = 2 * snap.num_features;
  const int tri = packed_symmetric_size(dim);
  snap.agents.resize(snap.num_agents);
  for (auto& agent : snap.agents) {
    agent.log_weights = read_vector(in, snap.num_models, "log-weights");
    agent.models.resize(snap.num_models);
    for (auto& model : agent.models) {
      model.info_vec = read_vector(in, dim, "information vector");
      const Eigen::VectorXd packed = read_vector(in, tri, "precision matrix");
      model.precision.resize(dim, dim);
      unpack_symmetric(packed, model.precision);
    }
  }
  return snap;
}

std::string snapshot_summary(const Snapshot& snap) {
  std::ostringstream out;
  out << "snapshot: step " << snap.step << ", " << snap.num_agents
      << " agents, " << snap.num_models << " models, " << snap.num_features
      << " features (config hash " << snap.config_hash << ")\n";
  for (int n = 0; n < snap.num_agents; ++n) {
    const auto& agent = snap.agents[n];
    Eigen::VectorXd w = (agent.log_weights.array() - agent.log_weights.maxCoeff()).exp();
    w /= w.sum();
    out << "agent " << n << " weights:";
    for (Eigen::Index m = 0; m < w.size(); ++m) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.6f", w[m]);
      out << buf;
    }
    out << "\n";
    for (int m = 0; m < snap.num_models; ++m) {
      const auto& model = agent.models[m];
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "  model %d: trace(precision)=%.6e |info|=%.6e", m,
                    model.precision.trace(), model.info_vec.norm());
      out << buf << "\n";
    }
  }
  return out.str();
}

}  // namespace drfgp
