#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "drfgp/agent.hpp"
#include "drfgp/consensus.hpp"
#include "drfgp/errors.hpp"
#include "drfgp/graph.hpp"
#include "drfgp/rng.hpp"

using drfgp::Agent;
using drfgp::CommGraph;
using drfgp::InfoState;
using drfgp::KernelSpec;
using drfgp::LocalPhaseResult;
using drfgp::RffBasis;
using drfgp::WeightScheme;

namespace {

constexpr double kPriorVar = 1.0;
constexpr double kObsVar = 1e-2;

std::vector<std::shared_ptr<const RffBasis>> make_bases(int J, int dim) {
  std::vector<std::shared_ptr<const RffBasis>> bases;
  int m = 0;
  for (double l : {0.5, 1.0, 2.0}) {
    bases.push_back(std::make_shared<const RffBasis>(
        KernelSpec::se_iso(l, dim), J, 700 + m++));
  }
  return bases;
}

Eigen::VectorXd random_input(std::mt19937_64& gen, int dim) {
  Eigen::VectorXd x(dim);
  for (int d = 0; d < dim; ++d) x[d] = 2.0 * drfgp::uniform01(gen) - 1.0;
  return x;
}

// One synchronized network step: local phases, L consensus rounds over the
// packed payloads, then fuse and weight updates at every agent.
void network_step(std::vector<Agent>& agents, const drfgp::WeightMatrix& w,
                  int rounds, const std::vector<Eigen::VectorXd>& inputs,
                  const std::vector<double>& targets) {
  const int n = static_cast<int>(agents.size());
  const int payload = Agent::payload_size(agents[0].num_models(),
                                          agents[0].num_features());
  Eigen::MatrixXd payloads(n, payload);
  for (int i = 0; i < n; ++i) {
    const LocalPhaseResult local = agents[i].local_phase(inputs[i], targets[i]);
    payloads.row(i) =
        agents[i].pack_payload(local.stats, local.per_point.front().log_liks);
  }
  payloads = drfgp::run_consensus(payloads, w, rounds);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd fused = payloads.row(i).transpose();
    agents[i].fuse_phase(fused);
    agents[i].apply_bma(n * Agent::payload_log_liks(fused, agents[i].num_models(),
                                                    agents[i].num_features()));
  }
}

}  // namespace

TEST_CASE("first prediction is the prior predictive") {
  Agent agent(0, 1, make_bases(5, 2), kPriorVar, kObsVar);
  std::mt19937_64 gen(1);
  const LocalPhaseResult r = agent.local_phase(random_input(gen, 2), 0.3);
  const drfgp::StepResult& step = r.per_point.front();
  CHECK(step.mixture_mean == doctest::Approx(0.0).epsilon(1e-14));
  for (const auto& pred : step.model_predictions) {
    CHECK(pred.mean == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pred.variance == doctest::Approx(kPriorVar + kObsVar).epsilon(1e-12));
  }
}

TEST_CASE("single model mixture is the model") {
  const auto basis = std::make_shared<const RffBasis>(
      KernelSpec::se_iso(1.0, 2), 6, 3);
  Agent agent(0, 1, {basis}, kPriorVar, kObsVar);
  std::mt19937_64 gen(2);

  // push some data through so the posterior is not trivial
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd x = random_input(gen, 2);
    const double y = drfgp::standard_normal(gen);
    const LocalPhaseResult r = agent.local_phase(x, y);
    agent.fuse_phase(agent.pack_payload(r.stats, r.per_point.front().log_liks));
  }
  const Eigen::VectorXd x = random_input(gen, 2);
  const drfgp::StepResult step = agent.predict(x);
  CHECK(step.mixture_mean ==
        doctest::Approx(step.model_predictions[0].mean).epsilon(1e-14));
  CHECK(step.mixture_variance ==
        doctest::Approx(step.model_predictions[0].variance).epsilon(1e-12));
}

TEST_CASE("two single steps sum to one two-point batch") {
  Agent agent(0, 1, make_bases(4, 2), kPriorVar, kObsVar);
  std::mt19937_64 gen(3);
  Eigen::MatrixXd X(2, 2);
  X.row(0) = random_input(gen, 2).transpose();
  X.row(1) = random_input(gen, 2).transpose();
  const Eigen::VectorXd y =
      (Eigen::Vector2d() << drfgp::standard_normal(gen), drfgp::standard_normal(gen))
          .finished();

  const LocalPhaseResult first = agent.local_phase(X.row(0).transpose(), y[0]);
  const LocalPhaseResult second = agent.local_phase(X.row(1).transpose(), y[1]);
  const LocalPhaseResult batch = agent.local_phase(X, y);
  CHECK(batch.per_point.size() == 2);
  for (int m = 0; m < agent.num_models(); ++m) {
    const Eigen::MatrixXd summed =
        first.stats[m].scatter + second.stats[m].scatter;
    const Eigen::VectorXd summed_info = first.stats[m].info + second.stats[m].info;
    CHECK(batch.stats[m].scatter.isApprox(summed, 1e-13));
    CHECK(batch.stats[m].info.isApprox(summed_info, 1e-13));
  }
}

TEST_CASE("local phase does not mutate the agent") {
  Agent agent(0, 1, make_bases(4, 2), kPriorVar, kObsVar);
  std::mt19937_64 gen(4);
  const Eigen::MatrixXd precision_before = agent.state(0).precision();
  (void)agent.local_phase(random_input(gen, 2), 1.0);
  CHECK(agent.state(0).precision() == precision_before);
}

TEST_CASE("single agent equals the centralized online recursion") {
  const auto bases = make_bases(5, 2);
  Agent agent(0, 1, bases, kPriorVar, kObsVar);
  std::vector<InfoState> reference;
  for (int m = 0; m < 3; ++m) {
    reference.emplace_back(bases[m]->feature_dim(), kPriorVar, kObsVar);
  }
  const drfgp::WeightMatrix w =
      drfgp::build_weights(CommGraph(1, {}), WeightScheme::Metropolis);

  std::mt19937_64 gen(5);
  std::vector<Agent> network{agent};
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = random_input(gen, 2);
    const double y = drfgp::standard_normal(gen);
    network_step(network, w, 7, {x}, {y});
    Eigen::MatrixXd X(1, 2);
    X.row(0) = x.transpose();
    Eigen::VectorXd ys(1);
    ys << y;
    for (int m = 0; m < 3; ++m) {
      reference[m].apply_fused_stats(
          drfgp::local_stats(*bases[m], X, ys, kObsVar));
    }
  }
  for (int m = 0; m < 3; ++m) {
    CHECK(network[0].state(m).precision().isApprox(reference[m].precision(), 1e-12));
    CHECK(network[0].state(m).info_vec().isApprox(reference[m].info_vec(), 1e-12));
  }
}

TEST_CASE("complete graph reproduces the fusion center") {
  const int n = 4;
  const auto bases = make_bases(4, 2);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) agents.emplace_back(i, n, bases, kPriorVar, kObsVar);
  const drfgp::WeightMatrix w =
      drfgp::build_weights(CommGraph::complete(n), WeightScheme::Metropolis);

  std::vector<InfoState> center;
  for (int m = 0; m < 3; ++m) {
    center.emplace_back(bases[m]->feature_dim(), kPriorVar, kObsVar);
  }

  std::mt19937_64 gen(6);
  for (int t = 0; t < 10; ++t) {
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(random_input(gen, 2));
      ys.push_back(drfgp::standard_normal(gen));
    }
    network_step(agents, w, 1, xs, ys);

    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd targets(n);
    for (int i = 0; i < n; ++i) {
      X.row(i) = xs[i].transpose();
      targets[i] = ys[i];
    }
    for (int m = 0; m < 3; ++m) {
      center[m].apply_fused_stats(drfgp::local_stats(*bases[m], X, targets, kObsVar));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < 3; ++m) {
      CHECK(agents[i].state(m).precision().isApprox(center[m].precision(), 1e-9));
      CHECK(agents[i].state(m).info_vec().isApprox(center[m].info_vec(), 1e-9));
    }
  }
}

TEST_CASE("long consensus approaches the batch posterior") {
  const int n = 5;
  const auto bases = make_bases(3, 2);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) agents.emplace_back(i, n, bases, kPriorVar, kObsVar);
  const CommGraph graph = drfgp::random_graph(n, 0.5, 77);
  const drfgp::WeightMatrix w = drfgp::build_weights(graph, WeightScheme::Metropolis);

  std::mt19937_64 gen(7);
  const int steps = 8;
  Eigen::MatrixXd all_X(n * steps, 2);
  Eigen::VectorXd all_y(n * steps);
  for (int t = 0; t < steps; ++t) {
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(random_input(gen, 2));
      ys.push_back(drfgp::standard_normal(gen));
      all_X.row(t * n + i) = xs.back().transpose();
      all_y[t * n + i] = ys.back();
    }
    network_step(agents, w, 200, xs, ys);
  }

  for (int m = 0; m < 3; ++m) {
    InfoState batch(bases[m]->feature_dim(), kPriorVar, kObsVar);
    batch.apply_fused_stats(drfgp::local_stats(*bases[m], all_X, all_y, kObsVar));
    for (int i = 0; i < n; ++i) {
      const double precision_err =
          (agents[i].state(m).precision() - batch.precision()).norm() /
          batch.precision().norm();
      const double info_err =
          (agents[i].state(m).info_vec() - batch.info_vec()).norm() /
          batch.info_vec().norm();
      CHECK(precision_err < 1e-6);
      CHECK(info_err < 1e-6);
    }
  }
}

TEST_CASE("symmetric data on a vertex-transitive graph keeps agents identical") {
  const int n = 6;
  const auto bases = make_bases(3, 2);
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) agents.emplace_back(i, n, bases, kPriorVar, kObsVar);
  std::vector<std::pair<int, int>> ring;
  for (int i = 0; i < n; ++i) ring.emplace_back(i, (i + 1) % n);
  const drfgp::WeightMatrix w =
      drfgp::build_weights(CommGraph(n, std::move(ring)), WeightScheme::Metropolis);

  std::mt19937_64 gen(8);
  for (int t = 0; t < 6; ++t) {
    // all agents observe the same point
    const Eigen::VectorXd x = random_input(gen, 2);
    const double y = drfgp::standard_normal(gen);
    network_step(agents, w, 3, std::vector<Eigen::VectorXd>(n, x),
                 std::vector<double>(n, y));
  }
  for (int i = 1; i < n; ++i) {
    for (int m = 0; m < 3; ++m) {
      CHECK(agents[i].state(m).precision().isApprox(agents[0].state(m).precision(), 1e-10));
      CHECK(agents[i].state(m).info_vec().isApprox(agents[0].state(m).info_vec(), 1e-10));
    }
    CHECK(agents[i].weights().isApprox(agents[0].weights(), 1e-10));
  }
}

TEST_CASE("posterior error is non-increasing in the round budget") {
  const int n = 6;
  const auto bases = make_bases(3, 2);
  const CommGraph graph = drfgp::random_graph(n, 0.4, 91);
  const drfgp::WeightMatrix w = drfgp::build_weights(graph, WeightScheme::Metropolis);

  const int steps = 5;
  // same data for every L
  std::mt19937_64 gen(9);
  std::vector<std::vector<Eigen::VectorXd>> xs(steps);
  std::vector<std::vector<double>> ys(steps);
  Eigen::MatrixXd all_X(n * steps, 2);
  Eigen::VectorXd all_y(n * steps);
  for (int t = 0; t < steps; ++t) {
    for (int i = 0; i < n; ++i) {
      xs[t].push_back(random_input(gen, 2));
      ys[t].push_back(drfgp::standard_normal(gen));
      all_X.row(t * n + i) = xs[t].back().transpose();
      all_y[t * n + i] = ys[t].back();
    }
  }
  InfoState batch(bases[0]->feature_dim(), kPriorVar, kObsVar);
  batch.apply_fused_stats(drfgp::local_stats(*bases[0], all_X, all_y, kObsVar));

  double last_err = std::numeric_limits<double>::infinity();
  for (int rounds : {1, 2, 5, 10}) {
    std::vector<Agent> agents;
    for (int i = 0; i < n; ++i) agents.emplace_back(i, n, bases, kPriorVar, kObsVar);
    for (int t = 0; t < steps; ++t) network_step(agents, w, rounds, xs[t], ys[t]);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, (agents[i].state(0).precision() - batch.precision()).norm());
    }
    CHECK(err <= last_err * (1.0 + 1e-12));
    last_err = err;
  }
}

TEST_CASE("payload size and log-likelihood slice") {
  const int J = 4;
  const int M = 3;
  CHECK(Agent::payload_size(M, J) == M * (J * (2 * J + 1) + 2 * J) + M);

  const auto bases = make_bases(J, 2);
  Agent agent(0, 2, bases, kPriorVar, kObsVar);
  std::mt19937_64 gen(10);
  const LocalPhaseResult r = agent.local_phase(random_input(gen, 2), 0.5);
  const Eigen::VectorXd payload =
      agent.pack_payload(r.stats, r.per_point.front().log_liks);
  CHECK(payload.size() == Agent::payload_size(M, J));
  CHECK(Agent::payload_log_liks(payload, M, J) == r.per_point.front().log_liks);
}

TEST_CASE("fuse errors carry agent and model context") {
  const auto bases = make_bases(3, 2);
  Agent agent(1, 2, bases, kPriorVar, kObsVar);
  // payload whose scatter blocks are strongly negative definite
  Eigen::VectorXd payload = Eigen::VectorXd::Zero(Agent::payload_size(3, 3));
  const int dim = 6;
  const int tri = drfgp::packed_symmetric_size(dim);
  Eigen::VectorXd packed(tri);
  drfgp::pack_symmetric(-5.0 * Eigen::MatrixXd::Identity(dim, dim), packed);
  payload.segment(0, tri) = packed;
  try {
    agent.fuse_phase(payload);
    FAIL("expected a numerical error");
  } catch (const drfgp::NumericalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("agent 1") != std::string::npos);
    CHECK(msg.find("model 0") != std::string::npos);
  }
}
