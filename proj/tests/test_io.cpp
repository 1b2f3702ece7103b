#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "drfgp/config.hpp"
#include "drfgp/dataset.hpp"
#include "drfgp/errors.hpp"
#include "drfgp/metrics.hpp"

using drfgp::Dataset;
using drfgp::DatasetSchema;
using drfgp::ExperimentConfig;
using drfgp::MetricsLog;
using drfgp::MetricsRecord;
using drfgp::Phase;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("drfgp_io_" + name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

MetricsRecord record(Phase phase, int step, int agent, double target,
                     double prediction) {
  MetricsRecord r;
  r.phase = phase;
  r.step = step;
  r.agent = agent;
  r.target = target;
  r.mixture_mean = prediction;
  r.mixture_variance = 1.0;
  r.model_means = {prediction};
  r.model_variances = {1.0};
  r.weights = {1.0};
  return r;
}

}  // namespace

TEST_CASE("csv loading with a header") {
  TempFile f("basic.csv", "a,b,target\n1,2,3\n4,5,6\n");
  const Dataset ds = drfgp::load_dataset(f.path, DatasetSchema{});
  CHECK(ds.rows() == 2);
  CHECK(ds.dim() == 2);
  CHECK(ds.inputs(0, 0) == 1.0);
  CHECK(ds.inputs(1, 1) == 5.0);
  CHECK(ds.targets[0] == 3.0);
  CHECK(ds.targets[1] == 6.0);
  CHECK(ds.target_name == "target");
  CHECK(ds.input_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("target can be picked by name or index") {
  TempFile f("target.csv", "y,x1,x2\n10,1,2\n20,3,4\n");
  DatasetSchema by_name;
  by_name.target_column = "y";
  const Dataset a = drfgp::load_dataset(f.path, by_name);
  CHECK(a.targets[0] == 10.0);
  CHECK(a.inputs(0, 0) == 1.0);

  DatasetSchema by_index;
  by_index.target_column = "0";
  const Dataset b = drfgp::load_dataset(f.path, by_index);
  CHECK(b.targets[1] == 20.0);
}

TEST_CASE("headerless files and other delimiters") {
  TempFile f("plain.tsv", "1\t2\t3\n4\t5\t6\n");
  DatasetSchema schema;
  schema.has_header = false;
  schema.delimiter = '\t';
  const Dataset ds = drfgp::load_dataset(f.path, schema);
  CHECK(ds.rows() == 2);
  CHECK(ds.dim() == 2);
  CHECK(ds.targets[1] == 6.0);
  CHECK(ds.input_names == std::vector<std::string>{"col0", "col1"});
}

TEST_CASE("ingestion errors carry positions") {
  TempFile bad_cell("bad_cell.csv", "a,b\n1,2\n3,oops\n");
  try {
    drfgp::load_dataset(bad_cell.path, DatasetSchema{});
    FAIL("expected a parse error");
  } catch (const drfgp::ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);
  }

  TempFile missing("missing.csv", "a,b\n1,\n");
  CHECK_THROWS_AS(drfgp::load_dataset(missing.path, DatasetSchema{}),
                  drfgp::ParseError);

  TempFile ragged("ragged.csv", "a,b\n1,2\n1,2,3\n");
  CHECK_THROWS_AS(drfgp::load_dataset(ragged.path, DatasetSchema{}),
                  drfgp::ParseError);

  TempFile empty("empty.csv", "");
  CHECK_THROWS_AS(drfgp::load_dataset(empty.path, DatasetSchema{}),
                  drfgp::ParseError);

  TempFile ok("ok.csv", "a,b\n1,2\n");
  DatasetSchema bad_target;
  bad_target.target_column = "nope";
  CHECK_THROWS_AS(drfgp::load_dataset(ok.path, bad_target), drfgp::SchemaError);
  bad_target.target_column = "7";
  CHECK_THROWS_AS(drfgp::load_dataset(ok.path, bad_target), drfgp::SchemaError);

  CHECK_THROWS_AS(drfgp::load_dataset("does_not_exist.csv", DatasetSchema{}),
                  drfgp::IoError);
}

TEST_CASE("standardization uses the training prefix only") {
  TempFile f("std.csv",
             "x1,x2,y\n"
             "1,10,0\n2,20,0\n3,30,0\n4,40,0\n"
             "100,1000,0\n200,2000,0\n");
  Dataset ds = drfgp::load_dataset(f.path, DatasetSchema{});
  drfgp::standardize_inputs(ds, 4);
  CHECK(ds.standardized);

  // recompute the training moments from the transformed columns
  for (int d = 0; d < 2; ++d) {
    const auto col = ds.inputs.col(d).head(4);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / 4.0;
    CHECK(std::abs(mean) <= 1e-9);
    CHECK(std::abs(std::sqrt(var) - 1.0) <= 1e-9);
  }
  // holdout rows use the training statistics, so they sit far outside
  CHECK(ds.inputs(4, 0) > 10.0);
  CHECK(ds.input_means[0] == doctest::Approx(2.5));
}

TEST_CASE("config round-trips through its text form") {
  ExperimentConfig config;
  config.num_agents = 7;
  config.models = {{0.5, 2.0}, {1.0, 1.0}};
  config.seed = 987654321;
  config.bma_mode = drfgp::BmaMode::Local;
  config.weight_scheme = drfgp::WeightScheme::Uniform;
  config.delimiter = '\t';
  config.dataset = "some/file.csv";

  const ExperimentConfig parsed = drfgp::parse_config_text(config.to_text());
  CHECK(parsed.to_text() == config.to_text());
  CHECK(parsed.hash() == config.hash());
  CHECK(parsed.num_agents == 7);
  CHECK(parsed.models.size() == 2);
  CHECK(parsed.models[0] == std::vector<double>{0.5, 2.0});
  CHECK(parsed.delimiter == '\t');
}

TEST_CASE("config parsing accepts comments and rejects junk") {
  const ExperimentConfig config = drfgp::parse_config_text(
      "# experiment\n"
      "num_agents = 3   # inline comment\n"
      "\n"
      "models = 0.1 ; 1 ; 10\n");
  CHECK(config.num_agents == 3);
  CHECK(config.models.size() == 3);

  CHECK_THROWS_AS(drfgp::parse_config_text("nonsense = 1\n"), drfgp::SchemaError);
  CHECK_THROWS_AS(drfgp::parse_config_text("num_agents two\n"), drfgp::ParseError);
  CHECK_THROWS_AS(drfgp::parse_config_text("num_agents = two\n"), drfgp::ParseError);
  CHECK_THROWS_AS(drfgp::load_config_file("missing.conf"), drfgp::IoError);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.num_agents = 0;
  CHECK_THROWS_AS(config.validate(), drfgp::InvalidSpecError);
  config = ExperimentConfig{};
  config.edge_probability = 0.0;
  CHECK_THROWS_AS(config.validate(), drfgp::InvalidSpecError);
  config = ExperimentConfig{};
  config.models = {{-1.0}};
  CHECK_THROWS_AS(config.validate(), drfgp::InvalidSpecError);
  config = ExperimentConfig{};
  config.consensus_rounds = -1;
  CHECK_THROWS_AS(config.validate(), drfgp::InvalidSpecError);
}

TEST_CASE("metrics logs round-trip exactly") {
  MetricsLog log;
  log.num_agents = 2;
  log.num_models = 1;
  log.records.push_back(record(Phase::Train, 1, 0, 0.123456789012345, 1.0 / 3.0));
  log.records.push_back(record(Phase::Train, 1, 1, -4.0, 1e-17));
  log.records.push_back(record(Phase::Holdout, 1, 0, 2.0, 2.5));

  const std::string path = "drfgp_io_roundtrip.csv";
  drfgp::write_metrics(log, path);
  const MetricsLog back = drfgp::read_metrics(path);
  std::remove(path.c_str());

  REQUIRE(back.records.size() == log.records.size());
  CHECK(back.num_agents == 2);
  CHECK(back.num_models == 1);
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    CHECK(back.records[i].phase == log.records[i].phase);
    CHECK(back.records[i].step == log.records[i].step);
    CHECK(back.records[i].agent == log.records[i].agent);
    CHECK(back.records[i].target == log.records[i].target);
    CHECK(back.records[i].mixture_mean == log.records[i].mixture_mean);
    CHECK(back.records[i].weights == log.records[i].weights);
  }
  // identical metric values after the round trip
  CHECK(drfgp::holdout_mse(back) == drfgp::holdout_mse(log));
}

TEST_CASE("running mse follows the sampled-step formula") {
  MetricsLog log;
  log.num_agents = 2;
  log.num_models = 1;

  SUBCASE("exact predictions give zero") {
    for (int t = 1; t <= 6; ++t) {
      for (int n = 0; n < 2; ++n) {
        log.records.push_back(record(Phase::Train, t, n, 1.5, 1.5));
      }
    }
    for (const auto& [t, mse] : drfgp::running_mse(log, 2)) {
      CHECK(mse == 0.0);
    }
  }

  SUBCASE("two agents, sample every step") {
    log.records.push_back(record(Phase::Train, 1, 0, 1.0, 2.0));  // error 1
    log.records.push_back(record(Phase::Train, 1, 1, 0.0, 3.0));  // error 3
    const auto series = drfgp::running_mse(log, 1);
    REQUIRE(series.size() == 1);
    CHECK(series[0].first == 1);
    CHECK(series[0].second == doctest::Approx(5.0).epsilon(1e-15));
  }

  SUBCASE("non-sampled steps do not contribute") {
    for (int t = 1; t <= 4; ++t) {
      log.records.push_back(record(Phase::Train, t, 0, 0.0, t == 2 ? 1.0 : 0.0));
      log.records.push_back(record(Phase::Train, t, 1, 0.0, 0.0));
    }
    const auto base = drfgp::running_mse(log, 3);  // samples step 3 only
    // perturb predictions at steps 1, 2, 4
    for (auto& r : log.records) {
      if (r.step != 3) r.mixture_mean += 42.0;
    }
    const auto perturbed = drfgp::running_mse(log, 3);
    CHECK(base == perturbed);
  }

  SUBCASE("short logs yield an empty series") {
    log.records.push_back(record(Phase::Train, 1, 0, 0.0, 1.0));
    CHECK(drfgp::running_mse(log, 5).empty());
  }
}

TEST_CASE("holdout mse") {
  MetricsLog log;
  log.num_agents = 1;
  log.num_models = 1;

  SUBCASE("no holdout records is an error") {
    log.records.push_back(record(Phase::Train, 1, 0, 0.0, 0.0));
    CHECK_THROWS_AS(drfgp::holdout_mse(log), drfgp::InvalidSpecError);
  }

  SUBCASE("mean of squared errors, order independent") {
    log.records.push_back(record(Phase::Holdout, 1, 0, 1.0, 3.0));  // error 2
    log.records.push_back(record(Phase::Holdout, 2, 0, 5.0, 5.0));  // error 0
    CHECK(drfgp::holdout_mse(log) == doctest::Approx(2.0).epsilon(1e-15));
    std::swap(log.records[0], log.records[1]);
    CHECK(drfgp::holdout_mse(log) == doctest::Approx(2.0).epsilon(1e-15));
  }

  SUBCASE("zero error predictions") {
    log.records.push_back(record(Phase::Holdout, 1, 0, -2.5, -2.5));
    CHECK(drfgp::holdout_mse(log) == 0.0);
  }
}

TEST_CASE("summary file contents") {
  MetricsLog log;
  log.num_agents = 1;
  log.num_models = 2;
  auto r = record(Phase::Holdout, 1, 0, 1.0, 2.0);
  r.model_means = {2.0, 2.0};
  r.model_variances = {1.0, 1.0};
  r.weights = {0.25, 0.75};
  log.records.push_back(r);
  log.final_weights.resize(1, 2);
  log.final_weights << 0.25, 0.75;

  const std::string path = "drfgp_io_summary.txt";
  drfgp::write_summary(log, path);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::remove(path.c_str());
  CHECK(text.find("holdout_mse = 1") != std::string::npos);
  CHECK(text.find("agent_0_weights = 0.25 0.75") != std::string::npos);
}
