#include "drfgp/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "drfgp/errors.hpp"

namespace drfgp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': cannot parse '" + value +
                     "' as a real number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': cannot parse '" + value +
                     "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError("config key '" + key + "': cannot parse '" + value +
                   "' as a boolean");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "0.1; 1; 10" or "0.5,2; 1,1" -> per-model lengthscale lists
std::vector<std::vector<double>> parse_models(const std::string& value) {
  std::vector<std::vector<double>> models;
  for (const std::string& part : split(value, ';')) {
    const std::string model = trim(part);
    if (model.empty()) continue;
    std::vector<double> lengthscales;
    std::string normalized = model;
    for (char& c : normalized) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(normalized);
    std::string token;
    while (in >> token) {
      lengthscales.push_back(parse_double("models", token));
    }
    if (lengthscales.empty()) {
      throw ParseError("config key 'models': empty model entry");
    }
    models.push_back(std::move(lengthscales));
  }
  if (models.empty()) {
    throw ParseError("config key 'models': no models given");
  }
  return models;
}

std::string format_models(const std::vector<std::vector<double>>& models) {
  std::string out;
  for (std::size_t m = 0; m < models.size(); ++m) {
    if (m) out += "; ";
    for (std::size_t d = 0; d < models[m].size(); ++d) {
      if (d) out += ",";
      out += format_double(models[m][d]);
    }
  }
  return out;
}

}  // namespace

std::string to_string(WeightScheme scheme) {
  return scheme == WeightScheme::Uniform ? "uniform" : "metropolis";
}

std::string to_string(BmaMode mode) {
  return mode == BmaMode::Local ? "local" : "independent_consensus";
}

WeightScheme weight_scheme_from_string(const std::string& s) {
  if (s == "uniform") return WeightScheme::Uniform;
  if (s == "metropolis") return WeightScheme::Metropolis;
  throw ParseError("unknown weight scheme '" + s +
                   "' (expected uniform or metropolis)");
}

BmaMode bma_mode_from_string(const std::string& s) {
  if (s == "local") return BmaMode::Local;
  if (s == "independent_consensus") return BmaMode::IndependentConsensus;
  throw ParseError("unknown bma mode '" + s +
                   "' (expected local or independent_consensus)");
}

void ExperimentConfig::validate() const {
  if (num_agents < 1) throw InvalidSpecError("num_agents must be >= 1");
  if (!(edge_probability > 0.0) || edge_probability > 1.0) {
    throw InvalidSpecError("edge_probability must be in (0, 1]");
  }
  if (consensus_rounds < 0) throw InvalidSpecError("consensus_rounds must be >= 0");
  if (num_features < 1) throw InvalidSpecError("num_features must be >= 1");
  if (!(prior_var > 0.0)) throw InvalidSpecError("prior_var must be positive");
  if (!(obs_var > 0.0)) throw InvalidSpecError("obs_var must be positive");
  if (holdout_size < 0) throw InvalidSpecError("holdout_size must be >= 0");
  if (snapshot_every < 0) throw InvalidSpecError("snapshot_every must be >= 0");
  if (models.empty()) throw InvalidSpecError("at least one model is required");
  for (const auto& m : models) {
    if (m.empty()) throw InvalidSpecError("model with no lengthscales");
    for (double l : m) {
      if (!(l > 0.0)) throw InvalidSpecError("lengthscales must be positive");
    }
  }
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "num_agents") num_agents = static_cast<int>(parse_int(key, value));
  else if (key == "edge_probability") edge_probability = parse_double(key, value);
  else if (key == "consensus_rounds") consensus_rounds = static_cast<int>(parse_int(key, value));
  else if (key == "weight_scheme") weight_scheme = weight_scheme_from_string(value);
  else if (key == "models") models = parse_models(value);
  else if (key == "num_features") num_features = static_cast<int>(parse_int(key, value));
  else if (key == "prior_var") prior_var = parse_double(key, value);
  else if (key == "obs_var") obs_var = parse_double(key, value);
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "bma_mode") bma_mode = bma_mode_from_string(value);
  else if (key == "dataset") dataset = value;
  else if (key == "holdout_size") holdout_size = static_cast<int>(parse_int(key, value));
  else if (key == "standardize") standardize = parse_bool(key, value);
  else if (key == "shuffle") shuffle = parse_bool(key, value);
  else if (key == "snapshot_every") snapshot_every = static_cast<int>(parse_int(key, value));
  else if (key == "snapshot_path") snapshot_path = value;
  else if (key == "target_column") target_column = value;
  else if (key == "delimiter") {
    if (value == "tab") delimiter = '\t';
    else if (value == "space") delimiter = ' ';
    else if (value.size() == 1) delimiter = value[0];
    else throw ParseError("config key 'delimiter': expected a single character, 'tab', or 'space'");
  }
  else if (key == "has_header") has_header = parse_bool(key, value);
  else throw SchemaError("unknown config key '" + key + "'");
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "num_agents = " << num_agents << "\n";
  out << "edge_probability = " << format_double(edge_probability) << "\n";
  out << "consensus_rounds = " << consensus_rounds << "\n";
  out << "weight_scheme = " << to_string(weight_scheme) << "\n";
  out << "models = " << format_models(models) << "\n";
  out << "num_features = " << num_features << "\n";
  out << "prior_var = " << format_double(prior_var) << "\n";
  out << "obs_var = " << format_double(obs_var) << "\n";
  out << "seed = " << seed << "\n";
  out << "bma_mode = " << to_string(bma_mode) << "\n";
  out << "dataset = " << dataset << "\n";
  out << "holdout_size = " << holdout_size << "\n";
  out << "standardize = " << (standardize ? "true" : "false") << "\n";
  out << "shuffle = " << (shuffle ? "true" : "false") << "\n";
  out << "snapshot_every = " << snapshot_every << "\n";
  out << "snapshot_path = " << snapshot_path << "\n";
  out << "target_column = " << target_column << "\n";
  out << "delimiter = "
      << (delimiter == '\t'   ? std::string("tab")
          : delimiter == ' ' ? std::string("space")
                             : std::string(1, delimiter))
      << "\n";
  out << "has_header = " << (has_header ? "true" : "false") << "\n";
  return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : to_text()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void write_config_file(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write config file '" + path + "'");
  }
  out << config.to_text();
}

}  // namespace drfgp
