#include "qec/config.hpp"

#include <fstream>
#include <sstream>

#include "qec/errors.hpp"

namespace qec {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InputError("config: bad number for " + key + ": \"" + v + "\"");
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw InputError("config: bad integer for " + key + ": \"" + v + "\"");
  }
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(parse_long(item, key)));
  }
  if (out.empty()) throw InputError("config: empty list for " + key);
  return out;
}

void set_key(ExperimentConfig& c, const std::string& section, const std::string& key,
             const std::string& value) {
  const std::string path = section + "." + key;
  if (section == "code") {
    if (key == "descriptor") {
      c.code_descriptor = value;
      return;
    }
  } else if (section == "noise") {
    if (key == "mean_rate") { c.mean_rate = parse_double(value, path); return; }
    if (key == "sd_rate") { c.sd_rate = parse_double(value, path); return; }
    if (key == "xi") { c.xi = parse_double(value, path); return; }
    if (key == "seed") { c.seed = static_cast<std::uint64_t>(parse_long(value, path)); return; }
  } else if (section == "decoder") {
    if (key == "decoder") {
      if (value == "ideal") c.decoder = DecoderKind::Ideal;
      else if (value == "mwpm") c.decoder = DecoderKind::Mwpm;
      else throw InputError("config: decoder must be ideal or mwpm");
      return;
    }
    if (key == "weights") {
      if (value == "static") c.weights = WeightsMode::Static;
      else if (value == "adaptive-co") c.weights = WeightsMode::AdaptiveCo;
      else if (value == "adaptive-sp") c.weights = WeightsMode::AdaptiveSp;
      else if (value == "oracle-true-rates") c.weights = WeightsMode::OracleTrueRates;
      else throw InputError("config: weights must be static, adaptive-co, adaptive-sp "
                            "or oracle-true-rates");
      return;
    }
  } else if (section == "observer") {
    if (key == "observer") {
      if (value == "co") c.observer = ObserverMode::Co;
      else if (value == "sp") c.observer = ObserverMode::Sp;
      else if (value == "both") c.observer = ObserverMode::Both;
      else if (value == "oracle-truth") c.observer = ObserverMode::OracleTruth;
      else throw InputError("config: observer must be co, sp, both or oracle-truth");
      return;
    }
  } else if (section == "estimator") {
    if (key == "estimator") {
      if (value == "gp") c.estimator = EstimatorMode::Gp;
      else if (value == "static") c.estimator = EstimatorMode::Static;
      else if (value == "none") c.estimator = EstimatorMode::None;
      else throw InputError("config: estimator must be gp, static or none");
      return;
    }
    if (key == "f0_mean") { c.f0_mean = parse_double(value, path); return; }
    if (key == "sigma_f") { c.sigma_f = parse_double(value, path); return; }
    if (key == "xi_prior") { c.xi_prior = parse_double(value, path); return; }
  } else if (section == "run") {
    if (key == "rounds") { c.rounds = parse_long(value, path); return; }
    if (key == "warmup_rounds") { c.warmup_rounds = parse_long(value, path); return; }
    if (key == "shards") { c.shards = static_cast<int>(parse_long(value, path)); return; }
    if (key == "distances") { c.distances = parse_int_list(value, path); return; }
    if (key == "min_failures") { c.min_failures = parse_long(value, path); return; }
    if (key == "max_rounds") { c.max_rounds = parse_long(value, path); return; }
  }
  throw InputError("config: unknown key " + path);
}

}  // namespace

std::string to_string(DecoderKind k) {
  return k == DecoderKind::Ideal ? "ideal" : "mwpm";
}
std::string to_string(WeightsMode m) {
  switch (m) {
    case WeightsMode::Static: return "static";
    case WeightsMode::AdaptiveCo: return "adaptive-co";
    case WeightsMode::AdaptiveSp: return "adaptive-sp";
    case WeightsMode::OracleTrueRates: return "oracle-true-rates";
  }
  return "?";
}
std::string to_string(ObserverMode m) {
  switch (m) {
    case ObserverMode::Co: return "co";
    case ObserverMode::Sp: return "sp";
    case ObserverMode::Both: return "both";
    case ObserverMode::OracleTruth: return "oracle-truth";
  }
  return "?";
}
std::string to_string(EstimatorMode m) {
  switch (m) {
    case EstimatorMode::Gp: return "gp";
    case EstimatorMode::Static: return "static";
    case EstimatorMode::None: return "none";
  }
  return "?";
}

ExperimentConfig parse_config_file(const std::string& path) {
  ExperimentConfig config;
  parse_config_file_into(config, path);
  return config;
}

void parse_config_file_into(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path);
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InputError("config: malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config: expected key = value at line " + std::to_string(lineno));
    if (section.empty())
      throw InputError("config: key outside any section at line " + std::to_string(lineno));
    set_key(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw InputError("override must look like section.key=value: " + assignment);
  const std::string path = trim(assignment.substr(0, eq));
  const auto dot = path.find('.');
  if (dot == std::string::npos)
    throw InputError("override must look like section.key=value: " + assignment);
  set_key(config, path.substr(0, dot), path.substr(dot + 1), trim(assignment.substr(eq + 1)));
}

void validate_config(const ExperimentConfig& c) {
  if (c.rounds <= 0) throw InputError("config: rounds must be positive");
  if (c.warmup_rounds < 0) throw InputError("config: warmup_rounds must be >= 0");
  if (c.shards < 1) throw InputError("config: shards must be >= 1");
  if (!(c.mean_rate > 0.0 && c.mean_rate < 0.5))
    throw InputError("config: mean_rate must be in (0, 0.5)");
  if (c.sd_rate < 0.0 || c.sd_rate >= 0.5)
    throw InputError("config: sd_rate must be in [0, 0.5)");
  if (c.xi <= 0.0) throw InputError("config: xi must be positive");
  if (c.min_failures < 1) throw InputError("config: min_failures must be >= 1");
  if (c.max_rounds < c.rounds) throw InputError("config: max_rounds < rounds per shard");
  for (int d : c.distances)
    if (d < 3 || d % 2 == 0) throw InputError("config: distances must be odd and >= 3");

  const bool adaptive =
      c.weights == WeightsMode::AdaptiveCo || c.weights == WeightsMode::AdaptiveSp;
  if (adaptive && c.estimator == EstimatorMode::None)
    throw InputError("config: adaptive weights need an estimator");
  if (c.observer != ObserverMode::OracleTruth) {
    if (c.weights == WeightsMode::AdaptiveCo &&
        !(c.observer == ObserverMode::Co || c.observer == ObserverMode::Both))
      throw InputError("config: adaptive-co weights need the co observer");
    if (c.weights == WeightsMode::AdaptiveSp &&
        !(c.observer == ObserverMode::Sp || c.observer == ObserverMode::Both))
      throw InputError("config: adaptive-sp weights need the sp observer");
  }
}

}  // namespace qec
