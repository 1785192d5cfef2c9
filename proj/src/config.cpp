#include "elastica/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace elastica {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  // from_chars for double is available in libstdc++ 11
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: bad number for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  }
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: bad integer for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "model", "alpha", "beta", "eta", "tau", "gamma1", "gamma2", "xi1", "eps",
      "zeta", "max_outer", "max_inner", "c1_policy", "c1", "init"};
  return keys;
}

void apply_setting(SolverConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "model") {
    const int m = to_int(key, value);
    if (m != 1 && m != 2) throw std::invalid_argument("config: model must be 1 or 2");
    cfg.model = m == 1 ? Model::One : Model::Two;
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "beta") {
    cfg.beta = to_double(key, value);
  } else if (key == "eta") {
    cfg.eta = to_double(key, value);
  } else if (key == "tau") {
    cfg.tau = to_double(key, value);
  } else if (key == "gamma1") {
    cfg.gamma1 = to_double(key, value);
  } else if (key == "gamma2") {
    cfg.gamma2 = to_double(key, value);
  } else if (key == "xi1") {
    cfg.xi1 = to_double(key, value);
  } else if (key == "eps") {
    cfg.eps = to_double(key, value);
  } else if (key == "zeta") {
    cfg.zeta = to_double(key, value);
  } else if (key == "max_outer") {
    cfg.max_outer = to_int(key, value);
  } else if (key == "max_inner") {
    cfg.max_inner = to_int(key, value);
  } else if (key == "c1_policy") {
    if (value == "max") {
      cfg.c1_policy = C1Policy::FrozenMax;
    } else if (value == "const") {
      cfg.c1_policy = C1Policy::FrozenConst;
    } else {
      throw std::invalid_argument("config: c1_policy must be max or const");
    }
  } else if (key == "c1") {
    cfg.c1_value = to_double(key, value);
  } else if (key == "init") {
    if (value == "data") {
      cfg.init = Init::FromData;
    } else if (value == "zero") {
      cfg.init = Init::Zero;
    } else {
      throw std::invalid_argument("config: init must be data or zero");
    }
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
  }
}

SolverConfig read_config(std::istream& in, SolverConfig cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    try {
      apply_setting(cfg, trim(s.substr(0, eq)), s.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

SolverConfig read_config_file(const std::string& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return read_config(in, std::move(base));
}

void write_config(std::ostream& out, const SolverConfig& cfg) {
  out << "model=" << static_cast<int>(cfg.model) << '\n'
      << "alpha=" << fmt(cfg.alpha) << '\n'
      << "beta=" << fmt(cfg.beta) << '\n'
      << "eta=" << fmt(cfg.eta) << '\n'
      << "tau=" << fmt(cfg.tau) << '\n'
      << "gamma1=" << fmt(cfg.gamma1) << '\n'
      << "gamma2=" << fmt(cfg.gamma2) << '\n'
      << "xi1=" << fmt(cfg.xi1) << '\n'
      << "eps=" << fmt(cfg.eps) << '\n'
      << "zeta=" << fmt(cfg.zeta) << '\n'
      << "max_outer=" << cfg.max_outer << '\n'
      << "max_inner=" << cfg.max_inner << '\n'
      << "c1_policy=" << (cfg.c1_policy == C1Policy::FrozenMax ? "max" : "const") << '\n'
      << "c1=" << fmt(cfg.c1_value) << '\n'
      << "init=" << (cfg.init == Init::FromData ? "data" : "zero") << '\n';
}

std::string to_key_value(const SolverConfig& cfg) {
  std::ostringstream os;
  write_config(os, cfg);
  return os.str();
}

}  // namespace elastica
