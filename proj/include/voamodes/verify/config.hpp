#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "voamodes/errors.hpp"
#include "voamodes/rational.hpp"

namespace voamodes::verify {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "homomorphism", "unit",      "bimodule", "three-forms", "kernel",
      "omega-commutators", "binomial-218", "conjugation", "exp-L", "roundtrip",
      "jacobi-cert", "L1-cert",   "opposite", "reachability"};
  return names;
}

struct RunConfig {
  int N = 2;
  int L_max = 6;
  std::optional<int> cap;  // hard weight/level truncation; 4 * L_max when unset
  std::vector<Rational> charges = {Rational(0), make_rational(1, 2), Rational(1)};
  int p_lo = -2;
  int p_hi = 2;
  int max_v_weight = 3;
  std::vector<std::string> suites;  // empty: all
  std::uint64_t seed = 1;
  int workers = 1;

  int effective_cap() const { return cap ? *cap : 4 * L_max; }

  std::vector<std::string> selected_suites() const {
    return suites.empty() ? suite_names() : suites;
  }

  void validate() const {
    if (N < 0) throw ConfigError("N must be nonnegative");
    if (L_max < 0) throw ConfigError("lmax must be nonnegative");
    if (N > L_max) throw ConfigError("N exceeds lmax");
    if (effective_cap() < L_max) throw ConfigError("cap below lmax");
    if (charges.empty()) throw ConfigError("no probe charges");
    if (p_lo > p_hi) throw ConfigError("empty p window");
    if (max_v_weight < 0) throw ConfigError("max_v_weight must be nonnegative");
    if (workers < 1) throw ConfigError("workers must be positive");
    for (const auto& s : suites)
      if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
        throw ConfigError("unknown suite: " + s);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

}  // namespace detail

inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using detail::split;
  using detail::to_int;
  if (key == "N") {
    c.N = to_int(key, value);
  } else if (key == "lmax" || key == "L_max") {
    c.L_max = to_int(key, value);
  } else if (key == "cap") {
    c.cap = to_int(key, value);
  } else if (key == "charges") {
    c.charges.clear();
    for (const auto& s : split(value, ',')) {
      try {
        c.charges.push_back(parse_rational(s));
      } catch (const std::exception&) {
        throw ConfigError("bad rational in charges: " + s);
      }
    }
  } else if (key == "p_window") {
    auto parts = split(value, ',');
    if (parts.size() != 2) throw ConfigError("p_window needs two integers");
    c.p_lo = to_int(key, parts[0]);
    c.p_hi = to_int(key, parts[1]);
  } else if (key == "max_v_weight") {
    c.max_v_weight = to_int(key, value);
  } else if (key == "suites") {
    c.suites = split(value, ',');
  } else if (key == "seed") {
    try {
      c.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("bad seed: " + value);
    }
  } else if (key == "workers") {
    c.workers = to_int(key, value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

// key = value lines; '#' starts a comment.
inline void load_config_text(RunConfig& c, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(c, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

inline void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(c, ss.str());
}

}  // namespace voamodes::verify
