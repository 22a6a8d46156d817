#include "macsim/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "macsim/errors.hpp"

namespace macsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key, "not a number: '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key, "not an integer: '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key, "not a non-negative integer: '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") {
    return true;
  }
  if (value == "off" || value == "false" || value == "0" || value == "no") {
    return false;
  }
  throw ValidationError(key, "not a boolean: '" + value + "'");
}

std::vector<std::string> split(const std::string& value, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const auto& part : split(value, ',')) {
    if (!part.empty()) out.push_back(parse_double(key, part));
  }
  return out;
}

/// Comma list of integers; "a:b" expands to the inclusive range.
std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const auto& part : split(value, ',')) {
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon != std::string::npos) {
      const int lo = static_cast<int>(
          parse_int(key, trim(part.substr(0, colon))));
      const int hi = static_cast<int>(
          parse_int(key, trim(part.substr(colon + 1))));
      if (hi < lo) throw ValidationError(key, "descending range " + part);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(static_cast<int>(parse_int(key, part)));
    }
  }
  return out;
}

void assign(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "kind") {
    c.kind = value;
  } else if (key == "h") {
    c.h = parse_double(key, value);
    c.h_set = true;
  } else if (key == "J") {
    c.coupling = parse_double(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_double(key, value);
  } else if (key == "protocol") {
    const auto p = protocol_from_name(value);
    if (!p) throw ValidationError(key, "unknown protocol '" + value + "'");
    c.protocol = p;
  } else if (key == "p") {
    c.p_grid = parse_double_list(key, value);
  } else if (key == "L") {
    c.sites = static_cast<int>(parse_int(key, value));
  } else if (key == "samples") {
    c.samples = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else if (key == "output") {
    c.output = value;
  } else if (key == "workers") {
    c.workers = static_cast<int>(parse_int(key, value));
  } else if (key == "witness.ee") {
    c.witnesses.ee_lengths = parse_int_list(key, value);
  } else if (key == "witness.fn") {
    c.witnesses.fn_distances = parse_int_list(key, value);
  } else if (key == "witness.qfi") {
    c.witnesses.qfi = parse_bool(key, value);
  } else if (key == "qfi.t0") {
    c.witnesses.annealing.initial_temperature = parse_double(key, value);
  } else if (key == "qfi.cooling") {
    c.witnesses.annealing.cooling = parse_double(key, value);
  } else if (key == "qfi.sweeps") {
    c.witnesses.annealing.sweeps_per_temperature =
        static_cast<int>(parse_int(key, value));
  } else if (key == "qfi.sigma") {
    c.witnesses.annealing.step_sigma = parse_double(key, value);
  } else if (key == "qfi.restarts") {
    c.witnesses.annealing.restarts = static_cast<int>(parse_int(key, value));
  } else if (key == "qfi.tmin") {
    c.witnesses.annealing.min_temperature = parse_double(key, value);
  } else if (key == "qfi.xz_plane") {
    c.witnesses.annealing.xz_plane = parse_bool(key, value);
  } else if (key == "qfi.cutoff") {
    c.witnesses.qfi_cutoff = static_cast<int>(parse_int(key, value));
  } else if (key == "fit.fn_decay") {
    c.fit_fn_decay = parse_bool(key, value);
  } else if (key == "fit.ee_ceff") {
    c.fit_ee_ceff = parse_bool(key, value);
  } else if (key == "toy.xi0") {
    c.toy_xi0 = static_cast<int>(parse_int(key, value));
  } else if (key == "toy.include_measured") {
    c.toy_include_measured = parse_bool(key, value);
  } else if (key == "oracle.cases") {
    c.oracle_cases = static_cast<int>(parse_int(key, value));
  } else if (key == "oracle.L") {
    c.oracle_sizes = parse_int_list(key, value);
  } else if (key == "oracle.h") {
    c.oracle_fields = parse_double_list(key, value);
  } else {
    throw ParseError("unknown key '" + key + "'", 0);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) +
                           ": expected 'key = value', got '" + line + "'",
                       lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": empty key",
                       lineno);
    }
    try {
      assign(config, key, value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(),
                       lineno);
    }
  }
  return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ParseError("override must be key=value, got '" + assignment + "'",
                     0);
  }
  assign(config, trim(assignment.substr(0, eq)),
         trim(assignment.substr(eq + 1)));
}

void validate(const RunConfig& c) {
  const bool known = c.kind == "ensemble" || c.kind == "toy-model" ||
                     c.kind == "ground-state" || c.kind == "oracle-check";
  if (!known) {
    throw ValidationError("kind", "must be ensemble | toy-model | "
                                  "ground-state | oracle-check, got '" +
                                      c.kind + "'");
  }
  for (double p : c.p_grid) {
    if (p < 0.0 || p > 1.0) {
      throw ValidationError("p", "density " + std::to_string(p) +
                                     " outside [0, 1]");
    }
  }
  if (c.coupling <= 0.0) throw ValidationError("J", "must be positive");
  if (c.workers < 1) throw ValidationError("workers", "must be >= 1");
  if (c.gamma && *c.gamma < 0.0) throw ValidationError("gamma", "must be >= 0");

  if (c.kind == "ensemble") {
    if (!c.h_set) throw ValidationError("h", "required for ensemble runs");
    if (c.sites <= 0 || c.sites % 2 != 0) {
      throw ValidationError("L", "must be a positive even integer");
    }
    if (!c.protocol) throw ValidationError("protocol", "required");
    if (c.p_grid.empty()) throw ValidationError("p", "required");
    if (c.samples <= 0) throw ValidationError("samples", "must be positive");
    if (!c.seed) throw ValidationError("seed", "required (no wall-clock default)");
    if (c.witnesses.ee_lengths.empty() && c.witnesses.fn_distances.empty() &&
        !c.witnesses.qfi) {
      throw ValidationError("witness", "select at least one witness");
    }
    for (int l : c.witnesses.ee_lengths) {
      if (l <= 0 || l > c.sites) {
        throw ValidationError("witness.ee", "interval length " +
                                                std::to_string(l) +
                                                " outside (0, L]");
      }
    }
    for (int d : c.witnesses.fn_distances) {
      if (d <= 0 || d >= c.sites) {
        throw ValidationError("witness.fn", "distance " + std::to_string(d) +
                                                " outside (0, L)");
      }
    }
  } else if (c.kind == "toy-model") {
    if (c.sites < 3) throw ValidationError("L", "must be >= 3");
    if (c.toy_xi0 < 1 || 2 * c.toy_xi0 >= c.sites) {
      throw ValidationError("toy.xi0", "must satisfy 1 <= xi0 < L/2");
    }
    if (c.p_grid.empty()) throw ValidationError("p", "required");
    if (c.samples <= 0) throw ValidationError("samples", "must be positive");
    if (!c.seed) throw ValidationError("seed", "required (no wall-clock default)");
  } else if (c.kind == "ground-state") {
    if (!c.h_set) throw ValidationError("h", "required");
    if (c.sites <= 0 || c.sites % 2 != 0) {
      throw ValidationError("L", "must be a positive even integer");
    }
  } else if (c.kind == "oracle-check") {
    if (c.oracle_cases <= 0) throw ValidationError("oracle.cases", "must be positive");
    if (!c.seed) throw ValidationError("seed", "required (no wall-clock default)");
    for (int l : c.oracle_sizes) {
      if (l < 2 || l > 12 || l % 2 != 0) {
        throw ValidationError("oracle.L", "sizes must be even and <= 12");
      }
    }
  }
}

}  // namespace macsim
