#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macsim/ensemble.hpp"

namespace macsim {

/// Parsed run description. Field names mirror the configuration keys; see
/// parse_config for the accepted keys.
struct RunConfig {
  std::string kind;  // ensemble | toy-model | ground-state | oracle-check
  double h = 0.0;
  bool h_set = false;
  double coupling = 1.0;
  std::optional<double> gamma;
  std::optional<Protocol> protocol;
  std::vector<double> p_grid;
  int sites = 0;
  int samples = 0;
  std::optional<std::uint64_t> seed;
  std::string output = "run";
  int workers = 1;

  WitnessSelection witnesses;
  bool fit_fn_decay = false;
  bool fit_ee_ceff = false;

  int toy_xi0 = 2;
  bool toy_include_measured = true;

  int oracle_cases = 50;
  std::vector<int> oracle_sizes = {4, 6, 8, 10};
  std::vector<double> oracle_fields = {0.3, 0.5, 1.0, 1.5, 3.0};
};

/// Parses flat `key = value` text (# comments, dotted sections as literal
/// key parts). Unknown keys raise ParseError; bad values raise
/// ValidationError with the field path.
RunConfig parse_config(const std::string& text);

/// Applies one `key=value` override (the --set flag).
void apply_override(RunConfig& config, const std::string& assignment);

/// Validates cross-field constraints; throws ValidationError.
void validate(const RunConfig& config);

}  // namespace macsim
