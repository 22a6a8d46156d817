#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace macsim {

struct OracleCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  int cases = 0;
  bool passed() const;
  std::string summary() const;  ///< one line per check
};

/// Randomized Gaussian-vs-dense cross validation: for each case a chain size
/// from `sizes`, a field from `fields`, and a random projection sequence are
/// drawn, and every Gaussian-side quantity is compared against the dense
/// reference (tolerance 1e-8; non-Hermitian stationary states 1e-6).
OracleReport oracle_check(const std::vector<int>& sizes,
                          const std::vector<double>& fields, int cases,
                          std::uint64_t seed);

}  // namespace macsim
