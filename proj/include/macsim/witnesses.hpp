#pragma once

#include <Eigen/Dense>
#include <vector>

#include "macsim/correlators.hpp"
#include "macsim/rng.hpp"

namespace macsim {

/// One unit 3-vector per site, the direction field of the collective
/// operator O = sum_j n_j . sigma_j / 2.
struct DirectionField {
  Eigen::Matrix<double, Eigen::Dynamic, 3> n;

  static DirectionField uniform(int sites, const Eigen::Vector3d& axis);
  int sites() const { return static_cast<int>(n.rows()); }
  void validate() const;  // unit rows within 1e-12
};

/// F_Q = sum_{ab} sum_{ij} n_i^a n_j^b C^{ab}_{ij}. Returns the QFI itself
/// (not the density).
double qfi(const CorrelatorTensor& correlators, const DirectionField& field);

struct AnnealingConfig {
  double initial_temperature = 1.0;
  double cooling = 0.95;
  int sweeps_per_temperature = 5;  ///< moves per temperature = sweeps * L
  double step_sigma = 0.3;         ///< proposal rotation angle stddev (rad)
  int restarts = 3;
  double min_temperature = 1e-4;
  bool xz_plane = false;  ///< restrict directions to the xz plane
};

struct QfiMaximum {
  double density;  ///< best f_Q = F_Q / L found
  DirectionField directions;
};

/// Simulated-annealing maximization of f_Q over direction fields. The three
/// uniform axis fields are always evaluated as seeds, so the result is never
/// below them. Deterministic for a fixed stream; more restarts can only
/// improve the result.
QfiMaximum maximize_qfi(const CorrelatorTensor& correlators,
                        const AnnealingConfig& config, RngStream& rng);

struct FitResult {
  double estimate = 0.0;   ///< c_eff or xi
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual_rms = 0.0;
  bool power_law_suspect = false;
};

/// Least-squares fit of S_l = (c/3) ln[(L/pi) sin(pi l / L)] + const over
/// points with 8 <= l <= L/2.
FitResult fit_effective_central_charge(
    const std::vector<std::pair<int, double>>& entropies, int sites);

struct DecayPoint {
  double distance;
  double mean;
  double stderror;
};

/// Fit of ln(mean) vs distance over usable points (d >= 3 and
/// mean > max(10 stderr, 1e-12)); estimate = xi = -1/slope. Flags
/// power_law_suspect when a ln-ln fit beats the exponential fit by 2x.
FitResult fit_decay_length(const std::vector<DecayPoint>& points);

}  // namespace macsim
