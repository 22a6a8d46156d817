#pragma once

#include "macsim/covariance.hpp"

namespace macsim {

/// Quantum Ising chain H = -J sum_j s^x_j s^x_{j+1} - h sum_j s^z_j with
/// periodic boundary conditions in the spins. L must be even.
struct IsingParams {
  int sites;
  double h;
  double coupling = 1.0;  // J
};

/// Adds the measurement rate of the non-Hermitian chain
/// H_NH = H - i (gamma/4) sum_j s^z_j.
struct NonHermitianParams {
  IsingParams ising;
  double gamma = 0.0;
};

struct NhBuildReport {
  int degenerate_modes = 0;  ///< modes with |Im| tie at gamma > 0
};

/// Covariance of the even-parity (symmetry-unbroken) Bogoliubov vacuum.
MajoranaCovariance build_ising_ground_state(const IsingParams& params);

/// Ground-state energy from the Bogoliubov mode sum.
double ising_ground_state_energy(const IsingParams& params);

/// Covariance of the normalized right eigenstate of H_NH with maximal
/// imaginary eigenvalue, assembled mode by mode from the complex Bogoliubov
/// problem with field h + i gamma / 4. Per-mode ties in the imaginary part
/// are broken toward the lower real energy (so gamma = 0 reduces to the
/// ground state) and counted in `report` when given.
MajoranaCovariance build_nh_stationary_state(const NonHermitianParams& params,
                                             NhBuildReport* report = nullptr);

/// gamma_c(h) = 4 sqrt(1 - h^2) for |h| <= 1; 0 outside (no logarithmic
/// phase exists there).
double critical_gamma(double h);

}  // namespace macsim
