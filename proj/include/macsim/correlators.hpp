#pragma once

#include <Eigen/Dense>
#include <array>

#include "macsim/covariance.hpp"

namespace macsim {

/// Connected spin-spin correlators C^{ab}_{ij} = <s^a_i s^b_j> - <s^a_i><s^b_j>
/// for a, b in {x, y, z} plus the single-site means. Entries are real; the
/// same-site cross entries store the symmetrized (real) part, which is what
/// the QFI quadratic form consumes.
struct CorrelatorTensor {
  int sites = 0;
  int cutoff = 0;  ///< ring-distance cutoff used at build time; 0 = full
  std::array<Eigen::MatrixXd, 9> c{};
  Eigen::Matrix<double, 3, Eigen::Dynamic> means;

  double operator()(int alpha, int beta, int i, int j) const {
    return c[3 * alpha + beta](i, j);
  }
};

/// <sigma^alpha_i sigma^beta_j> (not connected), alpha/beta in {0,1,2} for
/// x/y/z, i != j. Jordan-Wigner strings are evaluated as Pfaffians of the
/// covariance restricted to the string's Majorana indices; for pairs more
/// than half a ring apart the complement string times the fermion parity is
/// used instead, which keeps the Pfaffian dimension at most 2L - 2k.
double pauli_pair_expectation(const MajoranaCovariance& state, int alpha,
                              int i, int beta, int j);

/// Builds the full tensor. `cutoff_distance` > 0 limits computation to pairs
/// within that ring distance (entries beyond it stay zero).
CorrelatorTensor spin_correlators(const MajoranaCovariance& state,
                                  int cutoff_distance = 0);

}  // namespace macsim
