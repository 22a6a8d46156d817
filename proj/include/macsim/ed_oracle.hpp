#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "macsim/state_factory.hpp"

namespace macsim::ed {

/// Dense state vector in the sigma^z product basis. Bit j of the basis index
/// set means spin down at site j; sigma^z_j = 1 - 2 * bit_j. Site 0 heads
/// the Jordan-Wigner strings, matching the Gaussian-side convention.
struct DenseState {
  int sites = 0;
  Eigen::VectorXcd amp;
};

constexpr int kMaxSites = 12;
constexpr int kMaxSitesNh = 10;

/// Lowest eigenvector of the dense Hamiltonian restricted to the even
/// fermion-parity sector (the symmetry-unbroken state). L <= 12.
DenseState dense_ground_state(const IsingParams& params);

/// Eigenstate of the dense non-Hermitian chain with maximal imaginary
/// eigenvalue, from the even-sector eigendecomposition. L <= 10.
DenseState dense_nh_stationary_state(const NonHermitianParams& params);

/// Independent cross-check: repeated application of exp(-i H_NH dt) with
/// renormalization. Throws NonConvergence if the iteration stalls. L <= 8
/// is the practical size.
DenseState dense_nh_power_iteration(const NonHermitianParams& params,
                                    int max_steps = 60000, double tol = 1e-13);

enum class PerturbativePhase { LargeField, SmallField };

/// Perturbative ground-state expansions: defect pairs in 1/h (order <= 2)
/// or GHZ plus single x-basis flips in h (order <= 1), normalized.
DenseState perturbative_state(const IsingParams& params, int order,
                              PerturbativePhase phase);

double dense_energy(const DenseState& state, const IsingParams& params);
double dense_transverse_magnetization(const DenseState& state, int site);
double dense_outcome_probability(const DenseState& state, int site, int outcome);

struct DenseProjected {
  DenseState state;
  double probability;
};
DenseProjected dense_project(const DenseState& state, int site, int outcome,
                             double tol = 1e-12);

/// Von Neumann entropy of the contiguous interval [first, first + length).
double dense_entanglement_entropy(const DenseState& state, int first,
                                  int length);

/// <sigma^alpha_i sigma^beta_j>, alpha/beta in {0,1,2}.
std::complex<double> dense_pauli_pair(const DenseState& state, int alpha,
                                      int i, int beta, int j);
std::complex<double> dense_pauli_single(const DenseState& state, int alpha,
                                        int i);

/// QFI = 4 Var(O) for O = sum_j n_j . sigma_j / 2.
double dense_qfi(const DenseState& state,
                 const Eigen::Matrix<double, Eigen::Dynamic, 3>& directions);

/// <gamma_{i1} ... gamma_{ik}> via dense Jordan-Wigner Majoranas.
std::complex<double> dense_majorana_monomial(const DenseState& state,
                                             const std::vector<int>& indices);

/// Full Majorana covariance Gamma_{ab} = (i/2) <[gamma_a, gamma_b]>.
Eigen::MatrixXd dense_covariance(const DenseState& state);

/// Reduced density operator of fermionic modes (i, j) on the two-mode Fock
/// basis (same basis as the Gaussian-side builder).
Eigen::Matrix4cd dense_two_mode_density(const DenseState& state, int i, int j);

double dense_fermionic_negativity(const DenseState& state, int i, int j);

/// Exact Born-rule probability <Psi| Pi_m |Psi> of the projector string m
/// (entries -1, 0, +1).
double dense_projector_probability(const DenseState& state,
                                   const std::vector<int>& outcomes);

}  // namespace macsim::ed
