#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace macsim {

/// Majorana covariance matrix of a fermionic Gaussian state on L sites.
///
/// Convention (fixed throughout): Jordan-Wigner fermions c_j with
/// gamma_{2j} = c_j + c_j^dag and gamma_{2j+1} = -i (c_j - c_j^dag)
/// (0-based site j), and entries Gamma_{ab} = (i/2) <[gamma_a, gamma_b]>.
/// Under this convention <sigma^z_j> = -Gamma_{2j, 2j+1} and the Wick
/// contraction is <gamma_a gamma_b> = delta_{ab} - i Gamma_{ab}.
class MajoranaCovariance {
 public:
  static constexpr double kAntisymTol = 1e-10;
  static constexpr double kPurityTol = 1e-6;
  static constexpr double kPhysicalityTol = 1e-8;

  MajoranaCovariance(int sites, bool pure);

  /// Product state with sigma^z_j = outcomes[j] (each +1 or -1).
  static MajoranaCovariance product_state(const std::vector<int>& outcomes);
  static MajoranaCovariance all_up(int sites);

  int sites() const { return sites_; }
  const Eigen::MatrixXd& gamma() const { return gamma_; }
  Eigen::MatrixXd& gamma() { return gamma_; }
  bool pure() const { return pure_; }
  void set_pure(bool pure) { pure_ = pure; }

  static int a_index(int site) { return 2 * site; }
  static int b_index(int site) { return 2 * site + 1; }

  /// Throws NotAntisymmetric if max |Gamma + Gamma^T| exceeds tol.
  void check_antisymmetry(double tol = kAntisymTol) const;

  /// max |Gamma^2 + 1|; zero for exactly pure states.
  double purity_defect() const;

 private:
  int sites_;
  bool pure_;
  Eigen::MatrixXd gamma_;
};

/// <sigma^z_j>.
double transverse_magnetization(const MajoranaCovariance& state, int site);

/// Born probability of outcome s = +-1 for a sigma^z measurement at `site`.
/// The two outcomes sum to 1 exactly.
double outcome_probability(const MajoranaCovariance& state, int site, int outcome);

struct Projected {
  MajoranaCovariance state;
  double probability;
};

/// Projects `site` onto the sigma^z eigenstate `outcome` and renormalizes.
/// Throws NullProjection if the outcome probability is <= tol.
Projected project_site(const MajoranaCovariance& state, int site, int outcome,
                       double tol = 1e-12);

/// In-place variant used by sampling loops; returns the outcome probability.
double project_site_inplace(MajoranaCovariance& state, int site, int outcome,
                            double tol = 1e-12);

/// Von Neumann entropy (nats) of the contiguous interval of `length` sites
/// starting at `first` (wrapping around the ring).
double entanglement_entropy(const MajoranaCovariance& state, int first,
                            int length);

/// <gamma_{i1} gamma_{i2} ... gamma_{i2k}> for distinct Majorana indices in
/// the given operator order (0-based, in [0, 2L)). Odd-length monomials
/// return 0. Throws DuplicateIndex.
std::complex<double> majorana_monomial_expectation(
    const MajoranaCovariance& state, const std::vector<int>& indices);

/// Re-antisymmetrizes Gamma and re-checks physicality. Throws PurityDrift
/// when a pure-flagged state drifted beyond tolerance; callers should
/// discard the sample.
MajoranaCovariance stabilize(const MajoranaCovariance& state);

/// Reduced density operator of the fermionic modes at sites i and j on
/// their two-mode Fock basis |n_i n_j>. Hermitian, unit trace, PSD.
Eigen::Matrix4cd two_mode_reduced_density(const MajoranaCovariance& state,
                                          int i, int j);

/// Two-mode fermionic negativity E^f = ln Tr |rho^{T~_1}| with the twisted
/// partial transpose taken on the mode at site i.
double fermionic_negativity(const MajoranaCovariance& state, int i, int j);

}  // namespace macsim
