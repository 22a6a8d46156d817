#include "macsim/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "macsim/errors.hpp"
#include "macsim/pfaffian.hpp"

namespace macsim {

namespace {

void check_site(const MajoranaCovariance& state, int site) {
  if (site < 0 || site >= state.sites()) {
    throw SiteOutOfRange("site " + std::to_string(site) + " not in [0, " +
                         std::to_string(state.sites()) + ")");
  }
}

void check_outcome(int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("measurement outcome must be +1 or -1");
  }
}

double binary_entropy(double x) {
  double s = 0.0;
  if (x > 0.0) s -= x * std::log(x);
  if (x < 1.0) s -= (1.0 - x) * std::log(1.0 - x);
  return s;
}

}  // namespace

MajoranaCovariance::MajoranaCovariance(int sites, bool pure)
    : sites_(sites), pure_(pure),
      gamma_(Eigen::MatrixXd::Zero(2 * sites, 2 * sites)) {
  if (sites <= 0) throw std::invalid_argument("site count must be positive");
}

MajoranaCovariance MajoranaCovariance::product_state(
    const std::vector<int>& outcomes) {
  MajoranaCovariance state(static_cast<int>(outcomes.size()), true);
  for (int j = 0; j < state.sites(); ++j) {
    check_outcome(outcomes[j]);
    // <sigma^z_j> = s  <=>  Gamma_{a_j, b_j} = -s.
    state.gamma_(a_index(j), b_index(j)) = -outcomes[j];
    state.gamma_(b_index(j), a_index(j)) = outcomes[j];
  }
  return state;
}

MajoranaCovariance MajoranaCovariance::all_up(int sites) {
  return product_state(std::vector<int>(sites, 1));
}

void MajoranaCovariance::check_antisymmetry(double tol) const {
  const double defect = (gamma_ + gamma_.transpose()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw NotAntisymmetric("covariance antisymmetry defect " +
                           std::to_string(defect));
  }
}

double MajoranaCovariance::purity_defect() const {
  const Eigen::Index n = gamma_.rows();
  Eigen::MatrixXd sq = gamma_ * gamma_;
  sq += Eigen::MatrixXd::Identity(n, n);
  return sq.cwiseAbs().maxCoeff();
}

double transverse_magnetization(const MajoranaCovariance& state, int site) {
  check_site(state, site);
  return -state.gamma()(MajoranaCovariance::a_index(site),
                        MajoranaCovariance::b_index(site));
}

double outcome_probability(const MajoranaCovariance& state, int site,
                           int outcome) {
  check_site(state, site);
  check_outcome(outcome);
  const double p_up = (1.0 + transverse_magnetization(state, site)) / 2.0;
  // Complement form keeps p(+1) + p(-1) == 1 exactly.
  return outcome > 0 ? p_up : 1.0 - p_up;
}

double project_site_inplace(MajoranaCovariance& state, int site, int outcome,
                            double tol) {
  check_site(state, site);
  check_outcome(outcome);
  const double prob = outcome_probability(state, site, outcome);
  if (prob <= tol) throw NullProjection(site, prob);

  Eigen::MatrixXd& g = state.gamma();
  const int a = MajoranaCovariance::a_index(site);
  const int b = MajoranaCovariance::b_index(site);
  const double s = static_cast<double>(outcome);
  const double denom = 1.0 - s * g(a, b);  // = 2 * prob

  // Gaussian conditioning on the measured Majorana pair: rank-2 correction
  // of the rest block, Gamma'_{cd} = Gamma_{cd} + s (u_c v_d - v_c u_d)/denom
  // with u = Gamma_{., a}, v = Gamma_{., b}.
  Eigen::VectorXd u = g.col(a);
  Eigen::VectorXd v = g.col(b);
  u(a) = u(b) = 0.0;
  v(a) = v(b) = 0.0;
  const double w = s / denom;
  g.noalias() += (w * u) * v.transpose();
  g.noalias() -= (w * v) * u.transpose();

  g.row(a).setZero();
  g.row(b).setZero();
  g.col(a).setZero();
  g.col(b).setZero();
  g(a, b) = -s;
  g(b, a) = s;
  return prob;
}

Projected project_site(const MajoranaCovariance& state, int site, int outcome,
                       double tol) {
  Projected out{state, 0.0};
  out.probability = project_site_inplace(out.state, site, outcome, tol);
  return out;
}

double entanglement_entropy(const MajoranaCovariance& state, int first,
                            int length) {
  const int L = state.sites();
  if (length <= 0 || length > L) {
    throw EmptyInterval("interval length " + std::to_string(length) +
                        " not in (0, " + std::to_string(L) + "]");
  }
  check_site(state, first);

  Eigen::VectorXi idx(2 * length);
  for (int r = 0; r < length; ++r) {
    const int j = (first + r) % L;
    idx(2 * r) = MajoranaCovariance::a_index(j);
    idx(2 * r + 1) = MajoranaCovariance::b_index(j);
  }
  Eigen::MatrixXd sub = state.gamma()(idx, idx);

  // i*Gamma_A is Hermitian with spectrum {+-nu_k}, nu_k in [0, 1].
  Eigen::MatrixXcd herm =
      std::complex<double>(0.0, 1.0) * sub.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm,
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd evals = solver.eigenvalues();

  double entropy = 0.0;
  for (int k = length; k < 2 * length; ++k) {  // positive half of the spectrum
    double nu = evals(k);
    if (nu < 0.0 || nu > 1.0) {
      if (nu < -1e-10 || nu > 1.0 + 1e-10) {
        throw std::runtime_error("covariance eigenvalue " +
                                 std::to_string(nu) + " outside [0, 1]");
      }
      nu = std::clamp(nu, 0.0, 1.0);
    }
    entropy += binary_entropy((1.0 + nu) / 2.0);
  }
  return entropy;
}

std::complex<double> majorana_monomial_expectation(
    const MajoranaCovariance& state, const std::vector<int>& indices) {
  const int dim = 2 * state.sites();
  for (int i : indices) {
    if (i < 0 || i >= dim) {
      throw SiteOutOfRange("Majorana index " + std::to_string(i) +
                           " not in [0, " + std::to_string(dim) + ")");
    }
  }
  std::vector<int> sorted = indices;
  // Insertion sort, counting transpositions: each adjacent swap of distinct
  // Majoranas flips the sign of the monomial.
  int sign = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    int key = sorted[i];
    std::size_t j = i;
    while (j > 0 && sorted[j - 1] > key) {
      sorted[j] = sorted[j - 1];
      sign = -sign;
      --j;
    }
    sorted[j] = key;
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw DuplicateIndex("repeated Majorana index " +
                           std::to_string(sorted[i]));
    }
  }
  if (sorted.size() % 2 != 0) return 0.0;
  if (sorted.empty()) return 1.0;

  const int k = static_cast<int>(sorted.size()) / 2;
  Eigen::MatrixXd sub(2 * k, 2 * k);
  for (int r = 0; r < 2 * k; ++r) {
    for (int c = 0; c < 2 * k; ++c) {
      sub(r, c) = state.gamma()(sorted[r], sorted[c]);
    }
  }
  const double pf = pfaffian_inplace(sub);
  // <gamma...> = (-i)^k Pf(Gamma_sub), times the reordering sign.
  std::complex<double> phase = std::pow(std::complex<double>(0.0, -1.0), k);
  return static_cast<double>(sign) * phase * pf;
}

MajoranaCovariance stabilize(const MajoranaCovariance& state) {
  MajoranaCovariance out = state;
  Eigen::MatrixXd& g = out.gamma();
  g = ((g - g.transpose()) / 2.0).eval();

  const Eigen::Index n = g.rows();
  Eigen::MatrixXd sq = g * g;

  if (out.pure()) {
    const double defect =
        (sq + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > MajoranaCovariance::kPurityTol) throw PurityDrift(defect);
    return out;
  }

  // Physicality: largest singular value of Gamma, i.e. sqrt(lambda_max of
  // -Gamma^2). Power iteration on the symmetric PSD matrix -Gamma^2.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd y = -(sq * x);
    lambda = y.norm();
    if (lambda == 0.0) break;
    x = y / lambda;
  }
  if (std::sqrt(std::max(lambda, 0.0)) >
      1.0 + MajoranaCovariance::kPhysicalityTol) {
    throw std::runtime_error("covariance is unphysical: |Gamma| = " +
                             std::to_string(std::sqrt(lambda)));
  }
  return out;
}

}  // namespace macsim
