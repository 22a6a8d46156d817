#include "macsim/state_factory.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "macsim/errors.hpp"

namespace macsim {

namespace {

using Complex = std::complex<double>;

void check_params(const IsingParams& p) {
  if (p.sites <= 0 || p.sites % 2 != 0) {
    throw OddL("chain length must be a positive even integer");
  }
  if (p.coupling <= 0.0) {
    throw std::invalid_argument("coupling J must be positive");
  }
}

/// Momentum grid of the even-parity (anti-periodic) sector, k in (0, pi).
std::vector<double> momenta(int sites) {
  std::vector<double> k(sites / 2);
  for (int m = 0; m < sites / 2; ++m) {
    k[m] = (2 * m + 1) * M_PI / sites;
  }
  return k;
}

/// Assembles the covariance of a BCS state prod_k (u_k + v_k c+_k c+_{-k})|0>
/// from the per-mode occupation n_k = |v_k|^2 and pairing p_k = conj(u_k) v_k.
/// Site-space blocks (r = j - i):
///   Gamma_{a_i a_j} =  A(r),  Gamma_{b_i b_j} = -A(r),
///   Gamma_{a_i b_j} =  K(r),  with
///   A(r) = -(4/L) sum_k Re(p_k) sin(k r),
///   K(r) = (4/L) sum_k [n_k cos(k r) - Im(p_k) sin(k r)] - delta_{r0}.
MajoranaCovariance assemble_bcs(int L, const std::vector<double>& k,
                                const std::vector<double>& n,
                                const std::vector<Complex>& p) {
  std::vector<double> across(2 * L - 1), kcross(2 * L - 1);
  for (int r = -(L - 1); r <= L - 1; ++r) {
    double a = 0.0, kk = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
      const double c = std::cos(k[m] * r);
      const double s = std::sin(k[m] * r);
      a -= p[m].real() * s;
      kk += n[m] * c - p[m].imag() * s;
    }
    across[r + L - 1] = 4.0 * a / L;
    kcross[r + L - 1] = 4.0 * kk / L - (r == 0 ? 1.0 : 0.0);
  }

  MajoranaCovariance state(L, true);
  Eigen::MatrixXd& g = state.gamma();
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int r = j - i;
      const double a = across[r + L - 1];
      const double kv = kcross[r + L - 1];
      g(2 * i, 2 * j) = a;
      g(2 * i + 1, 2 * j + 1) = -a;
      g(2 * i, 2 * j + 1) = kv;
      g(2 * j + 1, 2 * i) = -kv;
    }
  }
  for (int m = 0; m < 2 * L; ++m) g(m, m) = 0.0;
  return state;
}

}  // namespace

MajoranaCovariance build_ising_ground_state(const IsingParams& params) {
  check_params(params);
  const int L = params.sites;
  const double J = params.coupling;
  const double h = params.h;

  const auto k = momenta(L);
  std::vector<double> n(k.size());
  std::vector<Complex> p(k.size());
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double xi = 2.0 * (h - J * std::cos(k[m]));
    const double lambda =
        2.0 * std::sqrt(J * J + h * h - 2.0 * J * h * std::cos(k[m]));
    n[m] = 0.5 * (1.0 - xi / lambda);
    p[m] = Complex(0.0, J * std::sin(k[m]) / lambda);
  }
  return assemble_bcs(L, k, n, p);
}

double ising_ground_state_energy(const IsingParams& params) {
  check_params(params);
  const double J = params.coupling;
  const double h = params.h;
  double e = 0.0;
  for (double k : momenta(params.sites)) {
    e -= 2.0 * std::sqrt(J * J + h * h - 2.0 * J * h * std::cos(k));
  }
  return e;
}

MajoranaCovariance build_nh_stationary_state(const NonHermitianParams& params,
                                             NhBuildReport* report) {
  check_params(params.ising);
  if (params.gamma < 0.0) {
    throw std::invalid_argument("measurement rate gamma must be >= 0");
  }
  const int L = params.ising.sites;
  const double J = params.ising.coupling;
  const Complex hc(params.ising.h, params.gamma / 4.0);

  const auto k = momenta(L);
  std::vector<double> n(k.size());
  std::vector<Complex> p(k.size());
  int degenerate = 0;

  for (std::size_t m = 0; m < k.size(); ++m) {
    const double s = std::sin(k[m]);
    const Complex xi = 2.0 * (hc - J * std::cos(k[m]));
    const Complex lambda =
        2.0 * std::sqrt(hc * hc + J * J - 2.0 * J * hc * std::cos(k[m]));

    // Pick the eigenvalue branch with the larger imaginary part; a tie
    // (always at gamma = 0) goes to the lower real energy.
    Complex e;
    if (std::abs(lambda.imag()) <= 1e-12) {
      if (params.gamma > 0.0) ++degenerate;
      e = (lambda.real() >= 0.0) ? -lambda : lambda;
    } else {
      e = (lambda.imag() > 0.0) ? lambda : -lambda;
    }

    // Eigenvector of [[-xi, 2iJs], [-2iJs, xi]]; two algebraic forms, keep
    // the better-conditioned one.
    Complex alpha, beta;
    if (std::abs(xi + e) >= std::abs(xi - e)) {
      alpha = Complex(0.0, 2.0 * J * s);
      beta = xi + e;
    } else {
      alpha = xi - e;
      beta = Complex(0.0, 2.0 * J * s);
    }
    const double norm2 = std::norm(alpha) + std::norm(beta);
    n[m] = std::norm(beta) / norm2;
    p[m] = std::conj(alpha) * beta / norm2;
  }

  if (report) report->degenerate_modes = degenerate;
  return assemble_bcs(L, k, n, p);
}

double critical_gamma(double h) {
  if (std::abs(h) > 1.0) return 0.0;
  return 4.0 * std::sqrt(1.0 - h * h);
}

}  // namespace macsim
