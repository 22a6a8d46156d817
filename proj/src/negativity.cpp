#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "fock_basis.hpp"
#include "macsim/covariance.hpp"
#include "macsim/errors.hpp"

namespace macsim {

namespace {

void check_pair(const MajoranaCovariance& state, int i, int j) {
  const int L = state.sites();
  if (i < 0 || i >= L || j < 0 || j >= L) {
    throw SiteOutOfRange("mode site out of range");
  }
  if (i == j) throw SameSite("two-mode operations need distinct sites");
}

// rho_A = (1/4) [ 1 + i sum_{a<b} G_{ab} mu_a mu_b - Pf(G) mu_1 mu_2 mu_3 mu_4 ]
// with G the covariance restricted to the 4 Majoranas of (lo, hi).
Eigen::Matrix4cd assemble_two_mode(const Eigen::Matrix4d& g4) {
  using C = std::complex<double>;
  const auto& mono = detail::two_mode_monomials();

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      rho += C(0.0, 1.0) * g4(a, b) * mono[(1 << a) | (1 << b)];
    }
  }
  const double pf = g4(0, 1) * g4(2, 3) - g4(0, 2) * g4(1, 3) +
                    g4(0, 3) * g4(1, 2);
  rho -= pf * mono[0b1111];
  return rho / 4.0;
}

}  // namespace

Eigen::Matrix4cd two_mode_reduced_density(const MajoranaCovariance& state,
                                          int i, int j) {
  check_pair(state, i, j);
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  const int idx[4] = {2 * lo, 2 * lo + 1, 2 * hi, 2 * hi + 1};
  Eigen::Matrix4d g4;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) g4(r, c) = state.gamma()(idx[r], idx[c]);
  }
  return assemble_two_mode(g4);
}

double fermionic_negativity(const MajoranaCovariance& state, int i, int j) {
  check_pair(state, i, j);
  const Eigen::Matrix4cd rho = two_mode_reduced_density(state, i, j);
  const int twisted_mode = (i < j) ? 0 : 1;
  const Eigen::Matrix4cd twisted =
      detail::twisted_partial_transpose(rho, twisted_mode);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(twisted);
  return std::log(svd.singularValues().sum());
}

}  // namespace macsim
