#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace macsim::detail {

// Two-fermion-mode Fock space, basis |n1 n2> with index n1*2 + n2.
// Majorana representation (Jordan-Wigner inside the pair):
//   mu_1 = X x I,  mu_2 = Y x I,  mu_3 = Z x X,  mu_4 = Z x Y,
// so mu_1, mu_2 belong to the first mode and mu_3, mu_4 to the second.
inline const std::array<Eigen::Matrix4cd, 4>& two_mode_majoranas() {
  static const std::array<Eigen::Matrix4cd, 4> mu = [] {
    using C = std::complex<double>;
    Eigen::Matrix2cd X, Y, Z, I;
    X << C(0), C(1), C(1), C(0);
    Y << C(0), C(0, -1), C(0, 1), C(0);
    Z << C(1), C(0), C(0), C(-1);
    I.setIdentity();
    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
      Eigen::Matrix4cd out;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
      return out;
    };
    return std::array<Eigen::Matrix4cd, 4>{kron(X, I), kron(Y, I), kron(Z, X),
                                           kron(Z, Y)};
  }();
  return mu;
}

// Ordered products mu_{s1} ... mu_{sk} for every subset of {0,1,2,3},
// indexed by bitmask. Mask bit m set means mu_{m+1} is a factor.
inline const std::array<Eigen::Matrix4cd, 16>& two_mode_monomials() {
  static const std::array<Eigen::Matrix4cd, 16> mono = [] {
    const auto& mu = two_mode_majoranas();
    std::array<Eigen::Matrix4cd, 16> out;
    for (int mask = 0; mask < 16; ++mask) {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      for (int b = 0; b < 4; ++b) {
        if (mask & (1 << b)) m = m * mu[b];
      }
      out[mask] = m;
    }
    return out;
  }();
  return mono;
}

/// Twisted partial transpose on the monomial expansion: each Majorana of the
/// chosen mode (0 = first, 1 = second) picks up a factor i.
inline Eigen::Matrix4cd twisted_partial_transpose(const Eigen::Matrix4cd& rho,
                                                  int twisted_mode) {
  using C = std::complex<double>;
  const auto& mono = two_mode_monomials();
  const int mode_bits = (twisted_mode == 0) ? 0b0011 : 0b1100;
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int mask = 0; mask < 16; ++mask) {
    // Coefficient in rho = sum_S c_S M_S: c_S = Tr(rho M_S^dag) / 4.
    const C coeff = (rho * mono[mask].adjoint()).trace() / 4.0;
    const int ntwist = __builtin_popcount(mask & mode_bits);
    const C factor = std::pow(C(0.0, 1.0), ntwist);
    out += factor * coeff * mono[mask];
  }
  return out;
}

}  // namespace macsim::detail
