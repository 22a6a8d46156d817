#pragma once

#include <Eigen/Dense>

namespace macsim {

/// Pfaffian of a real antisymmetric matrix of even dimension.
///
/// Parlett-Reid skew-symmetric tridiagonalization with partial pivoting,
/// O(n^3). Satisfies Pf(A)^2 = det(A).
///
/// Throws OddDimension / NotAntisymmetric (max |A + A^T| checked against
/// `antisym_tol`).
double pfaffian(const Eigen::MatrixXd& a, double antisym_tol = 1e-10);

/// Same elimination without validity checks, destroying the workspace
/// matrix. Used in inner loops where the caller guarantees antisymmetry.
double pfaffian_inplace(Eigen::Ref<Eigen::MatrixXd> a);

}  // namespace macsim
