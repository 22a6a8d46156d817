#include "macsim/pfaffian.hpp"

#include <cmath>
#include <stdexcept>

#include "macsim/errors.hpp"

namespace macsim {

double pfaffian_inplace(Eigen::Ref<Eigen::MatrixXd> a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;

  double value = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Pivot: bring the largest entry of column k below the diagonal to (k+1, k).
    Eigen::Index pivot = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (pivot != k + 1) {
      a.row(k + 1).swap(a.row(pivot));
      a.col(k + 1).swap(a.col(pivot));
      value = -value;
    }

    const double akk1 = a(k, k + 1);
    if (akk1 == 0.0) return 0.0;
    value *= akk1;

    if (k + 2 < n) {
      const Eigen::Index m = n - (k + 2);
      // Gauss vector tau eliminates column k below row k+1; the trailing
      // block receives the rank-2 skew update tau w^T - w tau^T.
      Eigen::VectorXd tau = a.block(k + 2, k, m, 1) / akk1;
      Eigen::VectorXd w = a.block(k + 2, k + 1, m, 1);
      a.block(k + 2, k + 2, m, m).noalias() += tau * w.transpose();
      a.block(k + 2, k + 2, m, m).noalias() -= w * tau.transpose();
    }
  }
  return value;
}

double pfaffian(const Eigen::MatrixXd& a, double antisym_tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw OddDimension("pfaffian requires a square even-dimensional matrix");
  }
  if (a.rows() == 0) return 1.0;
  const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (asym > antisym_tol) {
    throw NotAntisymmetric("max |A + A^T| = " + std::to_string(asym));
  }
  Eigen::MatrixXd work = a;
  return pfaffian_inplace(work);
}

}  // namespace macsim
