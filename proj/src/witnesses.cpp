#include "macsim/witnesses.hpp"

#include <algorithm>
#include <cmath>

#include "macsim/errors.hpp"

namespace macsim {

namespace {

/// Local field g_j = sum_i C_{ji} n_i (3x3 blocks), so that
/// F = sum_j n_j . g_j and a single-site move is O(1) to score.
Eigen::Matrix<double, Eigen::Dynamic, 3> local_field(
    const CorrelatorTensor& t, const DirectionField& field) {
  const int L = t.sites;
  Eigen::Matrix<double, Eigen::Dynamic, 3> g =
      Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(L, 3);
  for (int alpha = 0; alpha < 3; ++alpha) {
    for (int beta = 0; beta < 3; ++beta) {
      // g(:, alpha) += C^{alpha beta} * n(:, beta); C_{ji} acts as the matrix
      // with row j, and C^{ab}(j, i) is already stored both ways.
      g.col(alpha).noalias() += t.c[3 * alpha + beta] * field.n.col(beta);
    }
  }
  return g;
}

Eigen::Vector3d rotate_about(const Eigen::Vector3d& v,
                             const Eigen::Vector3d& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + axis.cross(v) * s + axis * (axis.dot(v)) * (1.0 - c);
}

struct LinearFit {
  double slope, intercept, residual_rms;
};

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LinearFit fit{};
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.slope * x[i] - fit.intercept;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

DirectionField DirectionField::uniform(int sites, const Eigen::Vector3d& axis) {
  DirectionField f;
  f.n = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(sites, 3);
  const Eigen::Vector3d unit = axis.normalized();
  for (int j = 0; j < sites; ++j) f.n.row(j) = unit.transpose();
  return f;
}

void DirectionField::validate() const {
  for (int j = 0; j < sites(); ++j) {
    if (std::abs(n.row(j).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("direction at site " + std::to_string(j) +
                                  " is not normalized");
    }
  }
}

double qfi(const CorrelatorTensor& t, const DirectionField& field) {
  if (field.sites() != t.sites) {
    throw DimensionMismatch("direction field size " +
                            std::to_string(field.sites()) +
                            " != tensor size " + std::to_string(t.sites));
  }
  field.validate();
  double f = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    for (int beta = 0; beta < 3; ++beta) {
      f += field.n.col(alpha).dot(t.c[3 * alpha + beta] * field.n.col(beta));
    }
  }
  return f;
}

QfiMaximum maximize_qfi(const CorrelatorTensor& t,
                        const AnnealingConfig& config, RngStream& rng) {
  const int L = t.sites;

  const Eigen::Vector3d axes[3] = {Eigen::Vector3d::UnitX(),
                                   Eigen::Vector3d::UnitY(),
                                   Eigen::Vector3d::UnitZ()};
  QfiMaximum best{-1.0, DirectionField::uniform(L, axes[0])};
  for (const auto& axis : axes) {
    DirectionField f = DirectionField::uniform(L, axis);
    const double value = qfi(t, f) / L;
    if (value > best.density) best = {value, f};
  }

  for (int restart = 0; restart < config.restarts; ++restart) {
    RngStream stream = rng.split(static_cast<std::uint64_t>(restart));
    DirectionField field = DirectionField::uniform(L, axes[restart % 3]);
    auto g = local_field(t, field);
    double f_current = 0.0;
    for (int j = 0; j < L; ++j) f_current += field.n.row(j).dot(g.row(j));

    double temperature = config.initial_temperature;
    const int moves = config.sweeps_per_temperature * L;
    while (temperature > config.min_temperature) {
      for (int move = 0; move < moves; ++move) {
        const int j = static_cast<int>(stream.below(L));
        const Eigen::Vector3d n_old = field.n.row(j).transpose();

        Eigen::Vector3d n_new;
        if (config.xz_plane) {
          const double theta = std::atan2(n_old.x(), n_old.z()) +
                               stream.normal(0.0, config.step_sigma);
          n_new = Eigen::Vector3d(std::sin(theta), 0.0, std::cos(theta));
        } else {
          Eigen::Vector3d axis(stream.normal(), stream.normal(),
                               stream.normal());
          const double norm = axis.norm();
          if (norm < 1e-12) continue;
          axis /= norm;
          n_new = rotate_about(n_old, axis,
                               stream.normal(0.0, config.step_sigma))
                      .normalized();
        }

        const Eigen::Vector3d delta = n_new - n_old;
        // dF = 2 delta.g_j + delta^T C_jj delta
        Eigen::Matrix3d cjj;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) cjj(a, b) = t.c[3 * a + b](j, j);
        const double df = 2.0 * delta.dot(g.row(j).transpose()) +
                          delta.dot(cjj * delta);

        if (df >= 0.0 || stream.uniform() < std::exp(df / temperature)) {
          field.n.row(j) = n_new.transpose();
          f_current += df;
          for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
              g.col(a).noalias() += t.c[3 * a + b].col(j) * delta(b);
            }
          }
        }
      }
      temperature *= config.cooling;
    }

    // Re-evaluate exactly; the incremental f drifts by rounding only.
    const double f_final = qfi(t, field) / L;
    if (f_final > best.density) best = {f_final, field};
  }
  return best;
}

FitResult fit_effective_central_charge(
    const std::vector<std::pair<int, double>>& entropies, int sites) {
  std::vector<double> x, y;
  int lo = sites, hi = 0;
  for (const auto& [length, entropy] : entropies) {
    if (length < 8 || length > sites / 2) continue;
    x.push_back(std::log((sites / M_PI) * std::sin(M_PI * length / sites)));
    y.push_back(entropy);
    lo = std::min(lo, length);
    hi = std::max(hi, length);
  }
  if (x.size() < 4) {
    throw InsufficientPoints("central-charge fit needs >= 4 points with 8 <= l <= L/2");
  }
  const LinearFit fit = least_squares(x, y);
  FitResult out;
  out.estimate = 3.0 * fit.slope;
  out.intercept = fit.intercept;
  out.window_lo = lo;
  out.window_hi = hi;
  out.residual_rms = fit.residual_rms;
  return out;
}

FitResult fit_decay_length(const std::vector<DecayPoint>& points) {
  std::vector<double> d, logm, logd;
  double lo = 0.0, hi = 0.0;
  for (const auto& pt : points) {
    if (pt.distance < 3.0) continue;  // distinct short-distance behavior
    if (pt.mean <= std::max(10.0 * pt.stderror, 1e-12)) continue;
    d.push_back(pt.distance);
    logm.push_back(std::log(pt.mean));
    logd.push_back(std::log(pt.distance));
    if (lo == 0.0) lo = pt.distance;
    hi = pt.distance;
  }
  if (d.size() < 4) {
    throw InsufficientPoints("decay fit needs >= 4 usable points");
  }
  const LinearFit expfit = least_squares(d, logm);
  const LinearFit powfit = least_squares(logd, logm);

  FitResult out;
  out.estimate = -1.0 / expfit.slope;
  out.intercept = expfit.intercept;
  out.window_lo = lo;
  out.window_hi = hi;
  out.residual_rms = expfit.residual_rms;
  out.power_law_suspect = powfit.residual_rms * 2.0 <= expfit.residual_rms;
  return out;
}

}  // namespace macsim
