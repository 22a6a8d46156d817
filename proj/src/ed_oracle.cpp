#include "macsim/ed_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "fock_basis.hpp"
#include "macsim/errors.hpp"

namespace macsim::ed {

namespace {

using Complex = std::complex<double>;

void check_size(int sites, int cap) {
  if (sites < 2) throw std::invalid_argument("need at least 2 sites");
  if (sites > cap) {
    throw TooLarge("dense oracle capped at " + std::to_string(cap) +
                   " sites, got " + std::to_string(sites));
  }
}

void check_site(const DenseState& state, int site) {
  if (site < 0 || site >= state.sites) {
    throw SiteOutOfRange("site " + std::to_string(site) + " out of range");
  }
}

int popcount(std::size_t n) { return std::popcount(n); }

/// y += H x for the Ising chain (periodic in the spins).
void apply_hamiltonian(const IsingParams& p, const Eigen::VectorXcd& x,
                       Eigen::VectorXcd& y) {
  const int L = p.sites;
  const std::size_t dim = x.size();
  for (std::size_t n = 0; n < dim; ++n) {
    const Complex v = x(n);
    if (v == 0.0) continue;
    const int down = popcount(n);
    y(n) += -p.h * (L - 2 * down) * v;
    for (int j = 0; j < L; ++j) {
      const std::size_t mask =
          (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % L));
      y(n ^ mask) += -p.coupling * v;
    }
  }
}

std::vector<std::size_t> even_sector_basis(int L) {
  std::vector<std::size_t> basis;
  basis.reserve(std::size_t{1} << (L - 1));
  for (std::size_t n = 0; n < (std::size_t{1} << L); ++n) {
    if (popcount(n) % 2 == 0) basis.push_back(n);
  }
  return basis;
}

/// Lanczos with full reorthogonalization for the lowest eigenpair of the
/// even-sector Hamiltonian. The sector dimension is at most 2048.
DenseState lanczos_ground_state(const IsingParams& p) {
  const int L = p.sites;
  const auto basis = even_sector_basis(L);
  const std::size_t dim = basis.size();
  std::vector<int> to_sector(std::size_t{1} << L, -1);
  for (std::size_t i = 0; i < dim; ++i) to_sector[basis[i]] = static_cast<int>(i);

  auto matvec = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double v = x(i);
      if (v == 0.0) continue;
      const std::size_t n = basis[i];
      y(i) += -p.h * (L - 2 * popcount(n)) * v;
      for (int j = 0; j < L; ++j) {
        const std::size_t mask =
            (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % L));
        y(to_sector[n ^ mask]) += -p.coupling * v;
      }
    }
    return y;
  };

  const int max_iter = std::min<int>(static_cast<int>(dim), 300);
  std::vector<Eigen::VectorXd> vs;
  std::vector<double> alpha, beta;

  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  // Deterministic start with overlap on every basis state.
  for (std::size_t i = 0; i < dim; ++i) v(i) = 1.0 + 0.3 * std::sin(1.7 * i);
  v.normalize();
  vs.push_back(v);

  double ground_energy = 0.0;
  Eigen::VectorXd ground_coeff;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = matvec(vs.back());
    alpha.push_back(vs.back().dot(w));
    for (const auto& prev : vs) w -= prev.dot(w) * prev;  // full reorth
    for (const auto& prev : vs) w -= prev.dot(w) * prev;
    const double b = w.norm();

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int r = 0; r < m; ++r) {
      tri(r, r) = alpha[r];
      if (r + 1 < m) tri(r, r + 1) = tri(r + 1, r) = beta[r];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    ground_energy = es.eigenvalues()(0);
    ground_coeff = es.eigenvectors().col(0);

    const double residual = b * std::abs(ground_coeff(m - 1));
    if (residual < 1e-13 || b < 1e-13 ||
        static_cast<std::size_t>(m) == dim) {
      break;
    }
    beta.push_back(b);
    vs.push_back(w / b);
  }

  Eigen::VectorXd sector = Eigen::VectorXd::Zero(dim);
  for (std::size_t r = 0; r < vs.size() && r < static_cast<std::size_t>(ground_coeff.size()); ++r) {
    sector += ground_coeff(r) * vs[r];
  }
  sector.normalize();

  DenseState out;
  out.sites = L;
  out.amp = Eigen::VectorXcd::Zero(std::size_t{1} << L);
  for (std::size_t i = 0; i < dim; ++i) out.amp(basis[i]) = sector(i);
  // Canonical sign: largest-magnitude amplitude real positive.
  Eigen::Index imax;
  out.amp.cwiseAbs().maxCoeff(&imax);
  if (out.amp(imax).real() < 0.0) out.amp = -out.amp;
  return out;
}

/// Applies sigma^alpha at `site` (alpha in {0,1,2} = x,y,z) to a dense vector.
void apply_pauli(int alpha, int site, Eigen::VectorXcd& psi) {
  const std::size_t bit = std::size_t{1} << site;
  const std::size_t dim = psi.size();
  switch (alpha) {
    case 0:
      for (std::size_t n = 0; n < dim; ++n) {
        if (!(n & bit)) std::swap(psi(n), psi(n | bit));
      }
      break;
    case 1:
      for (std::size_t n = 0; n < dim; ++n) {
        if (!(n & bit)) {
          const Complex up = psi(n);
          const Complex down = psi(n | bit);
          psi(n) = Complex(0.0, -1.0) * down;  // <up| sigma^y |down> = -i
          psi(n | bit) = Complex(0.0, 1.0) * up;
        }
      }
      break;
    case 2:
      for (std::size_t n = 0; n < dim; ++n) {
        if (n & bit) psi(n) = -psi(n);
      }
      break;
    default:
      throw std::invalid_argument("pauli index must be 0, 1, or 2");
  }
}

/// Jordan-Wigner string prod_{k < site} sigma^z_k.
void apply_jw_string(int site, Eigen::VectorXcd& psi) {
  const std::size_t lower = (std::size_t{1} << site) - 1;
  for (std::size_t n = 0; n < static_cast<std::size_t>(psi.size()); ++n) {
    if (popcount(n & lower) % 2 == 1) psi(n) = -psi(n);
  }
}

/// gamma_{2j} = string * sigma^x_j, gamma_{2j+1} = string * sigma^y_j.
void apply_majorana(int index, Eigen::VectorXcd& psi) {
  const int site = index / 2;
  apply_pauli(index % 2 == 0 ? 0 : 1, site, psi);
  apply_jw_string(site, psi);
}

}  // namespace

DenseState dense_ground_state(const IsingParams& params) {
  check_size(params.sites, kMaxSites);
  if (params.sites % 2 != 0) throw OddL("chain length must be even");
  return lanczos_ground_state(params);
}

DenseState dense_nh_stationary_state(const NonHermitianParams& params) {
  check_size(params.ising.sites, kMaxSitesNh);
  const int L = params.ising.sites;
  const auto basis = even_sector_basis(L);
  const std::size_t dim = basis.size();
  std::vector<int> to_sector(std::size_t{1} << L, -1);
  for (std::size_t i = 0; i < dim; ++i) to_sector[basis[i]] = static_cast<int>(i);

  Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t n = basis[i];
    const int L2 = L - 2 * popcount(n);
    ham(i, i) += -params.ising.h * L2;
    ham(i, i) += Complex(0.0, -params.gamma / 4.0) * static_cast<double>(L2);
    for (int j = 0; j < L; ++j) {
      const std::size_t mask =
          (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % L));
      ham(to_sector[n ^ mask], i) += -params.ising.coupling;
    }
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ham);
  Eigen::Index best = 0;
  double best_im = es.eigenvalues()(0).imag();
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i).imag() > best_im) {
      best_im = es.eigenvalues()(i).imag();
      best = i;
    }
  }
  Eigen::VectorXcd sector = es.eigenvectors().col(best);
  sector.normalize();

  DenseState out;
  out.sites = L;
  out.amp = Eigen::VectorXcd::Zero(std::size_t{1} << L);
  for (std::size_t i = 0; i < dim; ++i) out.amp(basis[i]) = sector(i);
  Eigen::Index imax;
  out.amp.cwiseAbs().maxCoeff(&imax);
  out.amp *= std::abs(out.amp(imax)) / out.amp(imax);
  return out;
}

DenseState dense_nh_power_iteration(const NonHermitianParams& params,
                                    int max_steps, double tol) {
  check_size(params.ising.sites, kMaxSitesNh);
  const int L = params.ising.sites;
  const std::size_t dim = std::size_t{1} << L;

  Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const int L2 = L - 2 * popcount(n);
    ham(n, n) = -params.ising.h * L2 +
                Complex(0.0, -params.gamma / 4.0) * static_cast<double>(L2);
    for (int j = 0; j < L; ++j) {
      const std::size_t mask =
          (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % L));
      ham(n ^ mask, n) += -params.ising.coupling;
    }
  }

  // U = exp(-i H dt), Taylor series at small norm then squared twice.
  const double scale =
      L * (params.ising.coupling + std::abs(params.ising.h) +
           params.gamma / 4.0);
  const double dt = 0.5 / std::max(scale, 1.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
  for (int t = 1; t <= 24; ++t) {
    term = (Complex(0.0, -dt) / static_cast<double>(t)) * (ham * term).eval();
    u += term;
  }
  u = (u * u).eval();
  u = (u * u).eval();

  Eigen::VectorXcd psi(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    psi(n) = Complex(1.0 + 0.2 * std::sin(0.9 * n), 0.1 * std::cos(1.3 * n));
  }
  psi.normalize();

  for (int step = 0; step < max_steps; ++step) {
    Eigen::VectorXcd next = u * psi;
    next.normalize();
    const double drift = 1.0 - std::abs(psi.dot(next));
    psi = next;
    if (drift < tol) {
      DenseState out;
      out.sites = L;
      out.amp = psi;
      Eigen::Index imax;
      out.amp.cwiseAbs().maxCoeff(&imax);
      out.amp *= std::abs(out.amp(imax)) / out.amp(imax);
      return out;
    }
  }
  throw NonConvergence("non-Hermitian power iteration did not converge");
}

DenseState perturbative_state(const IsingParams& params, int order,
                              PerturbativePhase phase) {
  check_size(params.sites, kMaxSites);
  const int L = params.sites;
  const std::size_t dim = std::size_t{1} << L;
  const double h = params.h;

  DenseState out;
  out.sites = L;
  out.amp = Eigen::VectorXcd::Zero(dim);

  if (phase == PerturbativePhase::LargeField) {
    if (order < 0 || order > 2) throw BadOrder("large-field order must be 0..2");
    auto defect = [&](std::initializer_list<int> sites_list) {
      std::size_t n = 0;
      for (int s : sites_list) n ^= std::size_t{1} << (s % L);
      return n;
    };
    out.amp(0) = 1.0;  // |vac> = all up
    if (order >= 1) {
      for (int i = 0; i < L; ++i) {
        out.amp(defect({i, i + 1})) += 1.0 / (4.0 * h);
      }
    }
    if (order >= 2) {
      // Disjoint defect-pair bonds (i, i+1) and (j, j+1) on the ring.
      for (int i = 0; i < L; ++i) {
        for (int j = i + 2; j < L; ++j) {
          if (i == 0 && j == L - 1) continue;  // shares site 0 across the seam
          out.amp(defect({i, i + 1, j, j + 1})) += 1.0 / (16.0 * h * h);
        }
      }
      for (int i = 0; i < L; ++i) {
        out.amp(defect({i, i + 2})) += 1.0 / (8.0 * h * h);
      }
    }
  } else {
    if (order < 0 || order > 1) throw BadOrder("small-field order must be 0..1");
    // GHZ_+ plus single x-basis flips; only even-parity components survive.
    const double base = std::pow(2.0, -0.5 * L) / std::sqrt(2.0);
    for (std::size_t n = 0; n < dim; ++n) {
      if (popcount(n) % 2 != 0) continue;
      double amp = 2.0 * base;
      if (order >= 1) {
        amp += 2.0 * base * (h / 4.0) * (L - 2 * popcount(n));
      }
      out.amp(n) = amp;
    }
  }
  out.amp.normalize();
  return out;
}

double dense_energy(const DenseState& state, const IsingParams& params) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(state.amp.size());
  apply_hamiltonian(params, state.amp, y);
  return state.amp.dot(y).real();
}

double dense_transverse_magnetization(const DenseState& state, int site) {
  check_site(state, site);
  const std::size_t bit = std::size_t{1} << site;
  double m = 0.0;
  for (std::size_t n = 0; n < static_cast<std::size_t>(state.amp.size()); ++n) {
    m += std::norm(state.amp(n)) * ((n & bit) ? -1.0 : 1.0);
  }
  return m;
}

double dense_outcome_probability(const DenseState& state, int site,
                                 int outcome) {
  check_site(state, site);
  const std::size_t bit = std::size_t{1} << site;
  double p_down = 0.0;
  for (std::size_t n = 0; n < static_cast<std::size_t>(state.amp.size()); ++n) {
    if (n & bit) p_down += std::norm(state.amp(n));
  }
  return outcome > 0 ? 1.0 - p_down : p_down;
}

DenseProjected dense_project(const DenseState& state, int site, int outcome,
                             double tol) {
  check_site(state, site);
  const std::size_t bit = std::size_t{1} << site;
  DenseProjected out{state, 0.0};
  double kept = 0.0;
  for (std::size_t n = 0; n < static_cast<std::size_t>(state.amp.size()); ++n) {
    const bool down = (n & bit) != 0;
    const bool keep = (outcome > 0) ? !down : down;
    if (keep) {
      kept += std::norm(state.amp(n));
    } else {
      out.state.amp(n) = 0.0;
    }
  }
  if (kept <= tol) throw NullProjection(site, kept);
  out.state.amp /= std::sqrt(kept);
  out.probability = kept;
  return out;
}

double dense_entanglement_entropy(const DenseState& state, int first,
                                  int length) {
  const int L = state.sites;
  if (length <= 0 || length > L) throw EmptyInterval("bad interval length");
  check_site(state, first);
  if (length == L) return 0.0;

  const std::size_t rows = std::size_t{1} << length;
  const std::size_t cols = std::size_t{1} << (L - length);
  Eigen::MatrixXcd m(rows, cols);
  std::vector<int> inside(L, -1);
  for (int r = 0; r < length; ++r) inside[(first + r) % L] = r;
  int outpos = 0;
  std::vector<int> outside(L, -1);
  for (int j = 0; j < L; ++j) {
    if (inside[j] < 0) outside[j] = outpos++;
  }
  for (std::size_t n = 0; n < static_cast<std::size_t>(state.amp.size()); ++n) {
    std::size_t row = 0, col = 0;
    for (int j = 0; j < L; ++j) {
      if (!(n & (std::size_t{1} << j))) continue;
      if (inside[j] >= 0) {
        row |= std::size_t{1} << inside[j];
      } else {
        col |= std::size_t{1} << outside[j];
      }
    }
    m(row, col) = state.amp(n);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double entropy = 0.0;
  for (double s : svd.singularValues()) {
    const double w = s * s;
    if (w > 1e-14) entropy -= w * std::log(w);
  }
  return entropy;
}

std::complex<double> dense_pauli_single(const DenseState& state, int alpha,
                                        int i) {
  check_site(state, i);
  Eigen::VectorXcd psi = state.amp;
  apply_pauli(alpha, i, psi);
  return state.amp.dot(psi);
}

std::complex<double> dense_pauli_pair(const DenseState& state, int alpha,
                                      int i, int beta, int j) {
  check_site(state, i);
  check_site(state, j);
  Eigen::VectorXcd psi = state.amp;
  apply_pauli(beta, j, psi);
  apply_pauli(alpha, i, psi);
  return state.amp.dot(psi);
}

double dense_qfi(const DenseState& state,
                 const Eigen::Matrix<double, Eigen::Dynamic, 3>& directions) {
  if (directions.rows() != state.sites) {
    throw DimensionMismatch("one direction per site required");
  }
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(state.amp.size());
  for (int j = 0; j < state.sites; ++j) {
    for (int alpha = 0; alpha < 3; ++alpha) {
      const double w = directions(j, alpha) / 2.0;
      if (w == 0.0) continue;
      Eigen::VectorXcd part = state.amp;
      apply_pauli(alpha, j, part);
      phi += w * part;
    }
  }
  const double mean = state.amp.dot(phi).real();
  return 4.0 * (phi.squaredNorm() - mean * mean);
}

std::complex<double> dense_majorana_monomial(const DenseState& state,
                                             const std::vector<int>& indices) {
  Eigen::VectorXcd psi = state.amp;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    if (*it < 0 || *it >= 2 * state.sites) {
      throw SiteOutOfRange("Majorana index out of range");
    }
    apply_majorana(*it, psi);
  }
  return state.amp.dot(psi);
}

Eigen::MatrixXd dense_covariance(const DenseState& state) {
  const int n = 2 * state.sites;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::VectorXcd> applied(n);
  for (int a = 0; a < n; ++a) {
    applied[a] = state.amp;
    apply_majorana(a, applied[a]);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // Gamma_ab = i <gamma_a gamma_b> for a != b.
      const Complex v = applied[a].dot(applied[b]);
      // <gamma_a gamma_b> = <psi| gamma_a gamma_b |psi> = (gamma_a psi, gamma_b psi)
      gamma(a, b) = (Complex(0.0, 1.0) * v).real();
      gamma(b, a) = -gamma(a, b);
    }
  }
  return gamma;
}

Eigen::Matrix4cd dense_two_mode_density(const DenseState& state, int i,
                                        int j) {
  check_site(state, i);
  check_site(state, j);
  if (i == j) throw SameSite("two-mode density needs distinct sites");
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  const int majorana[4] = {2 * lo, 2 * lo + 1, 2 * hi, 2 * hi + 1};

  const auto& mono = detail::two_mode_monomials();
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int mask = 0; mask < 16; ++mask) {
    // Coefficient of M_S is <(gamma_S)^dag> = <gamma_{s_k} ... gamma_{s_1}>.
    std::vector<int> idx;
    for (int b = 3; b >= 0; --b) {
      if (mask & (1 << b)) idx.push_back(majorana[b]);
    }
    rho += dense_majorana_monomial(state, idx) * mono[mask];
  }
  return rho / 4.0;
}

double dense_fermionic_negativity(const DenseState& state, int i, int j) {
  const Eigen::Matrix4cd rho = dense_two_mode_density(state, i, j);
  const int twisted_mode = (i < j) ? 0 : 1;
  const Eigen::Matrix4cd twisted =
      detail::twisted_partial_transpose(rho, twisted_mode);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(twisted);
  return std::log(svd.singularValues().sum());
}

double dense_projector_probability(const DenseState& state,
                                   const std::vector<int>& outcomes) {
  if (static_cast<int>(outcomes.size()) != state.sites) {
    throw DimensionMismatch("one outcome entry per site required");
  }
  double p = 0.0;
  for (std::size_t n = 0; n < static_cast<std::size_t>(state.amp.size()); ++n) {
    bool match = true;
    for (int j = 0; j < state.sites && match; ++j) {
      if (outcomes[j] == 0) continue;
      const bool down = (n & (std::size_t{1} << j)) != 0;
      if ((outcomes[j] > 0) == down) match = false;
    }
    if (match) p += std::norm(state.amp(n));
  }
  return p;
}

}  // namespace macsim::ed
