#include "macsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "macsim/correlators.hpp"
#include "macsim/covariance.hpp"
#include "macsim/ed_oracle.hpp"
#include "macsim/ensemble.hpp"
#include "macsim/rng.hpp"
#include "macsim/state_factory.hpp"
#include "macsim/witnesses.hpp"

namespace macsim {

namespace {

constexpr double kTol = 1e-8;
constexpr double kTolNh = 1e-6;

struct Tracker {
  OracleReport& report;
  std::vector<OracleCheck*> by_name;

  OracleCheck& check(const std::string& name, double tol) {
    for (auto& c : report.checks) {
      if (c.name == name) return c;
    }
    report.checks.push_back({name, 0.0, tol});
    return report.checks.back();
  }

  void record(const std::string& name, double err, double tol = kTol) {
    auto& c = check(name, tol);
    c.max_error = std::max(c.max_error, err);
  }
};

Eigen::Matrix<double, Eigen::Dynamic, 3> random_directions(int L,
                                                           RngStream& rng) {
  Eigen::Matrix<double, Eigen::Dynamic, 3> n(L, 3);
  for (int j = 0; j < L; ++j) {
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    while (v.norm() < 1e-6) v = {rng.normal(), rng.normal(), rng.normal()};
    n.row(j) = v.normalized().transpose();
  }
  return n;
}

}  // namespace

bool OracleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const OracleCheck& c) { return c.passed(); });
}

std::string OracleReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed() ? "[PASS] " : "[FAIL] ") << c.name
        << "  max_err=" << c.max_error << "  tol=" << c.tolerance << "\n";
  }
  return out.str();
}

OracleReport oracle_check(const std::vector<int>& sizes,
                          const std::vector<double>& fields, int cases,
                          std::uint64_t seed) {
  OracleReport report;
  report.cases = cases;
  Tracker tr{report, {}};

  for (int c = 0; c < cases; ++c) {
    RngStream rng = RngStream::derive(seed, {static_cast<std::uint64_t>(c)});
    const int L = sizes[c % sizes.size()];
    const double h = fields[static_cast<std::size_t>(rng.below(fields.size()))];
    const IsingParams params{L, h, 1.0};

    const ed::DenseState dense = ed::dense_ground_state(params);
    MajoranaCovariance state = build_ising_ground_state(params);

    tr.record("ground state energy",
              std::abs(ising_ground_state_energy(params) -
                       ed::dense_energy(dense, params)) /
                  std::abs(ed::dense_energy(dense, params)));
    tr.record("covariance matrix",
              (state.gamma() - ed::dense_covariance(dense))
                  .cwiseAbs()
                  .maxCoeff());

    // Random projection sequence with shared Born outcomes.
    ed::DenseState dense_post = dense;
    const double p = rng.uniform(0.2, 0.8);
    auto mask = sample_mask(p, L, rng);
    for (int site : mask) {
      const double p_up = ed::dense_outcome_probability(dense_post, site, 1);
      const int outcome = rng.uniform() < p_up ? 1 : -1;
      const double prob_gauss =
          outcome_probability(state, site, outcome);
      const auto dense_next = ed::dense_project(dense_post, site, outcome);
      tr.record("projection probability",
                std::abs(prob_gauss - dense_next.probability));
      project_site_inplace(state, site, outcome);
      dense_post = dense_next.state;
    }
    tr.record("projected covariance",
              (state.gamma() - ed::dense_covariance(dense_post))
                  .cwiseAbs()
                  .maxCoeff());

    for (int j = 0; j < L; ++j) {
      tr.record("transverse magnetization",
                std::abs(transverse_magnetization(state, j) -
                         ed::dense_transverse_magnetization(dense_post, j)));
    }

    const int first = static_cast<int>(rng.below(L));
    const int length = 1 + static_cast<int>(rng.below(L - 1));
    tr.record("entanglement entropy",
              std::abs(entanglement_entropy(state, first, length) -
                       ed::dense_entanglement_entropy(dense_post, first,
                                                      length)));

    const CorrelatorTensor tensor = spin_correlators(state);
    double cerr = 0.0;
    for (int i = 0; i < L; ++i) {
      for (int j = i + 1; j < L; ++j) {
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            const double dense_val =
                ed::dense_pauli_pair(dense_post, a, i, b, j).real() -
                ed::dense_pauli_single(dense_post, a, i).real() *
                    ed::dense_pauli_single(dense_post, b, j).real();
            cerr = std::max(cerr, std::abs(tensor(a, b, i, j) - dense_val));
          }
        }
      }
    }
    tr.record("spin correlators", cerr);

    DirectionField field;
    field.n = random_directions(L, rng);
    tr.record("qfi at fixed directions",
              std::abs(qfi(tensor, field) - ed::dense_qfi(dense_post, field.n)));

    const int i = static_cast<int>(rng.below(L));
    int j = static_cast<int>(rng.below(L));
    while (j == i) j = static_cast<int>(rng.below(L));
    tr.record("two-mode density",
              (two_mode_reduced_density(state, i, j) -
               ed::dense_two_mode_density(dense_post, i, j))
                  .cwiseAbs()
                  .maxCoeff());
    tr.record("fermionic negativity",
              std::abs(fermionic_negativity(state, i, j) -
                       ed::dense_fermionic_negativity(dense_post, i, j)));

    // Non-Hermitian stationary state, smaller sizes and looser tolerance.
    if (c % 8 == 0 && L <= ed::kMaxSitesNh) {
      const double gamma = 0.5 + 1.5 * rng.uniform();
      const NonHermitianParams nh{{L, h, 1.0}, gamma};
      const MajoranaCovariance nh_state = build_nh_stationary_state(nh);
      const ed::DenseState nh_dense = ed::dense_nh_stationary_state(nh);
      tr.record("nh stationary covariance",
                (nh_state.gamma() - ed::dense_covariance(nh_dense))
                    .cwiseAbs()
                    .maxCoeff(),
                kTolNh);
    }
  }
  return report;
}

}  // namespace macsim
