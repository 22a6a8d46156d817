#include "macsim/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "macsim/correlators.hpp"
#include "macsim/errors.hpp"

namespace macsim {

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::ForcedUp: return "up";
    case Protocol::ForcedDown: return "down";
    case Protocol::BornRule: return "born";
  }
  return "?";
}

std::optional<Protocol> protocol_from_name(const std::string& name) {
  if (name == "up") return Protocol::ForcedUp;
  if (name == "down") return Protocol::ForcedDown;
  if (name == "born") return Protocol::BornRule;
  return std::nullopt;
}

void EnsembleStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / n_;
  m2_ += delta * (x - mean_);
}

void EnsembleStats::merge(const EnsembleStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double delta = other.mean_ - mean_;
  const long long n = n_ + other.n_;
  mean_ += delta * other.n_ / n;
  m2_ += other.m2_ + delta * delta * (static_cast<double>(n_) * other.n_) / n;
  n_ = n;
}

double EnsembleStats::stderror() const {
  if (n_ < 2) return 0.0;
  return std::sqrt(m2_ / (static_cast<double>(n_) * (n_ - 1)));
}

std::vector<int> sample_mask(double p, int sites, RngStream& rng) {
  if (p < 0.0 || p > 1.0) {
    throw DensityOutOfRange("measurement density must lie in [0, 1]");
  }
  std::vector<int> mask;
  for (int j = 0; j < sites; ++j) {
    if (rng.uniform() < p) mask.push_back(j);
  }
  return mask;
}

StringSample sample_string(Protocol protocol, const MajoranaCovariance& state,
                           const std::vector<int>& mask, RngStream& rng,
                           double tol) {
  StringSample out{MeasurementString{std::vector<int8_t>(state.sites(), 0)},
                   state};
  for (int site : mask) {
    if (site < 0 || site >= state.sites()) {
      throw SiteOutOfRange("mask site out of range");
    }
    int outcome;
    switch (protocol) {
      case Protocol::ForcedUp: outcome = 1; break;
      case Protocol::ForcedDown: outcome = -1; break;
      case Protocol::BornRule: {
        const double p_up = outcome_probability(out.state, site, 1);
        outcome = rng.uniform() < p_up ? 1 : -1;
        break;
      }
    }
    try {
      project_site_inplace(out.state, site, outcome, tol);
    } catch (const NullProjection&) {
      out.rejected = true;
      out.rejection_site = site;
      return out;
    }
    out.string.m[site] = static_cast<int8_t>(outcome);
  }
  return out;
}

MajoranaCovariance build_initial_state(const EnsembleRunSpec& spec) {
  if (spec.gamma.has_value()) {
    return build_nh_stationary_state({spec.ising, *spec.gamma});
  }
  return build_ising_ground_state(spec.ising);
}

namespace {

struct CellLayout {
  std::vector<std::string> witness;
  std::vector<double> param;

  explicit CellLayout(const WitnessSelection& w) {
    for (int length : w.ee_lengths) {
      witness.push_back("ee");
      param.push_back(length);
    }
    for (int d : w.fn_distances) {
      witness.push_back("fn");
      param.push_back(d);
    }
    if (w.qfi) {
      witness.push_back("qfi");
      param.push_back(0.0);
    }
  }

  std::size_t size() const { return witness.size(); }
};

/// Witness values for one post-measurement state; layout order.
std::vector<double> evaluate_witnesses(const MajoranaCovariance& state,
                                       const WitnessSelection& w,
                                       RngStream& rng) {
  std::vector<double> values;
  const int L = state.sites();
  for (int length : w.ee_lengths) {
    values.push_back(entanglement_entropy(state, 0, length));
  }
  for (int d : w.fn_distances) {
    double sum = 0.0;
    for (int i = 0; i < L; ++i) {
      sum += fermionic_negativity(state, i, (i + d) % L);
    }
    values.push_back(sum / L);
  }
  if (w.qfi) {
    const CorrelatorTensor tensor = spin_correlators(state, w.qfi_cutoff);
    RngStream anneal_rng = rng.split(0x51f1);
    values.push_back(maximize_qfi(tensor, w.annealing, anneal_rng).density);
  }
  return values;
}

void validate_spec(const EnsembleRunSpec& spec) {
  if (spec.samples <= 0) throw std::invalid_argument("samples must be positive");
  if (spec.p_grid.empty()) throw std::invalid_argument("empty p grid");
  for (double p : spec.p_grid) {
    if (p < 0.0 || p > 1.0) {
      throw DensityOutOfRange("p = " + std::to_string(p));
    }
  }
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleRunSpec& spec) {
  validate_spec(spec);
  const MajoranaCovariance initial = build_initial_state(spec);
  const CellLayout layout(spec.witnesses);
  const int cells_per_p = static_cast<int>(layout.size());
  const int P = static_cast<int>(spec.p_grid.size());
  const int K = spec.samples;
  const int L = initial.sites();

  // Per-sample witness values; NaN row marks a rejected sample. Reduction
  // runs in (p, k) order after all workers finish, so the output does not
  // depend on scheduling.
  std::vector<std::vector<double>> values(
      static_cast<std::size_t>(P) * K,
      std::vector<double>());
  std::vector<char> rejected(static_cast<std::size_t>(P) * K, 0);

  // Purity checks are O(L^3); sample sparsely on big chains.
  const int purity_stride = L <= 128 ? 1 : 32;

  auto run_sample = [&](int pi, int k) {
    const double p = spec.p_grid[pi];
    const std::size_t slot = static_cast<std::size_t>(pi) * K + k;
    RngStream stream = RngStream::derive(
        spec.seed, {static_cast<std::uint64_t>(pi),
                    static_cast<std::uint64_t>(k)});
    if (p == 0.0 && k > 0) return;  // all p = 0 samples are identical

    const std::vector<int> mask = sample_mask(p, L, stream);
    StringSample sample = sample_string(spec.protocol, initial, mask, stream);
    if (sample.rejected) {
      rejected[slot] = 1;
      return;
    }
    Eigen::MatrixXd& g = sample.state.gamma();
    g = ((g - g.transpose()) / 2.0).eval();
    if (k % purity_stride == 0) {
      const double defect = sample.state.purity_defect();
      if (defect > MajoranaCovariance::kPurityTol) {
        rejected[slot] = 1;
        return;
      }
    }
    values[slot] = evaluate_witnesses(sample.state, spec.witnesses, stream);
  };

  const int workers = std::max(1, spec.workers);
  if (workers == 1) {
    for (int pi = 0; pi < P; ++pi) {
      for (int k = 0; k < K; ++k) run_sample(pi, k);
    }
  } else {
    std::atomic<int> next{0};
    const int total = P * K;
    auto worker = [&]() {
      for (int job = next.fetch_add(1); job < total;
           job = next.fetch_add(1)) {
        run_sample(job / K, job % K);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  EnsembleResult result;
  for (int pi = 0; pi < P; ++pi) {
    const double p = spec.p_grid[pi];
    std::vector<CellResult> row(cells_per_p);
    long long n_rejected = 0;
    for (int c = 0; c < cells_per_p; ++c) {
      row[c].p = p;
      row[c].witness = layout.witness[c];
      row[c].param = layout.param[c];
    }
    for (int k = 0; k < K; ++k) {
      std::size_t slot = static_cast<std::size_t>(pi) * K + k;
      if (p == 0.0) slot = static_cast<std::size_t>(pi) * K;  // shared sample
      if (rejected[slot]) {
        ++n_rejected;
        continue;
      }
      for (int c = 0; c < cells_per_p; ++c) {
        row[c].stats.add(values[slot][c]);
      }
    }
    for (int c = 0; c < cells_per_p; ++c) {
      row[c].rejected = n_rejected;
      result.cells.push_back(std::move(row[c]));
    }
    result.total_rejected += n_rejected;
  }
  return result;
}

}  // namespace macsim
