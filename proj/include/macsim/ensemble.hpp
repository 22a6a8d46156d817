#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macsim/covariance.hpp"
#include "macsim/rng.hpp"
#include "macsim/state_factory.hpp"
#include "macsim/witnesses.hpp"

namespace macsim {

enum class Protocol { ForcedUp, ForcedDown, BornRule };

const char* protocol_name(Protocol p);
std::optional<Protocol> protocol_from_name(const std::string& name);

/// Per-site record m_j in {-1, 0, +1}: projected down / untouched / up.
struct MeasurementString {
  std::vector<int8_t> m;
};

/// Streaming (count, mean, M2) accumulator; merge is associative.
class EnsembleStats {
 public:
  void add(double x);
  void merge(const EnsembleStats& other);
  long long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }
  double stderror() const;

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Independent Bernoulli(p) per site; returned ascending.
std::vector<int> sample_mask(double p, int sites, RngStream& rng);

struct StringSample {
  MeasurementString string;
  MajoranaCovariance state;
  bool rejected = false;
  int rejection_site = -1;
};

/// Applies the protocol on the mask sites in ascending order. Forced
/// protocols may reject the sample (NullProjection is caught folded into
/// `rejected`); Born-rule outcomes are drawn from the conditional
/// probabilities of the partially projected state, which samples the joint
/// Born distribution exactly.
StringSample sample_string(Protocol protocol, const MajoranaCovariance& state,
                           const std::vector<int>& mask, RngStream& rng,
                           double tol = 1e-12);

struct WitnessSelection {
  std::vector<int> ee_lengths;    ///< entropy intervals [0, l)
  std::vector<int> fn_distances;  ///< negativity pair distances (ring average)
  bool qfi = false;
  AnnealingConfig annealing;
  int qfi_cutoff = 0;  ///< correlator ring-distance cutoff; 0 = full
};

struct EnsembleRunSpec {
  IsingParams ising{0, 0.0, 1.0};
  std::optional<double> gamma;  ///< non-Hermitian initial state when set
  Protocol protocol = Protocol::BornRule;
  std::vector<double> p_grid;
  WitnessSelection witnesses;
  int samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct CellResult {
  double p;
  std::string witness;  ///< "ee", "fn", "qfi"
  double param;         ///< interval length, pair distance, or 0
  EnsembleStats stats;
  long long rejected = 0;
};

struct EnsembleResult {
  std::vector<CellResult> cells;
  long long total_rejected = 0;
};

/// Monte Carlo over measurement strings. Sample k of p-grid entry q uses the
/// stream derived from (seed, q, k); per-sample witness values are reduced
/// in sample order, so results are identical for any worker count.
EnsembleResult run_ensemble(const EnsembleRunSpec& spec);

/// The initial state the spec describes (ground state or non-Hermitian
/// stationary state).
MajoranaCovariance build_initial_state(const EnsembleRunSpec& spec);

}  // namespace macsim
