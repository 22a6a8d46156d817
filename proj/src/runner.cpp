#include "macsim/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "macsim/correlators.hpp"
#include "macsim/errors.hpp"
#include "macsim/toy_network.hpp"
#include "macsim/validation.hpp"

namespace macsim {

namespace {

constexpr const char* kVersion = "macsim 0.1.0";

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct ResultRow {
  std::string protocol;  // empty if not applicable
  double p = 0.0;
  std::string witness;
  double param = 0.0;
  double mean = 0.0;
  double stderror = 0.0;
  long long n_samples = 0;
  long long n_rejected = 0;
};

struct FitRow {
  std::string quantity;
  double p = 0.0;
  double estimate = 0.0;
  double residual = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

class OutputFiles {
 public:
  explicit OutputFiles(const RunConfig& config) : config_(config) {}

  std::vector<ResultRow> rows;
  std::vector<FitRow> fits;
  std::string report_text;

  void write(double wall_seconds) {
    write_results();
    if (!fits.empty()) write_fits();
    if (!report_text.empty()) {
      const std::string path = config_.output + ".oracle.txt";
      std::ofstream out(path, std::ios::binary);
      out << report_text;
      written_.push_back(path);
    }
    write_metadata(wall_seconds);
  }

  void remove_partial() {
    for (const auto& path : written_) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
  }

 private:
  void write_results() {
    const std::string path = config_.output + ".results.csv";
    std::ofstream out(path, std::ios::binary);
    out << "kind,protocol,h,gamma,p,L,witness,param,mean,stderr,n_samples,"
           "n_rejected\n";
    const std::string gamma = config_.gamma ? fmt(*config_.gamma) : "";
    const std::string h = config_.h_set ? fmt(config_.h) : "";
    for (const auto& r : rows) {
      out << config_.kind << ',' << r.protocol << ',' << h << ',' << gamma
          << ',' << fmt(r.p) << ',' << config_.sites << ',' << r.witness
          << ',' << fmt(r.param) << ',' << fmt(r.mean) << ','
          << fmt(r.stderror) << ',' << r.n_samples << ',' << r.n_rejected
          << '\n';
    }
    written_.push_back(path);
  }

  void write_fits() {
    const std::string path = config_.output + ".fits.csv";
    std::ofstream out(path, std::ios::binary);
    out << "quantity,p,estimate,residual,window_lo,window_hi\n";
    for (const auto& f : fits) {
      out << f.quantity << ',' << fmt(f.p) << ',' << fmt(f.estimate) << ','
          << fmt(f.residual) << ',' << fmt(f.window_lo) << ','
          << fmt(f.window_hi) << '\n';
    }
    written_.push_back(path);
  }

  void write_metadata(double wall_seconds) {
    nlohmann::json meta;
    meta["artifact_version"] = kVersion;
    meta["rng_algorithm"] = rng_algorithm_id();
    meta["wall_time_seconds"] = wall_seconds;

    nlohmann::json cfg;
    cfg["kind"] = config_.kind;
    if (config_.h_set) cfg["h"] = config_.h;
    cfg["J"] = config_.coupling;
    if (config_.gamma) cfg["gamma"] = *config_.gamma;
    if (config_.protocol) cfg["protocol"] = protocol_name(*config_.protocol);
    cfg["p"] = config_.p_grid;
    cfg["L"] = config_.sites;
    cfg["samples"] = config_.samples;
    if (config_.seed) cfg["seed"] = *config_.seed;
    cfg["workers"] = config_.workers;
    cfg["output"] = config_.output;
    cfg["witness.ee"] = config_.witnesses.ee_lengths;
    cfg["witness.fn"] = config_.witnesses.fn_distances;
    cfg["witness.qfi"] = config_.witnesses.qfi;
    if (config_.witnesses.qfi) {
      cfg["qfi.t0"] = config_.witnesses.annealing.initial_temperature;
      cfg["qfi.cooling"] = config_.witnesses.annealing.cooling;
      cfg["qfi.sweeps"] = config_.witnesses.annealing.sweeps_per_temperature;
      cfg["qfi.sigma"] = config_.witnesses.annealing.step_sigma;
      cfg["qfi.restarts"] = config_.witnesses.annealing.restarts;
      cfg["qfi.tmin"] = config_.witnesses.annealing.min_temperature;
      cfg["qfi.xz_plane"] = config_.witnesses.annealing.xz_plane;
      cfg["qfi.cutoff"] = config_.witnesses.qfi_cutoff;
    }
    if (config_.kind == "toy-model") {
      cfg["toy.xi0"] = config_.toy_xi0;
      cfg["toy.include_measured"] = config_.toy_include_measured;
    }
    if (config_.kind == "oracle-check") {
      cfg["oracle.cases"] = config_.oracle_cases;
      cfg["oracle.L"] = config_.oracle_sizes;
      cfg["oracle.h"] = config_.oracle_fields;
    }
    meta["config"] = cfg;

    const std::string path = config_.output + ".meta.json";
    std::ofstream out(path, std::ios::binary);
    out << meta.dump(2) << '\n';
    written_.push_back(path);
  }

  const RunConfig& config_;
  std::vector<std::string> written_;
};

void run_ensemble_kind(const RunConfig& config, OutputFiles& files) {
  EnsembleRunSpec spec;
  spec.ising = {config.sites, config.h, config.coupling};
  spec.gamma = config.gamma;
  spec.protocol = *config.protocol;
  spec.p_grid = config.p_grid;
  spec.witnesses = config.witnesses;
  spec.samples = config.samples;
  spec.seed = *config.seed;
  spec.workers = config.workers;

  const EnsembleResult result = run_ensemble(spec);
  const std::string proto = protocol_name(spec.protocol);
  for (const auto& cell : result.cells) {
    files.rows.push_back({proto, cell.p, cell.witness, cell.param,
                          cell.stats.mean(), cell.stats.stderror(),
                          cell.stats.count(), cell.rejected});
  }

  if (config.fit_fn_decay && !config.witnesses.fn_distances.empty()) {
    for (double p : config.p_grid) {
      std::vector<DecayPoint> pts;
      for (const auto& cell : result.cells) {
        if (cell.p == p && cell.witness == "fn") {
          pts.push_back({cell.param, cell.stats.mean(),
                         cell.stats.stderror()});
        }
      }
      try {
        const FitResult fit = fit_decay_length(pts);
        files.fits.push_back({"fn_xi", p, fit.estimate, fit.residual_rms,
                              fit.window_lo, fit.window_hi});
      } catch (const InsufficientPoints&) {
        // deep in the decayed tail; skip the fit row for this p
      }
    }
  }
  if (config.fit_ee_ceff && !config.witnesses.ee_lengths.empty()) {
    for (double p : config.p_grid) {
      std::vector<std::pair<int, double>> pts;
      for (const auto& cell : result.cells) {
        if (cell.p == p && cell.witness == "ee") {
          pts.push_back({static_cast<int>(cell.param), cell.stats.mean()});
        }
      }
      try {
        const FitResult fit = fit_effective_central_charge(pts, config.sites);
        files.fits.push_back({"ee_ceff", p, fit.estimate, fit.residual_rms,
                              fit.window_lo, fit.window_hi});
      } catch (const InsufficientPoints&) {
      }
    }
  }
}

void run_toy_kind(const RunConfig& config, OutputFiles& files) {
  for (double p : config.p_grid) {
    const auto points =
        run_toy_ensemble(config.sites, config.toy_xi0, p, config.samples,
                         *config.seed, config.toy_include_measured);
    for (const auto& pt : points) {
      files.rows.push_back({"", p, "bond", pt.distance, pt.mean, pt.stderror,
                            config.samples, 0});
    }
    try {
      const FitResult fit = fit_decay_length(points);
      files.fits.push_back({"toy_xi", p, fit.estimate, fit.residual_rms,
                            fit.window_lo, fit.window_hi});
    } catch (const InsufficientPoints&) {
    }
  }
}

void run_ground_state_kind(const RunConfig& config, OutputFiles& files) {
  MajoranaCovariance state =
      config.gamma
          ? build_nh_stationary_state(
                {{config.sites, config.h, config.coupling}, *config.gamma})
          : build_ising_ground_state(
                {config.sites, config.h, config.coupling});

  std::vector<int> lengths = config.witnesses.ee_lengths;
  if (lengths.empty()) {
    for (int l = 2; l <= config.sites / 2; l *= 2) lengths.push_back(l);
  }
  std::vector<std::pair<int, double>> profile;
  for (int l : lengths) {
    const double s = entanglement_entropy(state, 0, l);
    profile.push_back({l, s});
    files.rows.push_back({"", 0.0, "ee", static_cast<double>(l), s, 0.0, 1, 0});
  }
  files.rows.push_back(
      {"", 0.0, "sz", 0.0, transverse_magnetization(state, 0), 0.0, 1, 0});
  if (!config.gamma) {
    files.rows.push_back(
        {"", 0.0, "energy", 0.0,
         ising_ground_state_energy({config.sites, config.h, config.coupling}),
         0.0, 1, 0});
  }
  for (int d : config.witnesses.fn_distances) {
    files.rows.push_back({"", 0.0, "fn", static_cast<double>(d),
                          fermionic_negativity(state, 0, d % config.sites),
                          0.0, 1, 0});
  }
  if (config.fit_ee_ceff) {
    const FitResult fit = fit_effective_central_charge(profile, config.sites);
    files.fits.push_back({"ee_ceff", 0.0, fit.estimate, fit.residual_rms,
                          fit.window_lo, fit.window_hi});
  }
}

int run_oracle_kind(const RunConfig& config, OutputFiles& files) {
  const OracleReport report =
      oracle_check(config.oracle_sizes, config.oracle_fields,
                   config.oracle_cases, *config.seed);
  files.report_text = report.summary();
  std::cout << files.report_text;
  return report.passed() ? 0 : 3;
}

}  // namespace

int execute(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  OutputFiles files(config);
  int code = 0;
  try {
    if (config.kind == "ensemble") {
      run_ensemble_kind(config, files);
    } else if (config.kind == "toy-model") {
      run_toy_kind(config, files);
    } else if (config.kind == "ground-state") {
      run_ground_state_kind(config, files);
    } else {
      code = run_oracle_kind(config, files);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    files.write(wall);
  } catch (...) {
    files.remove_partial();
    throw;
  }
  return code;
}

}  // namespace macsim
