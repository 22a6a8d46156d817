#pragma once

#include <stdexcept>
#include <string>

namespace macsim {

/// Thrown when a matrix that must have even dimension does not.
struct OddDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an antisymmetry check fails beyond tolerance.
struct NotAntisymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SiteOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SameSite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DuplicateIndex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyInterval : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A forced projection hit an outcome of (numerically) zero probability.
struct NullProjection : std::runtime_error {
  NullProjection(int site_, double probability_)
      : std::runtime_error("projection annihilates the state at site " +
                           std::to_string(site_) +
                           " (p = " + std::to_string(probability_) + ")"),
        site(site_), probability(probability_) {}
  int site;
  double probability;
};

/// A state flagged as pure no longer satisfies Gamma^2 = -1 within tolerance.
struct PurityDrift : std::runtime_error {
  explicit PurityDrift(double drift_)
      : std::runtime_error("purity drift " + std::to_string(drift_) +
                           " exceeds tolerance"),
        drift(drift_) {}
  double drift;
};

struct OddL : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FieldOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientPoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DensityOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VertexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct BadXi0 : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration file could not be parsed (bad syntax, unknown key).
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_)
      : std::runtime_error(what), line(line_) {}
  int line;
};

/// Configuration parsed but a field value is invalid.
struct ValidationError : std::runtime_error {
  ValidationError(const std::string& field_, const std::string& what)
      : std::runtime_error(field_ + ": " + what), field(field_) {}
  std::string field;
};

}  // namespace macsim
