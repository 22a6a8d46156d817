#pragma once

#include <cstdint>
#include <vector>

#include "macsim/witnesses.hpp"

namespace macsim {

/// Binary entanglement bonds on a ring: E_{ij} symmetric with zero diagonal,
/// stored as bitset rows.
class BondNetwork {
 public:
  explicit BondNetwork(int vertices);

  int vertices() const { return vertices_; }
  bool bond(int i, int j) const;
  void set_bond(int i, int j, bool value);
  std::vector<int> neighbors(int vertex) const;
  int degree(int vertex) const;
  int ring_distance(int i, int j) const;

  /// Cut-and-recouple rule: the measured vertex loses all bonds and its
  /// former neighborhood becomes all-to-all connected.
  void measure(int vertex);

  bool operator==(const BondNetwork& other) const;

 private:
  void check_vertex(int v) const;
  int vertices_;
  int words_;
  std::vector<std::uint64_t> rows_;
};

/// Initial ansatz: bond iff ring distance <= xi0 (1 <= xi0 < L/2).
BondNetwork init_network(int vertices, int xi0);

BondNetwork measure_vertex(const BondNetwork& network, int vertex);

/// Mean bond occupation vs ring distance, averaged over `samples` random
/// measured-vertex sets. The measured set at density p is formed by
/// thresholding one uniform draw per vertex, so the set at p1 < p2 is a
/// subset of the set at p2 for the same seed and sample index. Rows of
/// measured (hence bond-free) vertices count toward the average unless
/// `include_measured` is false.
std::vector<DecayPoint> run_toy_ensemble(int vertices, int xi0, double p,
                                         int samples, std::uint64_t seed,
                                         bool include_measured = true);

}  // namespace macsim
