#include "macsim/toy_network.hpp"

#include <algorithm>
#include <cmath>

#include "macsim/errors.hpp"
#include "macsim/rng.hpp"

namespace macsim {

BondNetwork::BondNetwork(int vertices)
    : vertices_(vertices), words_((vertices + 63) / 64),
      rows_(static_cast<std::size_t>(vertices) * words_, 0) {
  if (vertices < 3) throw std::invalid_argument("need at least 3 vertices");
}

void BondNetwork::check_vertex(int v) const {
  if (v < 0 || v >= vertices_) {
    throw VertexOutOfRange("vertex " + std::to_string(v) + " out of range");
  }
}

bool BondNetwork::bond(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  return (rows_[static_cast<std::size_t>(i) * words_ + j / 64] >>
          (j % 64)) & 1;
}

void BondNetwork::set_bond(int i, int j, bool value) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) return;  // diagonal stays zero
  const std::uint64_t bi = std::uint64_t{1} << (j % 64);
  const std::uint64_t bj = std::uint64_t{1} << (i % 64);
  if (value) {
    rows_[static_cast<std::size_t>(i) * words_ + j / 64] |= bi;
    rows_[static_cast<std::size_t>(j) * words_ + i / 64] |= bj;
  } else {
    rows_[static_cast<std::size_t>(i) * words_ + j / 64] &= ~bi;
    rows_[static_cast<std::size_t>(j) * words_ + i / 64] &= ~bj;
  }
}

std::vector<int> BondNetwork::neighbors(int vertex) const {
  check_vertex(vertex);
  std::vector<int> out;
  for (int j = 0; j < vertices_; ++j) {
    if (bond(vertex, j)) out.push_back(j);
  }
  return out;
}

int BondNetwork::degree(int vertex) const {
  check_vertex(vertex);
  int count = 0;
  for (int w = 0; w < words_; ++w) {
    count += __builtin_popcountll(
        rows_[static_cast<std::size_t>(vertex) * words_ + w]);
  }
  return count;
}

int BondNetwork::ring_distance(int i, int j) const {
  const int d = std::abs(i - j);
  return std::min(d, vertices_ - d);
}

void BondNetwork::measure(int vertex) {
  check_vertex(vertex);
  const std::size_t base = static_cast<std::size_t>(vertex) * words_;
  std::vector<std::uint64_t> hood(rows_.begin() + base,
                                  rows_.begin() + base + words_);

  // Recouple the neighborhood all-to-all, then detach the measured vertex.
  for (int i = 0; i < vertices_; ++i) {
    if (!((hood[i / 64] >> (i % 64)) & 1)) continue;
    const std::size_t row = static_cast<std::size_t>(i) * words_;
    for (int w = 0; w < words_; ++w) rows_[row + w] |= hood[w];
    rows_[row + i / 64] &= ~(std::uint64_t{1} << (i % 64));  // no self-bond
    rows_[row + vertex / 64] &= ~(std::uint64_t{1} << (vertex % 64));
  }
  for (int w = 0; w < words_; ++w) rows_[base + w] = 0;
}

bool BondNetwork::operator==(const BondNetwork& other) const {
  return vertices_ == other.vertices_ && rows_ == other.rows_;
}

BondNetwork init_network(int vertices, int xi0) {
  if (xi0 < 1 || 2 * xi0 >= vertices) {
    throw BadXi0("xi0 must satisfy 1 <= xi0 < L/2");
  }
  BondNetwork net(vertices);
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) {
      if (net.ring_distance(i, j) <= xi0) net.set_bond(i, j, true);
    }
  }
  return net;
}

BondNetwork measure_vertex(const BondNetwork& network, int vertex) {
  BondNetwork out = network;
  out.measure(vertex);
  return out;
}

std::vector<DecayPoint> run_toy_ensemble(int vertices, int xi0, double p,
                                         int samples, std::uint64_t seed,
                                         bool include_measured) {
  if (p < 0.0 || p > 1.0) throw DensityOutOfRange("p must lie in [0, 1]");
  if (samples <= 0) throw std::invalid_argument("samples must be positive");
  const BondNetwork initial = init_network(vertices, xi0);

  const int dmax = vertices / 2;
  std::vector<EnsembleStats> stats(dmax + 1);

  for (int k = 0; k < samples; ++k) {
    RngStream stream = RngStream::derive(seed, {static_cast<std::uint64_t>(k)});
    std::vector<char> measured(vertices, 0);
    BondNetwork net = initial;
    for (int v = 0; v < vertices; ++v) {
      if (stream.uniform() < p) measured[v] = 1;
    }
    for (int v = 0; v < vertices; ++v) {
      if (measured[v]) net.measure(v);
    }

    for (int d = 1; d <= dmax; ++d) {
      long long bonds = 0, pairs = 0;
      const int span = (2 * d == vertices) ? vertices / 2 : vertices;
      for (int i = 0; i < span; ++i) {
        const int j = (i + d) % vertices;
        if (!include_measured && (measured[i] || measured[j])) continue;
        ++pairs;
        bonds += net.bond(i, j) ? 1 : 0;
      }
      if (pairs > 0) {
        stats[d].add(static_cast<double>(bonds) / pairs);
      }
    }
  }

  std::vector<DecayPoint> out;
  for (int d = 1; d <= dmax; ++d) {
    if (stats[d].count() == 0) continue;
    out.push_back({static_cast<double>(d), stats[d].mean(),
                   stats[d].stderror()});
  }
  return out;
}

}  // namespace macsim
