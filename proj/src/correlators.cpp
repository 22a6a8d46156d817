#include "macsim/correlators.hpp"

#include <cmath>
#include <vector>

#include "macsim/errors.hpp"
#include "macsim/pfaffian.hpp"

namespace macsim {

namespace {

// Index sets of the Majorana monomials for the four string correlators,
// 0-based Majorana labels a_m = 2m, b_m = 2m+1, sites i < j, k = j - i:
//   sigma^x_i sigma^x_j -> (-1)^k     gamma[2i+1 .. 2j]
//   sigma^y_i sigma^y_j -> (-1)^(k+1) gamma[{2i} u [2i+2, 2j-1] u {2j+1}]
//   sigma^x_i sigma^y_j -> (-1)^k     gamma[{2i+1} u [2i+2, 2j-1] u {2j+1}]
//   sigma^y_i sigma^x_j -> (-1)^(k+1) gamma[{2i} u [2i+2, 2j-1] u {2j}]
// All sets are sorted, so the expectation is sign * (-i)^k Pf(Gamma_sub) and
// the (-i)^k cancels the monomial's i-powers leaving the real signs above.
//
// For k > L/2 the identity <O> = Pf(Gamma) <O P> on parity eigenstates swaps
// the set for its complement: <O> = sign * Pf(Gamma_full) * Pf(Gamma_comp).
void string_indices(int type, int i, int j, std::vector<int>& out) {
  out.clear();
  switch (type) {
    case 0:  // xx
      for (int m = 2 * i + 1; m <= 2 * j; ++m) out.push_back(m);
      break;
    case 1:  // yy
      out.push_back(2 * i);
      for (int m = 2 * i + 2; m <= 2 * j - 1; ++m) out.push_back(m);
      out.push_back(2 * j + 1);
      break;
    case 2:  // xy
      out.push_back(2 * i + 1);
      for (int m = 2 * i + 2; m <= 2 * j - 1; ++m) out.push_back(m);
      out.push_back(2 * j + 1);
      break;
    case 3:  // yx
      out.push_back(2 * i);
      for (int m = 2 * i + 2; m <= 2 * j - 1; ++m) out.push_back(m);
      out.push_back(2 * j);
      break;
  }
}

double string_sign(int type, int k) {
  const double par = (k % 2 == 0) ? 1.0 : -1.0;
  return (type == 1 || type == 3) ? -par : par;
}

struct PairWorkspace {
  std::vector<int> idx;
  std::vector<char> member;
  Eigen::MatrixXd sub;
  double full_pfaffian = 0.0;
  bool full_pfaffian_ready = false;

  explicit PairWorkspace(int sites)
      : member(2 * sites, 0), sub(2 * sites, 2 * sites) {}
};

double gathered_pfaffian(const Eigen::MatrixXd& g, const std::vector<int>& idx,
                         Eigen::MatrixXd& sub) {
  const int m = static_cast<int>(idx.size());
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) sub(r, c) = g(idx[r], idx[c]);
  }
  return pfaffian_inplace(sub.topLeftCorner(m, m));
}

// <sigma^a_i sigma^b_j> for a,b in {x,y}, i < j.
double string_correlator(const MajoranaCovariance& state, int type, int i,
                         int j, PairWorkspace& ws) {
  const int L = state.sites();
  const int k = j - i;
  const Eigen::MatrixXd& g = state.gamma();

  string_indices(type, i, j, ws.idx);
  double sign = string_sign(type, k);

  if (2 * k > L) {
    // Complement route: Pfaffian of the other side of the ring.
    if (!ws.full_pfaffian_ready) {
      Eigen::MatrixXd full = g;
      ws.full_pfaffian = pfaffian_inplace(full);
      ws.full_pfaffian_ready = true;
    }
    std::fill(ws.member.begin(), ws.member.end(), 0);
    for (int m : ws.idx) ws.member[m] = 1;
    ws.idx.clear();
    for (int m = 0; m < 2 * L; ++m) {
      if (!ws.member[m]) ws.idx.push_back(m);
    }
    sign *= ws.full_pfaffian;
  }

  return sign * gathered_pfaffian(g, ws.idx, ws.sub);
}

double zz_expectation(const Eigen::MatrixXd& g, int i, int j) {
  const int ai = 2 * i, bi = 2 * i + 1, aj = 2 * j, bj = 2 * j + 1;
  // <sigma^z_i sigma^z_j> = Pf of the 4x4 restriction.
  return g(ai, bi) * g(aj, bj) - g(ai, aj) * g(bi, bj) +
         g(ai, bj) * g(bi, aj);
}

}  // namespace

double pauli_pair_expectation(const MajoranaCovariance& state, int alpha,
                              int i, int beta, int j) {
  const int L = state.sites();
  if (i < 0 || i >= L || j < 0 || j >= L) {
    throw SiteOutOfRange("pair site out of range");
  }
  if (i == j) throw SameSite("pauli_pair_expectation needs distinct sites");
  if (i > j) return pauli_pair_expectation(state, beta, j, alpha, i);

  if (alpha == 2 && beta == 2) return zz_expectation(state.gamma(), i, j);
  if (alpha == 2 || beta == 2) return 0.0;  // odd fermion parity

  PairWorkspace ws(L);
  const int type = (alpha == 0) ? (beta == 0 ? 0 : 2) : (beta == 0 ? 3 : 1);
  return string_correlator(state, type, i, j, ws);
}

CorrelatorTensor spin_correlators(const MajoranaCovariance& state,
                                  int cutoff_distance) {
  const int L = state.sites();
  const Eigen::MatrixXd& g = state.gamma();

  CorrelatorTensor t;
  t.sites = L;
  t.cutoff = cutoff_distance;
  for (auto& m : t.c) m = Eigen::MatrixXd::Zero(L, L);
  t.means = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, L);

  for (int i = 0; i < L; ++i) {
    t.means(2, i) = -g(2 * i, 2 * i + 1);  // <sigma^z_i>; x and y vanish
  }

  // Diagonal blocks: C^{aa}_{ii} = 1 - <s^a_i>^2, cross terms symmetrize to
  // -<s^a><s^b> which is zero except (a,b)=(z,z).
  for (int i = 0; i < L; ++i) {
    const double mz = t.means(2, i);
    t.c[0](i, i) = 1.0;
    t.c[4](i, i) = 1.0;
    t.c[8](i, i) = 1.0 - mz * mz;
  }

  PairWorkspace ws(L);
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const int dist = std::min(j - i, L - (j - i));
      if (cutoff_distance > 0 && dist > cutoff_distance) continue;

      const double xx = string_correlator(state, 0, i, j, ws);
      const double yy = string_correlator(state, 1, i, j, ws);
      const double xy = string_correlator(state, 2, i, j, ws);
      const double yx = string_correlator(state, 3, i, j, ws);
      const double zz =
          zz_expectation(g, i, j) - t.means(2, i) * t.means(2, j);

      t.c[0](i, j) = xx;
      t.c[0](j, i) = xx;
      t.c[4](i, j) = yy;
      t.c[4](j, i) = yy;
      t.c[1](i, j) = xy;  // C^{xy}_{ij} = C^{yx}_{ji}
      t.c[3](j, i) = xy;
      t.c[3](i, j) = yx;
      t.c[1](j, i) = yx;
      t.c[8](i, j) = zz;
      t.c[8](j, i) = zz;
    }
  }
  return t;
}

}  // namespace macsim
