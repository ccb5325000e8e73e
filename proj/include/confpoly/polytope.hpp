#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "confpoly/rng.hpp"

namespace confpoly {

inline constexpr double kPi = std::numbers::pi;

// Fan diagonal lengths of a closed equilateral n-gon rooted at the origin
// inside the unit ball: d has n-3 entries, each in [0,1], with
// d_i + d_{i+1} >= 1 for consecutive pairs. The feasible set is the moment
// polytope the sampler draws from.
struct DiagonalVector {
  int n = 0;
  Eigen::VectorXd d;
};

// Per-draw bookkeeping from the accept/reject loop.
struct SamplerTrace {
  long long attempts = 1;  // completed proposals until acceptance
  double alpha = 1.0;      // sin(pi d_last/2) / sin(pi d_first/2) of accepted draw
  bool reversed = false;   // accepted vector was emitted end-to-start
};

// Inverse CDF of the second coordinate given the first: y lands in [1-x, 1]
// with density proportional to sin(pi y / 2). Requires 0 < x <= 1 and
// 0 <= u <= 1; the result is clamped into [1-x, 1] so the range contract
// holds despite rounding.
inline double conditional_inverse_cdf(double x, double u) {
  if (!(x > 0.0 && x <= 1.0))
    throw std::domain_error("conditional_inverse_cdf: x must be in (0,1]");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("conditional_inverse_cdf: u must be in [0,1]");
  const double w = u * std::sin(0.5 * kPi * x);
  double y = 1.0 - (2.0 / kPi) * std::asin(w);
  if (y < 1.0 - x) y = 1.0 - x;
  if (y > 1.0) y = 1.0;
  return y;
}

// Exact membership test for the diagonal polytope of an n-gon.
bool membership(const Eigen::VectorXd& d, int n);

// Draws one point of the diagonal polytope, uniformly, in O(n) expected
// time. `d` must already have size n-3.
//
// One proposal consumes n-3 uniforms for the chain plus one for the
// accept/reverse decision; the first proposal coordinate is uniform on
// [0,1] and each later one comes from conditional_inverse_cdf against its
// predecessor. A proposal with sin(pi d_1/2) == 0 (probability zero) is
// discarded before the decision draw. Acceptance happens with probability
// 2/(alpha + 1/alpha); the accepted vector is reversed when the decision
// variate falls in the lower half of the acceptance window, which restores
// exchangeability of the two ends. For n = 4 the chain is empty, alpha = 1,
// and the first proposal is always accepted, so the general path needs no
// special case.
//
// The chain maintains s_i = sin(pi d_i / 2) incrementally: with
// w = u * s_i, the next coordinate is 1 - (2/pi) asin(w) and
// s_{i+1} = sqrt(1 - w^2) exactly, saving a sin() per step. The first
// transition is bit-identical to conditional_inverse_cdf; later ones agree
// to an ulp or two.
template <UniformSource R>
void sample_diagonals_into(int n, R& rng, Eigen::Ref<Eigen::VectorXd> d,
                           SamplerTrace* trace = nullptr) {
  if (n < 4) throw std::invalid_argument("sample_diagonals: n must be >= 4");
  const int m = n - 3;
  if (d.size() != m)
    throw std::invalid_argument("sample_diagonals: output size must be n-3");
  long long attempts = 0;
  for (;;) {
    const double d1 = rng.uniform01();
    double s = std::sin(0.5 * kPi * d1);
    if (s == 0.0) continue;  // degenerate first coordinate, retry
    ++attempts;
    d[0] = d1;
    const double s_first = s;
    for (int i = 1; i < m; ++i) {
      const double w = rng.uniform01() * s;
      double y = 1.0 - (2.0 / kPi) * std::asin(w);
      if (y < 1.0 - d[i - 1]) y = 1.0 - d[i - 1];
      if (y > 1.0) y = 1.0;
      d[i] = y;
      s = std::sqrt(1.0 - w * w);
    }
    const double alpha = s / s_first;
    const double accept = 2.0 / (alpha + 1.0 / alpha);
    const double t = rng.uniform01();
    if (t < accept) {
      const bool rev = t < 0.5 * accept;
      if (rev) d.reverseInPlace();
      if (trace) {
        trace->attempts = attempts;
        trace->alpha = alpha;
        trace->reversed = rev;
      }
      return;
    }
  }
}

template <UniformSource R>
std::pair<DiagonalVector, SamplerTrace> sample_diagonals(int n, R& rng) {
  DiagonalVector v;
  v.n = n;
  v.d.resize(n - 3);
  SamplerTrace trace;
  sample_diagonals_into(n, rng, v.d, &trace);
  return {std::move(v), trace};
}

// Uniform draw by naive rejection from the cube, usable as an independent
// reference for small n. Throws above the enumeration-scale cutoff because
// the acceptance probability decays exponentially. If `proposals` is given
// it accumulates the number of cube draws used.
template <UniformSource R>
DiagonalVector rejection_sample_reference(int n, R& rng,
                                          long long* proposals = nullptr) {
  if (n < 4) throw std::invalid_argument("rejection_sample_reference: n >= 4");
  if (n > 15)
    throw std::invalid_argument(
        "rejection_sample_reference: n too large for naive rejection");
  const int m = n - 3;
  DiagonalVector v;
  v.n = n;
  v.d.resize(m);
  for (;;) {
    if (proposals) ++(*proposals);
    for (int i = 0; i < m; ++i) v.d[i] = rng.uniform01();
    bool ok = true;
    for (int i = 0; i + 1 < m; ++i)
      if (v.d[i] + v.d[i + 1] < 1.0) {
        ok = false;
        break;
      }
    if (ok) return v;
  }
}

// Coordinate change x_j = d_j for odd j (1-based), 1 - d_j for even j. Its
// image satisfies x_1 >= x_2 <= x_3 >= ... and the map is an involution:
// applying it twice returns sampler output bit-identically (each sampled
// coordinate is either a 2^-53 grid point or of the form fl(1 - z), and
// both classes round-trip through 1 - x exactly).
Eigen::VectorXd to_order_polytope(const Eigen::VectorXd& d);

// Coordinate change x_j = 1 - d_j for all j; image satisfies
// x_j + x_{j+1} <= 1. Also an involution, same exactness note.
Eigen::VectorXd to_chain_polytope(const Eigen::VectorXd& d);

// Uniform down-up permutation of {1..m}: sample the diagonal polytope with
// n = m + 3, map to the order polytope, and rank the coordinates
// (1 = smallest, ties broken by index). Each permutation labels a cell of
// equal volume, so the output is uniform over down-up permutations.
template <UniformSource R>
std::vector<int> sample_alternating_permutation(int m, R& rng) {
  if (m < 1)
    throw std::invalid_argument("sample_alternating_permutation: m >= 1");
  Eigen::VectorXd d(m);
  sample_diagonals_into(m + 3, rng, d);
  Eigen::VectorXd x = to_order_polytope(d);
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&x](int a, int b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return a < b;
  });
  std::vector<int> tau(m);
  for (int r = 0; r < m; ++r) tau[idx[r]] = r + 1;
  return tau;
}

}  // namespace confpoly
