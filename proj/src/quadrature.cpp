#include "confpoly/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace confpoly {

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Newton iteration from the Chebyshev estimate of the k-th root.
    double x = std::cos(std::numbers::pi * (double(k) + 0.75) /
                        (double(order) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 =
            ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / double(j);
        p0 = p1;
        p1 = p2;
      }
      dp = double(order) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; roots come out in decreasing order of x.
    rule.nodes[k] = 0.5 * (1.0 - x);
    rule.nodes[order - 1 - k] = 0.5 * (1.0 + x);
    rule.weights[k] = 0.5 * w;
    rule.weights[order - 1 - k] = 0.5 * w;
  }
  return rule;
}

HaltonSequence::HaltonSequence(int dim) : dim_(dim) {
  static const int primes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (dim < 1 || dim > 8)
    throw std::invalid_argument("HaltonSequence: dim must be in [1,8]");
  for (int d = 0; d < dim; ++d) {
    counters_[d].base = primes[d];
    counters_[d].digits.assign(64, 0);
    counters_[d].weights.resize(64);
    double w = 1.0 / primes[d];
    for (int k = 0; k < 64; ++k) {
      counters_[d].weights[k] = w;
      w /= primes[d];
    }
    counters_[d].value = 0.0;
  }
}

void HaltonSequence::Counter::advance() {
  // Increment the base-b counter. The no-carry path adds one ulp of the
  // first digit; a carry rebuilds the value from the digits, which keeps
  // rounding from accumulating.
  std::size_t k = 0;
  while (digits[k] == base - 1) {
    digits[k] = 0;
    ++k;
  }
  ++digits[k];
  if (k >= top) top = k + 1;
  if (k == 0) {
    value += weights[0];
    return;
  }
  double v = 0.0;
  for (std::size_t j = top; j-- > 0;)
    if (digits[j] != 0) v += weights[j] * double(digits[j]);
  value = v;
}

void HaltonSequence::next(double* out) {
  for (int d = 0; d < dim_; ++d) {
    counters_[d].advance();
    out[d] = counters_[d].value;
  }
}

}  // namespace confpoly
