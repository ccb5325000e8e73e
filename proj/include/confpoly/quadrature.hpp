#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

namespace confpoly {

// Gauss-Legendre rule mapped onto [0,1]; exact for polynomials of degree
// 2*order - 1.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussLegendre gauss_legendre(int order);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // ladder difference or scrambling spread
  long long evaluations = 0;
  int resolution = 0;  // final rule order, or points per scrambling (millions)
};

// Halton sequence in up to 8 dimensions with O(1) amortized step cost
// (digit counters, no per-point radical inversion).
class HaltonSequence {
 public:
  explicit HaltonSequence(int dim);

  // Advances to the next point; out must have at least dim() entries.
  void next(double* out);
  int dim() const { return dim_; }

 private:
  struct Counter {
    int base = 2;
    std::vector<int> digits;      // little-endian
    std::vector<double> weights;  // base^-(k+1)
    std::size_t top = 0;          // digits above this index are zero
    double value = 0.0;
    void advance();
  };
  int dim_;
  std::array<Counter, 8> counters_;
};

}  // namespace confpoly
