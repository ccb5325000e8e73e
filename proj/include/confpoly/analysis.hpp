#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "confpoly/bigint.hpp"
#include "confpoly/geometry.hpp"
#include "confpoly/quadrature.hpp"
#include "confpoly/rng.hpp"
#include "confpoly/stats.hpp"

namespace confpoly {

// Exterior angle at each edge pair: entry i is the angle in [0, pi] between
// edge i and edge i+1 (edges wrap, e_n joins the last vertex back to the
// first).
Eigen::VectorXd turning_angles_direct(const Polygon& p);

// Sum of the turning angles, same summation order as the vector above.
double total_curvature(const Polygon& p);

// Turning angle from the action-angle side: consecutive fan diagonals
// d_prev2, d_prev1, d_cur (with the boundary padding d_{-1}=0, d_0=1,
// d_{m+1}=1, d_{m+2}=0 supplied by the caller) and the dihedral about
// d_prev1. Radicands that round slightly negative are clamped; genuinely
// negative ones (no valid triangle) throw std::domain_error.
double turning_angle_action_angle(double d_prev2, double d_prev1, double d_cur,
                                  double theta);

// Exact expected fan diagonal lengths under the uniform distribution,
// i = 1..n-3, as ratios of linear-extension counts. n >= 4.
BigRational expected_chord_length(int n, int i);
std::vector<BigRational> expected_chord_lengths_all(int n);
double expected_chord_length_double(int n, int i);

// Limit of the k-th diagonal expectation as n grows: 2/pi for k = 1, then
// an alternating zigzag-number sum for k >= 2.
double asymptotic_chord_expectation(int k);

// Limiting density 1 - cos(pi t) of a fixed-index diagonal, and its CDF.
double limiting_chord_density(double t);
double limiting_chord_cdf(double t);

enum class QuadMethod { gauss_legendre, quasi_monte_carlo };

// Expected turning angle in the large-n limit, as a 4-dimensional integral
// over two neighbouring diagonals, the in-between diagonal, and the
// dihedral between the two fan triangles.
//
// gauss_legendre: tensor rule ladder (orders 8,16,24,32,48,64), stopping
// when successive levels agree to min(tol, 1e-5); throws std::runtime_error
// if the ladder exhausts first.
// quasi_monte_carlo: Halton points with 3 independent uniform shifts,
// qmc_points each; throws if the shifted estimates spread beyond tol.
IntegralResult asymptotic_turning_angle(
    double tol = 1e-4, QuadMethod method = QuadMethod::gauss_legendre,
    long long qmc_points = 100000000, std::uint64_t qmc_seed = 20260819);

// Monte Carlo summary of a polygon ensemble at fixed n.
struct EnsembleStats {
  int n = 0;
  long long count = 0;
  double mean_turning_angle = 0.0;  // grand mean over all vertices
  double se_turning_angle = 0.0;    // from per-polygon means
  double mean_total_curvature = 0.0;
  Eigen::VectorXd chord_means;      // empirical mean of each fan diagonal
  double rejection_rate = 0.0;      // rejected proposals / total proposals
  double mean_attempts = 0.0;       // proposals per accepted polygon
};

EnsembleStats ensemble_stats(int n, long long count, const RngState& base,
                             int workers = 1);

// Diagonal-only summary (no vertex geometry); cheaper when only chord
// statistics or the accept/reject behaviour is wanted.
struct DiagonalStats {
  int n = 0;
  long long count = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd se;
  double rejection_rate = 0.0;
  double mean_attempts = 0.0;
};

DiagonalStats diagonal_stats(int n, long long count, const RngState& base,
                             int workers = 1);

// Ordinary least squares of y against 1/n: y ~ a + b/n. R^2 is 1 - SSres/SStot
// (1 when SStot is 0). Throws std::invalid_argument with fewer than two
// distinct n values.
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
};

FitResult fit_reciprocal_model(
    const std::vector<std::pair<double, double>>& n_and_mean);

// Slope of log(a - y) against log(n); requires a > y throughout.
double loglog_slope(const std::vector<std::pair<double, double>>& n_and_mean,
                    double a);

}  // namespace confpoly
