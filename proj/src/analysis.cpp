#include "confpoly/analysis.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "confpoly/combinatorics.hpp"

namespace confpoly {

namespace {

using Eigen::Vector3d;
using Eigen::VectorXd;

double angle_between(const Vector3d& e0, const Vector3d& e1) {
  return std::atan2(e0.cross(e1).norm(), e0.dot(e1));
}

}  // namespace

VectorXd turning_angles_direct(const Polygon& p) {
  const int n = p.n();
  VectorXd phi(n);
  for (int i = 0; i < n; ++i) {
    const Vector3d e0 = p.vertices.col((i + 1) % n) - p.vertices.col(i);
    const Vector3d e1 = p.vertices.col((i + 2) % n) - p.vertices.col((i + 1) % n);
    phi[i] = angle_between(e0, e1);
  }
  return phi;
}

double total_curvature(const Polygon& p) {
  return turning_angles_direct(p).sum();
}

double turning_angle_action_angle(double d_prev2, double d_prev1, double d_cur,
                                  double theta) {
  if (!(d_prev1 > 0.0))
    throw std::domain_error(
        "turning_angle_action_angle: middle diagonal must be positive");
  auto radicand = [](double a, double b) {
    // 16 * squared area of a triangle with sides a, b, 1 (Heron).
    return (a + b - 1.0) * (a - b + 1.0) * (-a + b + 1.0) * (a + b + 1.0);
  };
  auto safe = [](double r) {
    if (r < -1e-12)
      throw std::domain_error(
          "turning_angle_action_angle: sides do not form a triangle");
    return std::max(r, 0.0);
  };
  const double ra = safe(radicand(d_prev2, d_prev1));
  const double rb = safe(radicand(d_prev1, d_cur));
  const double quad = std::sqrt(ra) * std::sqrt(rb);
  const double g1 = d_prev2 * d_prev2 + d_prev1 * d_prev1 - 1.0;
  const double g2 = d_prev1 * d_prev1 + d_cur * d_cur - 1.0;
  double c = 0.5 * (d_prev2 * d_prev2 + d_cur * d_cur) - 1.0 -
             (g1 * g2 - quad * std::cos(theta)) / (4.0 * d_prev1 * d_prev1);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

BigRational expected_chord_length(int n, int i) {
  if (n < 4)
    throw std::invalid_argument("expected_chord_length: n must be >= 4");
  if (i < 1 || i > n - 3)
    throw std::invalid_argument("expected_chord_length: need 1 <= i <= n-3");
  auto ez = ez_table_entringer(n - 3);
  auto eul = euler_numbers(n - 3);
  return BigRational(ez.at(n - 3, i), BigCount(n - 2) * eul[n - 3]);
}

std::vector<BigRational> expected_chord_lengths_all(int n) {
  if (n < 4)
    throw std::invalid_argument("expected_chord_lengths_all: n must be >= 4");
  auto ez = ez_table_entringer(n - 3);
  auto eul = euler_numbers(n - 3);
  const BigCount denom = BigCount(n - 2) * eul[n - 3];
  std::vector<BigRational> out;
  out.reserve(n - 3);
  for (int i = 1; i <= n - 3; ++i)
    out.emplace_back(ez.at(n - 3, i), denom);
  return out;
}

double expected_chord_length_double(int n, int i) {
  return expected_chord_length(n, i).convert_to<double>();
}

double asymptotic_chord_expectation(int k) {
  if (k < 1)
    throw std::invalid_argument("asymptotic_chord_expectation: k must be >= 1");
  if (k == 1) return 2.0 / kPi;
  auto eul = euler_numbers(k - 1);
  double acc = 0.0;
  double pow_pi = 1.0;  // pi^{k-l-1} built from l = k-1 downward
  double factorial = 1.0;
  // Terms l = 1..k-2 of the alternating sum, accumulated from the l = k-1
  // end where the powers start at pi^0 and 1!.
  std::vector<double> terms;
  for (int l = k - 1; l >= 1; --l) {
    const int j = k - l;  // j = k-l runs 1..k-1
    if (l <= k - 2) {
      const double term = double(l) * eul[j].convert_to<double>() /
                          (std::ldexp(1.0, j - 1) * factorial) * pow_pi;
      terms.push_back((l % 2 == 1) ? term : -term);
    }
    pow_pi *= kPi;
    factorial *= double(j + 1);
  }
  for (double t : terms) acc += t;
  const double tail = (k % 2 == 0 ? 1.0 : -1.0) *
                      (2.0 * double(k / 2) - 2.0 * double(k) / kPi);
  return acc + tail;
}

double limiting_chord_density(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("limiting_chord_density: t must be in [0,1]");
  return 1.0 - std::cos(kPi * t);
}

double limiting_chord_cdf(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("limiting_chord_cdf: t must be in [0,1]");
  return t - std::sin(kPi * t) / kPi;
}

namespace {

// Integrand of the limiting turning-angle integral after mapping onto the
// unit cube: diagonals a, b = 1-a+a*s, c = 1-b+b*t, dihedral pi*x4, with
// the density weight sin(pi a/2) sin(pi c/2) and the Jacobian a*b. The
// full integral is (pi^2/2) times the mean over [0,1]^4.
double limit_integrand(double a, double s, double t, double x4) {
  const double b = 1.0 - a + a * s;
  const double c = 1.0 - b + b * t;
  const double ct = std::cos(kPi * x4);
  auto radicand = [](double u, double v) {
    return (u + v - 1.0) * (u - v + 1.0) * (-u + v + 1.0) * (u + v + 1.0);
  };
  const double ra = std::max(radicand(a, b), 0.0);
  const double rb = std::max(radicand(b, c), 0.0);
  const double quad = std::sqrt(ra) * std::sqrt(rb);
  const double g1 = a * a + b * b - 1.0;
  const double g2 = b * b + c * c - 1.0;
  double cphi = 0.5 * (a * a + c * c) - 1.0 -
                (g1 * g2 - quad * ct) / (4.0 * b * b);
  cphi = std::clamp(cphi, -1.0, 1.0);
  const double phi = std::acos(cphi);
  return phi * std::sin(0.5 * kPi * a) * std::sin(0.5 * kPi * c) * a * b;
}

double gauss_level(const GaussLegendre& rule) {
  const int m = static_cast<int>(rule.nodes.size());
  double total = 0.0;
  for (int ia = 0; ia < m; ++ia) {
    const double a = rule.nodes[ia];
    for (int is = 0; is < m; ++is) {
      const double s = rule.nodes[is];
      for (int it = 0; it < m; ++it) {
        const double t = rule.nodes[it];
        const double w3 = rule.weights[ia] * rule.weights[is] * rule.weights[it];
        double inner = 0.0;
        for (int iq = 0; iq < m; ++iq)
          inner += rule.weights[iq] * limit_integrand(a, s, t, rule.nodes[iq]);
        total += w3 * inner;
      }
    }
  }
  return 0.5 * kPi * kPi * total;
}

IntegralResult integrate_gauss(double tol) {
  static const int ladder[] = {8, 16, 24, 32, 48, 64};
  const double stop = std::min(tol, 1e-5);
  IntegralResult res;
  double prev = 0.0;
  bool have_prev = false;
  for (int order : ladder) {
    const auto rule = gauss_legendre(order);
    const double v = gauss_level(rule);
    res.evaluations += static_cast<long long>(order) * order * order * order;
    res.resolution = order;
    if (have_prev && std::abs(v - prev) < stop) {
      res.value = v;
      res.error_estimate = std::abs(v - prev);
      return res;
    }
    prev = v;
    have_prev = true;
  }
  throw std::runtime_error(
      "asymptotic_turning_angle: quadrature ladder exhausted without "
      "convergence to the requested tolerance");
}

IntegralResult integrate_qmc(double tol, long long points,
                             std::uint64_t seed) {
  if (points < 1000)
    throw std::invalid_argument("asymptotic_turning_angle: too few QMC points");
  double estimates[3];
  for (int shift = 0; shift < 3; ++shift) {
    RngState rng(seed, static_cast<std::uint64_t>(shift));
    double offset[4];
    for (double& o : offset) o = rng.uniform01();
    HaltonSequence seq(4);
    double pt[4];
    double acc = 0.0;
    for (long long k = 0; k < points; ++k) {
      seq.next(pt);
      double x[4];
      for (int d = 0; d < 4; ++d) {
        double v = pt[d] + offset[d];
        if (v >= 1.0) v -= 1.0;
        // Keep strictly inside the cube; the integrand divides by b.
        x[d] = std::clamp(v, 1e-16, 1.0 - 1e-16);
      }
      acc += limit_integrand(x[0], x[1], x[2], x[3]);
    }
    estimates[shift] = 0.5 * kPi * kPi * acc / double(points);
  }
  const double lo = *std::min_element(estimates, estimates + 3);
  const double hi = *std::max_element(estimates, estimates + 3);
  if (hi - lo > tol)
    throw std::runtime_error(
        "asymptotic_turning_angle: QMC scramblings disagree beyond tolerance");
  IntegralResult res;
  res.value = (estimates[0] + estimates[1] + estimates[2]) / 3.0;
  res.error_estimate = hi - lo;
  res.evaluations = 3 * points;
  res.resolution = static_cast<int>(points / 1000000);
  return res;
}

}  // namespace

IntegralResult asymptotic_turning_angle(double tol, QuadMethod method,
                                        long long qmc_points,
                                        std::uint64_t qmc_seed) {
  if (!(tol > 0.0))
    throw std::invalid_argument("asymptotic_turning_angle: tol must be > 0");
  if (method == QuadMethod::gauss_legendre) return integrate_gauss(tol);
  return integrate_qmc(tol, qmc_points, qmc_seed);
}

namespace {

struct EnsemblePartial {
  RunningMoments kappa;
  VectorXd chord_sum;
  VectorXd chord_sq;
  long long attempts = 0;
};

double total_curvature_of(const Eigen::Matrix3Xd& v) {
  const int n = static_cast<int>(v.cols());
  double acc = 0.0;
  Vector3d e0 = v.col(1) - v.col(0);
  for (int i = 0; i < n; ++i) {
    const Vector3d e1 =
        v.col((i + 2) % n) - v.col((i + 1) % n);
    acc += std::atan2(e0.cross(e1).norm(), e0.dot(e1));
    e0 = e1;
  }
  return acc;
}

EnsemblePartial ensemble_chunk(int n, long long count, RngState rng,
                               bool with_geometry) {
  EnsemblePartial part;
  const int m = n - 3;
  part.chord_sum = VectorXd::Zero(m);
  part.chord_sq = VectorXd::Zero(m);
  Eigen::Matrix3Xd vertices;
  VectorXd d(m), theta(m);
  SamplerTrace trace;
  for (long long k = 0; k < count; ++k) {
    if (with_geometry) {
      sample_polygon_into(n, rng, vertices, d, theta, &trace);
      part.kappa.add(total_curvature_of(vertices));
    } else {
      sample_diagonals_into(n, rng, d, &trace);
    }
    part.attempts += trace.attempts;
    part.chord_sum += d;
    part.chord_sq += d.cwiseAbs2();
  }
  return part;
}

std::vector<EnsemblePartial> run_workers(int n, long long count,
                                         const RngState& base, int workers,
                                         bool with_geometry) {
  if (n < 4) throw std::invalid_argument("ensemble: n must be >= 4");
  if (count < 1) throw std::invalid_argument("ensemble: count must be >= 1");
  if (workers < 1) throw std::invalid_argument("ensemble: workers must be >= 1");
  workers = static_cast<int>(std::min<long long>(workers, count));
  std::vector<EnsemblePartial> parts(workers);
  const long long chunk = count / workers;
  const long long rem = count % workers;
  if (workers == 1) {
    parts[0] = ensemble_chunk(n, count, base.worker(0), with_geometry);
    return parts;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const long long c = chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&parts, w, n, c, &base, with_geometry] {
      parts[w] = ensemble_chunk(n, c, base.worker(w), with_geometry);
    });
  }
  for (auto& t : pool) t.join();
  return parts;
}

}  // namespace

EnsembleStats ensemble_stats(int n, long long count, const RngState& base,
                             int workers) {
  auto parts = run_workers(n, count, base, workers, true);
  EnsembleStats out;
  out.n = n;
  out.count = count;
  RunningMoments kappa;
  VectorXd chord_sum = VectorXd::Zero(n - 3);
  long long attempts = 0;
  for (const auto& p : parts) {  // fixed merge order: worker index
    kappa.merge(p.kappa);
    chord_sum += p.chord_sum;
    attempts += p.attempts;
  }
  out.mean_total_curvature = kappa.mean;
  out.mean_turning_angle = kappa.mean / double(n);
  out.se_turning_angle = kappa.se_of_mean() / double(n);
  out.chord_means = chord_sum / double(count);
  out.mean_attempts = double(attempts) / double(count);
  out.rejection_rate = 1.0 - double(count) / double(attempts);
  return out;
}

DiagonalStats diagonal_stats(int n, long long count, const RngState& base,
                             int workers) {
  auto parts = run_workers(n, count, base, workers, false);
  DiagonalStats out;
  out.n = n;
  out.count = count;
  VectorXd sum = VectorXd::Zero(n - 3);
  VectorXd sq = VectorXd::Zero(n - 3);
  long long attempts = 0;
  for (const auto& p : parts) {
    sum += p.chord_sum;
    sq += p.chord_sq;
    attempts += p.attempts;
  }
  out.mean = sum / double(count);
  out.se.resize(n - 3);
  for (int i = 0; i < n - 3; ++i) {
    const double var =
        (sq[i] - sum[i] * sum[i] / double(count)) / double(count - 1);
    out.se[i] = std::sqrt(std::max(var, 0.0) / double(count));
  }
  out.mean_attempts = double(attempts) / double(count);
  out.rejection_rate = 1.0 - double(count) / double(attempts);
  return out;
}

FitResult fit_reciprocal_model(
    const std::vector<std::pair<double, double>>& n_and_mean) {
  if (n_and_mean.size() < 2)
    throw std::invalid_argument("fit_reciprocal_model: need >= 2 points");
  long double sx = 0, sy = 0;
  const long double cnt = static_cast<long double>(n_and_mean.size());
  for (const auto& [n, y] : n_and_mean) {
    if (!(n > 0))
      throw std::invalid_argument("fit_reciprocal_model: n must be positive");
    sx += 1.0L / static_cast<long double>(n);
    sy += static_cast<long double>(y);
  }
  const long double xbar = sx / cnt, ybar = sy / cnt;
  long double sxx = 0, sxy = 0;
  for (const auto& [n, y] : n_and_mean) {
    const long double dx = 1.0L / static_cast<long double>(n) - xbar;
    sxx += dx * dx;
    sxy += dx * (static_cast<long double>(y) - ybar);
  }
  if (sxx == 0)
    throw std::invalid_argument(
        "fit_reciprocal_model: need >= 2 distinct n values");
  const long double b = sxy / sxx;
  const long double a = ybar - b * xbar;
  long double ss_res = 0, ss_tot = 0;
  for (const auto& [n, y] : n_and_mean) {
    const long double yd = static_cast<long double>(y);
    const long double pred = a + b / static_cast<long double>(n);
    ss_res += (yd - pred) * (yd - pred);
    ss_tot += (yd - ybar) * (yd - ybar);
  }
  FitResult out;
  out.a = static_cast<double>(a);
  out.b = static_cast<double>(b);
  out.r_squared = ss_tot == 0 ? 1.0 : static_cast<double>(1.0L - ss_res / ss_tot);
  return out;
}

double loglog_slope(const std::vector<std::pair<double, double>>& n_and_mean,
                    double a) {
  if (n_and_mean.size() < 2)
    throw std::invalid_argument("loglog_slope: need >= 2 points");
  long double sx = 0, sy = 0;
  for (const auto& [n, y] : n_and_mean) {
    if (!(a > y))
      throw std::domain_error("loglog_slope: requires a > every mean");
    if (!(n > 0)) throw std::invalid_argument("loglog_slope: n must be positive");
    sx += std::log(static_cast<long double>(n));
    sy += std::log(static_cast<long double>(a) - static_cast<long double>(y));
  }
  const long double cnt = static_cast<long double>(n_and_mean.size());
  const long double xbar = sx / cnt, ybar = sy / cnt;
  long double sxx = 0, sxy = 0;
  for (const auto& [n, y] : n_and_mean) {
    const long double dx = std::log(static_cast<long double>(n)) - xbar;
    const long double dy =
        std::log(static_cast<long double>(a) - static_cast<long double>(y)) - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (sxx == 0)
    throw std::invalid_argument("loglog_slope: need >= 2 distinct n values");
  return static_cast<double>(sxy / sxx);
}

}  // namespace confpoly
