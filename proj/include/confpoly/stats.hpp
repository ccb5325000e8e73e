#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace confpoly {

// Streaming mean/variance (Welford), mergeable across workers. Merge order
// must be fixed for bit-reproducibility.
struct RunningMoments {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / double(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double delta = o.mean - mean;
    const long long total = count + o.count;
    mean += delta * double(o.count) / double(total);
    m2 += o.m2 + delta * delta * double(count) * double(o.count) / double(total);
    count = total;
  }

  double variance() const { return count > 1 ? m2 / double(count - 1) : 0.0; }
  double se_of_mean() const;
};

// Fixed-width histogram on [lo, hi); out-of-range samples clamp into the
// end bins so mass is never dropped.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<long long> bins;
  long long total = 0;

  Histogram(double lo_, double hi_, int nbins) : lo(lo_), hi(hi_), bins(nbins, 0) {
    if (!(hi_ > lo_) || nbins < 1)
      throw std::invalid_argument("Histogram: need hi > lo and nbins >= 1");
  }

  void add(double x) {
    int b = int((x - lo) / (hi - lo) * double(bins.size()));
    if (b < 0) b = 0;
    if (b >= int(bins.size())) b = int(bins.size()) - 1;
    ++bins[b];
    ++total;
  }
};

// Kolmogorov-Smirnov distance of a sorted sample against a CDF.
double ks_statistic_sorted(const std::vector<double>& sorted,
                           const std::function<double(double)>& cdf);

// Two-sample KS distance; inputs are sorted in place.
double ks_two_sample(std::vector<double>& a, std::vector<double>& b);

// Upper bound on the KS distance of a histogrammed sample against a CDF:
// the sup over bin edges plus the largest single-bin mass. Tight enough
// when bins are much finer than the tolerance being tested.
double ks_histogram_upper_bound(const Histogram& h,
                                const std::function<double(double)>& cdf);

}  // namespace confpoly
