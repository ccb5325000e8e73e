#include "confpoly/stats.hpp"

#include <algorithm>
#include <cmath>

namespace confpoly {

double RunningMoments::se_of_mean() const {
  return count > 1 ? std::sqrt(variance() / double(count)) : 0.0;
}

double ks_statistic_sorted(const std::vector<double>& sorted,
                           const std::function<double(double)>& cdf) {
  const std::size_t n = sorted.size();
  if (n == 0) throw std::invalid_argument("ks_statistic_sorted: empty sample");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max(worst, std::abs(f - double(i) / double(n)));
    worst = std::max(worst, std::abs(double(i + 1) / double(n) - f));
  }
  return worst;
}

double ks_two_sample(std::vector<double>& a, std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(
        worst, std::abs(double(i) / double(a.size()) - double(j) / double(b.size())));
  }
  return worst;
}

double ks_histogram_upper_bound(const Histogram& h,
                                const std::function<double(double)>& cdf) {
  if (h.total == 0)
    throw std::invalid_argument("ks_histogram_upper_bound: empty histogram");
  const double width = (h.hi - h.lo) / double(h.bins.size());
  double worst = 0.0;
  long long cum = 0;
  long long biggest = 0;
  for (std::size_t b = 0; b < h.bins.size(); ++b) {
    cum += h.bins[b];
    biggest = std::max(biggest, h.bins[b]);
    const double edge = h.lo + width * double(b + 1);
    worst = std::max(worst,
                     std::abs(double(cum) / double(h.total) - cdf(edge)));
  }
  return worst + double(biggest) / double(h.total);
}

}  // namespace confpoly
