#include "archipelago/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace archipelago {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least 2 pairs");

  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];

  TTestResult r;
  r.df = d.size() - 1;
  r.mean_difference = mean(d);
  const double sd = sample_sd(d);
  if (sd == 0.0) {
    if (r.mean_difference == 0.0) {
      r.t = 0.0;
      r.p = 0.5;
    } else if (r.mean_difference < 0.0) {
      r.t = -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    } else {
      r.t = std::numeric_limits<double>::infinity();
      r.p = 1.0;
    }
    return r;
  }
  r.t = r.mean_difference / (sd / std::sqrt(static_cast<double>(d.size())));
  boost::math::students_t dist(static_cast<double>(r.df));
  r.p = boost::math::cdf(dist, r.t);
  return r;
}

}  // namespace archipelago
