#pragma once

#include <cstddef>
#include <span>

namespace archipelago {

/// Paired one-sided Student t-test of H1: mean(a) < mean(b).
struct TTestResult {
  double t = 0.0;          // +-inf when the differences have zero variance
  std::size_t df = 0;
  double p = 0.5;          // P(T_df < t)
  double mean_difference = 0.0;
};

/// Differences d = a - b. All-zero differences give t = 0, p = 0.5;
/// constant nonzero differences give p = 0 (negative) or 1 (positive).
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> values);
/// Sample standard deviation (m - 1 denominator); 0 for fewer than 2 values.
double sample_sd(std::span<const double> values);

}  // namespace archipelago
