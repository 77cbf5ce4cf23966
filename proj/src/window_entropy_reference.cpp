// Dense, single-threaded window entropy. This is the literal sweep: for
// every width, re-window the full occurrence vector. The parallel kernels in
// window_entropy.cpp are tested against it.

#include <cmath>
#include <stdexcept>

#include "archipelago/window_entropy.hpp"

namespace archipelago {

void EntropyAccumulator::add(std::uint64_t count) {
  if (count == 0) return;
  const double p = static_cast<double>(count) / total_;
  const double log_p = base_ == LogBase::bits ? std::log2(p) : std::log(p);
  sum_ -= p * log_p;
  mass_ += p;
}

double entropy_of_counts(std::span<const std::uint64_t> counts, LogBase base) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw DataError("all-zero occurrence vector");
  EntropyAccumulator acc(static_cast<double>(total), base);
  for (auto c : counts) acc.add(c);
  if (std::abs(acc.probability_mass() - 1.0) > 1e-9) {
    throw std::logic_error("window probabilities do not sum to 1");
  }
  return acc.value();
}

std::vector<std::uint64_t> window_counts(const OccurrenceVector& occ, std::size_t delta_t) {
  const std::size_t n = occ.counts.size();
  if (delta_t < 1 || delta_t > n) throw std::invalid_argument("delta_t out of range");
  std::vector<std::uint64_t> windows((n + delta_t - 1) / delta_t, 0);
  for (std::size_t s = 0; s < n; ++s) windows[s / delta_t] += occ.counts[s];
  return windows;
}

double entropy_a(const OccurrenceVector& occ, std::size_t delta_t, LogBase base) {
  return entropy_of_counts(window_counts(occ, delta_t), base);
}

EntropyCurve entropy_curve(const OccurrenceVector& occ, LogBase base) {
  const std::size_t n = occ.counts.size();
  if (occ.total() == 0) throw DataError("all-zero occurrence vector");
  EntropyCurve curve{occ.word, n, {}};
  if (n > 1) curve.values.reserve(n - 1);
  for (std::size_t dt = 1; dt < n; ++dt) curve.values.push_back(entropy_a(occ, dt, base));
  return curve;
}

KeywordSet extract_keywords_serial(const Document& doc, std::size_t tau, DetectionMode mode,
                                   LogBase base) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  KeywordSet result{{}, tau, mode, base, {}};
  result.verdicts.reserve(doc.vocabulary_size());
  for (WordId w = 0; w < doc.vocabulary_size(); ++w) {
    const auto curve = entropy_curve(occurrence_vector(doc, w), base);
    result.verdicts.push_back(judge(curve, tau, mode));
    if (result.verdicts.back().is_keyword) result.words.push_back(w);
  }
  return result;
}

}  // namespace archipelago
