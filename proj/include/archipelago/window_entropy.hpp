#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "archipelago/corpus.hpp"

namespace archipelago {

enum class LogBase { bits, nats };

/// How a change of H_A between adjacent widths counts as an archipelago
/// event. `drop_magnitude` is the default.
enum class DetectionMode {
  literal_increase,   // H_A(dt) - H_A(dt-1) > theta
  drop_magnitude,     // H_A(dt-1) - H_A(dt) > theta
  plateau_then_drop,  // drop_magnitude and |H_A(dt-2) - H_A(dt-1)| <= theta
};

std::string_view to_string(DetectionMode mode);       // "LITERAL_INCREASE", ...
std::string_view short_name(DetectionMode mode);      // "increase", "drop", "plateau"
std::optional<DetectionMode> parse_mode(std::string_view name);  // accepts either form
std::string_view to_string(LogBase base);             // "2" or "e"

/// Shannon entropy accumulated one count at a time, zero counts skipped.
/// Both kernels feed window totals through this in window order so their
/// results agree bitwise.
class EntropyAccumulator {
 public:
  EntropyAccumulator(double total, LogBase base) : total_(total), base_(base) {}
  void add(std::uint64_t count);
  double value() const { return sum_ == 0.0 ? 0.0 : sum_; }
  double probability_mass() const { return mass_; }

 private:
  double total_;
  LogBase base_;
  double sum_ = 0.0;
  double mass_ = 0.0;
};

double entropy_of_counts(std::span<const std::uint64_t> counts, LogBase base = LogBase::bits);

/// H_A(w, dt) for dt = 1 .. n-1.
struct EntropyCurve {
  WordId word = 0;
  std::size_t sentences = 0;
  std::vector<double> values;  // values[dt - 1]

  std::size_t max_width() const { return values.size(); }
  double at(std::size_t dt) const { return values.at(dt - 1); }
  bool empty() const { return values.empty(); }
};

struct DropEvent {
  std::size_t delta_t = 0;
  double signed_delta = 0.0;  // H_A(dt) - H_A(dt-1)
};

struct ArchipelagoVerdict {
  WordId word = 0;
  double theta = 0.0;
  std::optional<std::size_t> delta_t_max_bound;
  bool is_keyword = false;
  DetectionMode mode = DetectionMode::drop_magnitude;
};

struct KeywordSet {
  std::vector<WordId> words;  // ascending id
  std::size_t tau = 0;
  DetectionMode mode = DetectionMode::drop_magnitude;
  LogBase base = LogBase::bits;
  std::vector<ArchipelagoVerdict> verdicts;  // one per vocabulary word, by id
};

/// Totals over half-open windows [i*dt, min((i+1)*dt, n)), ceil(n/dt) of them.
std::vector<std::uint64_t> window_counts(const OccurrenceVector& occ, std::size_t delta_t);

double entropy_a(const OccurrenceVector& occ, std::size_t delta_t,
                 LogBase base = LogBase::bits);

/// Sweeps every width from the dense occurrence vector. Reference kernel:
/// O(n^2 / dt) summed over widths.
EntropyCurve entropy_curve(const OccurrenceVector& occ, LogBase base = LogBase::bits);

/// Sweeps every width from the document's postings, choosing per width
/// between walking the word's support and walking prefix sums, whichever
/// is shorter. O(n log n) per word. `scratch` is reused across calls.
EntropyCurve entropy_curve(const Document& doc, WordId word, LogBase base,
                           std::vector<std::uint64_t>& scratch);
EntropyCurve entropy_curve(const Document& doc, WordId word, LogBase base = LogBase::bits);

/// theta(w) = H_A(w, 1) / n.
double word_threshold(const EntropyCurve& curve);

std::vector<DropEvent> detect_events(const EntropyCurve& curve, double theta, DetectionMode mode);

std::optional<std::size_t> delta_t_max_bound(const EntropyCurve& curve, double theta,
                                             DetectionMode mode);

ArchipelagoVerdict judge(const EntropyCurve& curve, std::size_t tau, DetectionMode mode);

/// Archipelago keyword extraction, parallel over words with OpenMP.
KeywordSet extract_keywords(const Document& doc, std::size_t tau,
                            DetectionMode mode = DetectionMode::drop_magnitude,
                            LogBase base = LogBase::bits);

/// Single-threaded extraction over the dense reference kernel. Kept for
/// testing and benchmarking the parallel path.
KeywordSet extract_keywords_serial(const Document& doc, std::size_t tau,
                                   DetectionMode mode = DetectionMode::drop_magnitude,
                                   LogBase base = LogBase::bits);

}  // namespace archipelago
