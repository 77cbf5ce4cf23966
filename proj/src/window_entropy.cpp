#include "archipelago/window_entropy.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace archipelago {

std::string_view to_string(DetectionMode mode) {
  switch (mode) {
    case DetectionMode::literal_increase: return "LITERAL_INCREASE";
    case DetectionMode::drop_magnitude: return "DROP_MAGNITUDE";
    case DetectionMode::plateau_then_drop: return "PLATEAU_THEN_DROP";
  }
  return "?";
}

std::string_view short_name(DetectionMode mode) {
  switch (mode) {
    case DetectionMode::literal_increase: return "increase";
    case DetectionMode::drop_magnitude: return "drop";
    case DetectionMode::plateau_then_drop: return "plateau";
  }
  return "?";
}

std::optional<DetectionMode> parse_mode(std::string_view name) {
  for (auto m : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                 DetectionMode::plateau_then_drop}) {
    if (name == to_string(m) || name == short_name(m)) return m;
  }
  return std::nullopt;
}

std::string_view to_string(LogBase base) { return base == LogBase::bits ? "2" : "e"; }

EntropyCurve entropy_curve(const Document& doc, WordId word, LogBase base,
                           std::vector<std::uint64_t>& scratch) {
  const std::size_t n = doc.sentence_count();
  const auto postings = doc.postings(word);
  if (postings.empty()) throw DataError("all-zero occurrence vector");

  EntropyCurve curve{word, n, std::vector<double>(n > 1 ? n - 1 : 0, 0.0)};
  if (postings.size() == 1) return curve;  // one sentence: every window holds it all

  std::uint64_t total = 0;
  for (const auto& p : postings) total += p.count;
  const double total_d = static_cast<double>(total);
  const std::size_t last_sentence = postings.back().sentence;
  bool have_prefix = false;

  for (std::size_t dt = 1; dt < n; ++dt) {
    // Every occurrence in window 0 from here on; the rest of the curve is 0.
    if (dt > last_sentence) break;
    EntropyAccumulator acc(total_d, base);
    const std::size_t windows = (n + dt - 1) / dt;
    if (postings.size() <= windows) {
      std::size_t current = postings[0].sentence / dt;
      std::uint64_t sum = 0;
      for (const auto& p : postings) {
        const std::size_t win = p.sentence / dt;
        if (win != current) {
          acc.add(sum);
          sum = 0;
          current = win;
        }
        sum += p.count;
      }
      acc.add(sum);
    } else {
      if (!have_prefix) {
        scratch.assign(n + 1, 0);
        for (const auto& p : postings) scratch[p.sentence + 1] = p.count;
        for (std::size_t s = 0; s < n; ++s) scratch[s + 1] += scratch[s];
        have_prefix = true;
      }
      for (std::size_t lo = 0; lo < n; lo += dt) {
        const std::size_t hi = std::min(lo + dt, n);
        acc.add(scratch[hi] - scratch[lo]);
      }
    }
    curve.values[dt - 1] = acc.value();
  }
  return curve;
}

EntropyCurve entropy_curve(const Document& doc, WordId word, LogBase base) {
  std::vector<std::uint64_t> scratch;
  return entropy_curve(doc, word, base, scratch);
}

double word_threshold(const EntropyCurve& curve) {
  if (curve.empty()) return 0.0;
  return curve.at(1) / static_cast<double>(curve.sentences);
}

std::vector<DropEvent> detect_events(const EntropyCurve& curve, double theta,
                                     DetectionMode mode) {
  if (theta < 0.0) throw std::invalid_argument("theta must be >= 0");
  std::vector<DropEvent> events;
  for (std::size_t dt = 3; dt <= curve.max_width(); ++dt) {
    const double prev = curve.at(dt - 1);
    const double cur = curve.at(dt);
    bool fires = false;
    switch (mode) {
      case DetectionMode::literal_increase:
        fires = cur - prev > theta;
        break;
      case DetectionMode::drop_magnitude:
        fires = prev - cur > theta;
        break;
      case DetectionMode::plateau_then_drop:
        fires = prev - cur > theta && std::abs(curve.at(dt - 2) - prev) <= theta;
        break;
    }
    if (fires) events.push_back({dt, cur - prev});
  }
  return events;
}

std::optional<std::size_t> delta_t_max_bound(const EntropyCurve& curve, double theta,
                                             DetectionMode mode) {
  const auto events = detect_events(curve, theta, mode);
  if (events.empty()) return std::nullopt;
  return events.back().delta_t;
}

ArchipelagoVerdict judge(const EntropyCurve& curve, std::size_t tau, DetectionMode mode) {
  ArchipelagoVerdict v;
  v.word = curve.word;
  v.mode = mode;
  v.theta = word_threshold(curve);
  v.delta_t_max_bound = delta_t_max_bound(curve, v.theta, mode);
  v.is_keyword = v.delta_t_max_bound && *v.delta_t_max_bound > tau;
  return v;
}

KeywordSet extract_keywords(const Document& doc, std::size_t tau, DetectionMode mode,
                            LogBase base) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  const auto vocab = static_cast<std::int64_t>(doc.vocabulary_size());
  KeywordSet result{{}, tau, mode, base, std::vector<ArchipelagoVerdict>(doc.vocabulary_size())};

#pragma omp parallel
  {
    std::vector<std::uint64_t> scratch;
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t w = 0; w < vocab; ++w) {
      const auto curve = entropy_curve(doc, static_cast<WordId>(w), base, scratch);
      result.verdicts[w] = judge(curve, tau, mode);
    }
  }

  for (const auto& v : result.verdicts) {
    if (v.is_keyword) result.words.push_back(v.word);
  }
  return result;
}

}  // namespace archipelago
