#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "archipelago/corpus.hpp"

namespace archipelago {

struct ScoredWord {
  WordId word = 0;
  double score = 0.0;
};

struct RankedKeywords {
  std::string method;
  std::vector<ScoredWord> words;  // scores non-increasing
  std::size_t k = 0;

  std::vector<WordId> ids() const;
};

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// One word per line; blank lines and lines starting with '#' ignored.
  static Stoplist load(const std::filesystem::path& path);
  /// The English list bundled under data/.
  static Stoplist bundled();

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// tf(w) * log2(N / df(w)) with raw counts.
RankedKeywords tfidf_keywords(const Document& doc, const CorpusIndex& corpus, std::size_t k);

struct TextRankOptions {
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 200;
};

/// Scores from the converged TextRank iteration over the co-occurrence
/// graph of adjacent tokens, indexed by word id.
std::vector<double> textrank_scores(const Document& doc, const TextRankOptions& options = {});
RankedKeywords textrank_keywords(const Document& doc, std::size_t k,
                                 const TextRankOptions& options = {});

/// deg(w) / freq(w) over stop-word-delimited candidate phrases; word ids
/// of stop words never receive a score.
std::vector<double> rake_scores(const Document& doc, const Stoplist& stoplist);
RankedKeywords rake_keywords(const Document& doc, std::size_t k, const Stoplist& stoplist);

/// Uniform sample of min(k, |W|) distinct words; deterministic per seed.
RankedKeywords random_keywords(const Document& doc, std::size_t k, std::uint64_t seed);

}  // namespace archipelago
