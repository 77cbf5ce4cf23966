#include "archipelago/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace archipelago {

namespace {

// Top k by score descending, ties by ascending id. Entries with
// `eligible[w] == false` are skipped.
RankedKeywords top_k(std::string method, const std::vector<double>& scores,
                     const std::vector<bool>& eligible, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<ScoredWord> all;
  for (WordId w = 0; w < scores.size(); ++w) {
    if (eligible[w]) all.push_back({w, scores[w]});
  }
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const ScoredWord& a, const ScoredWord& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.word < b.word;
                    });
  all.resize(keep);
  return {std::move(method), std::move(all), k};
}

// Unbiased draw in [0, bound) from raw 64-bit engine output. The standard
// distributions are implementation-defined, which would make fixtures
// depend on the standard library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<WordId> RankedKeywords::ids() const {
  std::vector<WordId> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.word);
  return out;
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stoplist: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.insert(line);
  }
  return Stoplist(std::move(words));
}

Stoplist Stoplist::bundled() {
  return load(std::filesystem::path(ARCHIPELAGO_DATA_DIR) / "stoplist_en.txt");
}

RankedKeywords tfidf_keywords(const Document& doc, const CorpusIndex& corpus, std::size_t k) {
  if (corpus.size() == 0) throw std::invalid_argument("empty corpus");
  const double n_docs = static_cast<double>(corpus.size());
  std::vector<double> scores(doc.vocabulary_size(), 0.0);
  std::vector<bool> eligible(doc.vocabulary_size(), true);
  for (WordId w = 0; w < doc.vocabulary_size(); ++w) {
    const auto df = corpus.doc_frequency(doc.word(w));
    if (df == 0) throw std::invalid_argument("document is not indexed in the corpus");
    scores[w] = static_cast<double>(doc.frequency(w)) * std::log2(n_docs / static_cast<double>(df));
  }
  return top_k("tfidf", scores, eligible, k);
}

std::vector<double> textrank_scores(const Document& doc, const TextRankOptions& options) {
  const std::size_t vocab = doc.vocabulary_size();
  std::vector<std::vector<WordId>> adjacency(vocab);
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const auto tokens = doc.sentence(s);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (tokens[i - 1] == tokens[i]) continue;
      adjacency[tokens[i - 1]].push_back(tokens[i]);
      adjacency[tokens[i]].push_back(tokens[i - 1]);
    }
  }
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  const double d = options.damping;
  std::vector<double> score(vocab, 1.0);
  std::vector<double> next(vocab);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double change = 0.0;
    for (WordId v = 0; v < vocab; ++v) {
      double incoming = 0.0;
      for (WordId u : adjacency[v]) incoming += score[u] / static_cast<double>(adjacency[u].size());
      next[v] = (1.0 - d) + d * incoming;
      change = std::max(change, std::abs(next[v] - score[v]));
    }
    score.swap(next);
    if (change < options.tolerance) break;
  }
  return score;
}

RankedKeywords textrank_keywords(const Document& doc, std::size_t k,
                                 const TextRankOptions& options) {
  return top_k("textrank", textrank_scores(doc, options),
               std::vector<bool>(doc.vocabulary_size(), true), k);
}

std::vector<double> rake_scores(const Document& doc, const Stoplist& stoplist) {
  const std::size_t vocab = doc.vocabulary_size();
  std::vector<bool> stop(vocab);
  for (WordId w = 0; w < vocab; ++w) stop[w] = stoplist.contains(doc.word(w));

  std::vector<double> degree(vocab, 0.0);
  std::vector<double> freq(vocab, 0.0);
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const auto tokens = doc.sentence(s);
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (stop[tokens[i]]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < tokens.size() && !stop[tokens[j]]) ++j;
      const double length = static_cast<double>(j - i);
      for (std::size_t t = i; t < j; ++t) {
        freq[tokens[t]] += 1.0;
        degree[tokens[t]] += length;
      }
      i = j;
    }
  }
  std::vector<double> score(vocab, 0.0);
  for (WordId w = 0; w < vocab; ++w) {
    if (freq[w] > 0.0) score[w] = degree[w] / freq[w];
  }
  return score;
}

RankedKeywords rake_keywords(const Document& doc, std::size_t k, const Stoplist& stoplist) {
  const auto scores = rake_scores(doc, stoplist);
  std::vector<bool> eligible(doc.vocabulary_size());
  for (WordId w = 0; w < doc.vocabulary_size(); ++w) eligible[w] = !stoplist.contains(doc.word(w));
  return top_k("rake", scores, eligible, k);
}

RankedKeywords random_keywords(const Document& doc, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<WordId> ids(doc.vocabulary_size());
  for (WordId w = 0; w < ids.size(); ++w) ids[w] = w;
  const std::size_t keep = std::min(k, ids.size());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto j = i + uniform_below(rng, ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(keep);
  std::sort(ids.begin(), ids.end());
  RankedKeywords out{"random", {}, k};
  for (WordId w : ids) out.words.push_back({w, 1.0});
  return out;
}

}  // namespace archipelago
