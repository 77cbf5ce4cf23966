#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "archipelago/baselines.hpp"
#include "archipelago/corpus.hpp"
#include "archipelago/stats.hpp"
#include "archipelago/synth.hpp"
#include "archipelago/window_entropy.hpp"

namespace archipelago {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::vector<std::size_t> taus{5, 10, 20};
  std::size_t reference_tau = 10;  // sets k for tfidf / textrank / rake
  double rho = 0.2;
  std::vector<DetectionMode> modes{DetectionMode::drop_magnitude};
  LogBase base = LogBase::bits;
  std::size_t reps = 20;  // random draws averaged per document
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on tau < 1, rho outside (0, 1], reps < 1,
/// no modes, or a reference tau missing from `taus`.
void validate(const ExperimentConfig& config);

enum class ResultStatus { ok, skipped_empty_k, unscorable };
std::string_view to_string(ResultStatus s);

struct MethodResult {
  std::string method;  // entropy, tfidf, textrank, rake, random
  std::size_t tau = 0;  // entropy/random: own tau; baselines: reference tau
  std::size_t k = 0;
  ResultStatus status = ResultStatus::ok;
  std::optional<double> h_b;  // mean over draws for random
  double h_b_sd = 0.0;        // random only
  std::vector<std::string> keywords;  // random: first draw

  /// Column label, e.g. "entropy@10", "random@10", "tfidf".
  std::string column() const;
};

struct DocumentRun {
  std::string document;
  std::string collection;
  std::size_t sentences = 0;
  std::size_t vocabulary = 0;
  DetectionMode mode = DetectionMode::drop_magnitude;
  std::vector<MethodResult> results;

  const MethodResult* find(const std::string& column) const;
};

/// All five methods on one document for one detection mode. k for the
/// baselines is |K| at the reference tau; a tau whose K is empty skips
/// the entropy method and its random partner for that tau.
DocumentRun run_document(const Document& doc, const std::string& collection,
                         const CorpusIndex& corpus, const Stoplist& stoplist, DetectionMode mode,
                         const ExperimentConfig& config);

/// One method column compared with its random partner.
struct ComparisonCell {
  std::string column;
  std::string random_column;
  std::size_t documents = 0;  // pairs where both sides were scorable
  std::size_t excluded = 0;
  std::optional<double> mean_h_b;
  std::optional<double> mean_random_h_b;
  std::optional<TTestResult> t_test;  // needs >= 2 pairs
  std::optional<double> percent_below_random;
};

struct CollectionTable {
  std::string collection;
  std::vector<ComparisonCell> cells;
};

struct ComparisonTable {
  DetectionMode mode = DetectionMode::drop_magnitude;
  std::vector<CollectionTable> collections;
  CollectionTable all_texts;  // pooled over every collection
};

/// Column layout: entropy@tau for each tau, then tfidf, textrank, rake.
std::vector<std::pair<std::string, std::string>> comparison_columns(const ExperimentConfig& config);

CollectionTable run_collection(const std::vector<DocumentRun>& runs, const std::string& label,
                               const ExperimentConfig& config);

struct LabeledDocument {
  std::string collection;
  Document document;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<DocumentRun> runs;  // sorted by (mode, collection, document)
  std::vector<ComparisonTable> tables;  // one per mode
};

/// Every document of every collection under every configured mode. The
/// idf corpus is the full document set. Documents are processed in
/// parallel; output order does not depend on scheduling.
ExperimentResult run_experiment(const std::vector<LabeledDocument>& documents,
                                const ExperimentConfig& config, const Stoplist& stoplist);

struct ModeReportEntry {
  std::string document;
  std::string word;
  Pattern pattern = Pattern::uniform;
  DetectionMode mode = DetectionMode::drop_magnitude;
  std::size_t tau = 0;
  double theta = 0.0;
  std::optional<std::size_t> delta_t_max_bound;
  bool is_keyword = false;
};

struct ModeReportFlag {
  std::string document;
  std::string word;
  DetectionMode mode = DetectionMode::drop_magnitude;
  std::size_t tau = 0;
  std::string message;
};

struct ModeReport {
  std::vector<std::size_t> taus;
  std::vector<ModeReportEntry> entries;
  std::vector<ModeReportFlag> flags;
};

/// Every planted word x detection mode x tau. A uniform or
/// single-occurrence word that gets selected is flagged.
ModeReport mode_report(const std::vector<SyntheticSpec>& specs, const std::vector<std::size_t>& taus,
                       LogBase base = LogBase::bits);

}  // namespace archipelago
