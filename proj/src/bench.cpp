#include "archipelago/bench.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>

#include "archipelago/graph_entropy.hpp"

namespace archipelago {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t draw_seed(std::uint64_t master, std::string_view document, std::size_t tau,
                        std::size_t rep) {
  return splitmix64(splitmix64(splitmix64(master ^ fnv1a(document)) + tau) + rep);
}

std::vector<std::string> words_of(const Document& doc, const std::vector<WordId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (WordId w : ids) out.push_back(doc.word(w));
  return out;
}

MethodResult score(const Document& doc, std::string method, std::size_t tau,
                   const std::vector<WordId>& ids, const ExperimentConfig& config) {
  MethodResult r;
  r.method = std::move(method);
  r.tau = tau;
  r.k = ids.size();
  r.keywords = words_of(doc, ids);
  if (ids.empty()) {
    r.status = ResultStatus::unscorable;
    return r;
  }
  try {
    r.h_b = evaluate_keyword_set(doc, ids, config.rho, config.base).h_b;
  } catch (const DataError&) {
    r.status = ResultStatus::unscorable;
  }
  return r;
}

MethodResult skipped(std::string method, std::size_t tau) {
  MethodResult r;
  r.method = std::move(method);
  r.tau = tau;
  r.status = ResultStatus::skipped_empty_k;
  return r;
}

MethodResult random_baseline(const Document& doc, std::size_t tau, std::size_t k,
                             const ExperimentConfig& config) {
  MethodResult r;
  r.method = "random";
  r.tau = tau;
  r.k = k;
  std::vector<double> draws;
  draws.reserve(config.reps);
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    const auto ids = random_keywords(doc, k, draw_seed(config.seed, doc.id(), tau, rep)).ids();
    if (rep == 0) r.keywords = words_of(doc, ids);
    draws.push_back(evaluate_keyword_set(doc, ids, config.rho, config.base).h_b);
  }
  r.h_b = mean(draws);
  r.h_b_sd = sample_sd(draws);
  return r;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.taus.empty()) throw std::invalid_argument("at least one tau required");
  for (auto t : config.taus) {
    if (t < 1) throw std::invalid_argument("tau must be >= 1");
  }
  if (std::find(config.taus.begin(), config.taus.end(), config.reference_tau) ==
      config.taus.end()) {
    throw std::invalid_argument("reference tau must be one of the taus");
  }
  if (!(config.rho > 0.0 && config.rho <= 1.0)) throw std::invalid_argument("rho must be in (0, 1]");
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (config.modes.empty()) throw std::invalid_argument("at least one mode required");
}

std::string_view to_string(ResultStatus s) {
  switch (s) {
    case ResultStatus::ok: return "ok";
    case ResultStatus::skipped_empty_k: return "skipped_empty_k";
    case ResultStatus::unscorable: return "unscorable";
  }
  return "?";
}

std::string MethodResult::column() const {
  if (method == "entropy" || method == "random") return method + "@" + std::to_string(tau);
  return method;
}

const MethodResult* DocumentRun::find(const std::string& column) const {
  for (const auto& r : results) {
    if (r.column() == column) return &r;
  }
  return nullptr;
}

DocumentRun run_document(const Document& doc, const std::string& collection,
                         const CorpusIndex& corpus, const Stoplist& stoplist, DetectionMode mode,
                         const ExperimentConfig& config) {
  validate(config);
  DocumentRun run;
  run.document = doc.id();
  run.collection = collection;
  run.sentences = doc.sentence_count();
  run.vocabulary = doc.vocabulary_size();
  run.mode = mode;

  std::size_t reference_k = 0;
  for (auto tau : config.taus) {
    const auto keywords = extract_keywords(doc, tau, mode, config.base);
    const auto k = keywords.words.size();
    if (tau == config.reference_tau) reference_k = k;
    if (k == 0) {
      run.results.push_back(skipped("entropy", tau));
      run.results.push_back(skipped("random", tau));
      continue;
    }
    run.results.push_back(score(doc, "entropy", tau, keywords.words, config));
    run.results.push_back(random_baseline(doc, tau, k, config));
  }

  const auto ref = config.reference_tau;
  if (reference_k == 0) {
    for (const char* m : {"tfidf", "textrank", "rake"}) run.results.push_back(skipped(m, ref));
    return run;
  }
  run.results.push_back(score(doc, "tfidf", ref, tfidf_keywords(doc, corpus, reference_k).ids(), config));
  run.results.push_back(score(doc, "textrank", ref, textrank_keywords(doc, reference_k).ids(), config));
  run.results.push_back(score(doc, "rake", ref, rake_keywords(doc, reference_k, stoplist).ids(), config));
  return run;
}

std::vector<std::pair<std::string, std::string>> comparison_columns(const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> columns;
  for (auto tau : config.taus) {
    columns.emplace_back("entropy@" + std::to_string(tau), "random@" + std::to_string(tau));
  }
  const auto ref_random = "random@" + std::to_string(config.reference_tau);
  for (const char* m : {"tfidf", "textrank", "rake"}) columns.emplace_back(m, ref_random);
  return columns;
}

CollectionTable run_collection(const std::vector<DocumentRun>& runs, const std::string& label,
                               const ExperimentConfig& config) {
  CollectionTable table;
  table.collection = label;
  for (const auto& [column, random_column] : comparison_columns(config)) {
    ComparisonCell cell;
    cell.column = column;
    cell.random_column = random_column;
    std::vector<double> method_values;
    std::vector<double> random_values;
    for (const auto& run : runs) {
      const auto* m = run.find(column);
      const auto* r = run.find(random_column);
      if (m && r && m->h_b && r->h_b) {
        method_values.push_back(*m->h_b);
        random_values.push_back(*r->h_b);
      } else {
        ++cell.excluded;
      }
    }
    cell.documents = method_values.size();
    if (cell.documents > 0) {
      cell.mean_h_b = mean(method_values);
      cell.mean_random_h_b = mean(random_values);
      std::size_t below = 0;
      for (std::size_t i = 0; i < method_values.size(); ++i) {
        if (method_values[i] < random_values[i]) ++below;
      }
      cell.percent_below_random =
          100.0 * static_cast<double>(below) / static_cast<double>(cell.documents);
    }
    if (cell.documents >= 2) cell.t_test = paired_t_test(method_values, random_values);
    table.cells.push_back(std::move(cell));
  }
  return table;
}

ExperimentResult run_experiment(const std::vector<LabeledDocument>& documents,
                                const ExperimentConfig& config, const Stoplist& stoplist) {
  validate(config);
  CorpusIndex corpus;
  for (const auto& d : documents) corpus.add(d.document);

  const std::size_t modes = config.modes.size();
  const auto jobs = static_cast<std::int64_t>(documents.size() * modes);
  std::vector<DocumentRun> runs(static_cast<std::size_t>(jobs));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const auto& d = documents[static_cast<std::size_t>(job) / modes];
    const auto mode = config.modes[static_cast<std::size_t>(job) % modes];
    try {
      runs[static_cast<std::size_t>(job)] =
          run_document(d.document, d.collection, corpus, stoplist, mode, config);
    } catch (...) {
#pragma omp critical(archipelago_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  auto mode_rank = [&](DetectionMode m) {
    return std::find(config.modes.begin(), config.modes.end(), m) - config.modes.begin();
  };
  std::sort(runs.begin(), runs.end(), [&](const DocumentRun& a, const DocumentRun& b) {
    if (a.mode != b.mode) return mode_rank(a.mode) < mode_rank(b.mode);
    if (a.collection != b.collection) return a.collection < b.collection;
    return a.document < b.document;
  });

  ExperimentResult result;
  result.config = config;
  for (auto mode : config.modes) {
    ComparisonTable table;
    table.mode = mode;
    std::map<std::string, std::vector<DocumentRun>> by_collection;
    std::vector<DocumentRun> all;
    for (const auto& r : runs) {
      if (r.mode != mode) continue;
      by_collection[r.collection].push_back(r);
      all.push_back(r);
    }
    for (const auto& [label, group] : by_collection) {
      table.collections.push_back(run_collection(group, label, config));
    }
    table.all_texts = run_collection(all, "all", config);
    result.tables.push_back(std::move(table));
  }
  result.runs = std::move(runs);
  return result;
}

ModeReport mode_report(const std::vector<SyntheticSpec>& specs, const std::vector<std::size_t>& taus,
                       LogBase base) {
  ModeReport report;
  report.taus = taus;
  for (const auto& spec : specs) {
    const auto doc = synth_document(spec);
    for (const auto& planted : spec.planted) {
      const auto curve = entropy_curve(doc, doc.require(planted.word), base);
      for (auto mode : {DetectionMode::literal_increase, DetectionMode::drop_magnitude,
                        DetectionMode::plateau_then_drop}) {
        for (auto tau : taus) {
          if (tau < 1) throw std::invalid_argument("tau must be >= 1");
          const auto v = judge(curve, tau, mode);
          report.entries.push_back({spec.id, planted.word, planted.pattern, mode, tau, v.theta,
                                    v.delta_t_max_bound, v.is_keyword});
          if (!v.is_keyword) continue;
          if (planted.pattern == Pattern::uniform) {
            report.flags.push_back(
                {spec.id, planted.word, mode, tau,
                 "selects a uniformly spread word; expected its entropy to decrease continuously "
                 "and be rejected"});
          } else if (planted.pattern == Pattern::single_occurrence) {
            report.flags.push_back(
                {spec.id, planted.word, mode, tau, "selects a single-occurrence word"});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace archipelago
