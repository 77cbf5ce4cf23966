// archipelago: keyword extraction by window entropy, graph-entropy scoring,
// and the method comparison harness.
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "archipelago/baselines.hpp"
#include "archipelago/bench.hpp"
#include "archipelago/corpus.hpp"
#include "archipelago/graph_entropy.hpp"
#include "archipelago/report.hpp"
#include "archipelago/synth.hpp"
#include "archipelago/window_entropy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace archipelago;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string method = "entropy";
  std::size_t tau = 10;
  double rho = 0.2;
  std::string mode = "drop";
  std::string base = "2";
  std::uint64_t seed = 0;
  std::size_t reps = 20;
  std::size_t k = 0;  // 0: |K| at tau
  std::string keywords;
  std::vector<std::string> words;
  std::vector<std::string> corpus_dirs;
  std::vector<std::string> collections;
  std::string taus = "5,10,20";
  std::size_t reference_tau = 10;
  std::string stoplist;
  std::string format;
  std::string spec;
  std::string out;
  std::string csv;
  int threads = 0;
};

DetectionMode mode_of(const std::string& name) {
  auto m = parse_mode(name);
  if (!m) throw UsageError("unknown mode: " + name + " (expected drop, increase or plateau)");
  return *m;
}

LogBase base_of(const std::string& name) {
  if (name == "2") return LogBase::bits;
  if (name == "e") return LogBase::nats;
  throw UsageError("unknown log base: " + name + " (expected 2 or e)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<std::size_t> parse_taus(const std::string& text) {
  std::vector<std::size_t> taus;
  for (const auto& item : split_list(text)) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad tau: " + item);
    }
    if (pos != item.size() || v < 1) throw UsageError("tau must be an integer >= 1: " + item);
    taus.push_back(static_cast<std::size_t>(v));
  }
  if (taus.empty()) throw UsageError("no tau values given");
  return taus;
}

void check_common(const Options& o) {
  if (o.tau < 1) throw UsageError("--tau must be >= 1");
  if (!(o.rho > 0.0 && o.rho <= 1.0)) throw UsageError("--rho must be in (0, 1]");
  if (o.reps < 1) throw UsageError("--reps must be >= 1");
  mode_of(o.mode);
  base_of(o.base);
  static const std::set<std::string> methods{"entropy", "tfidf", "textrank", "rake", "random"};
  if (!methods.contains(o.method)) throw UsageError("unknown method: " + o.method);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw DataError("cannot write " + o.out);
  out << text;
}

json header(const std::string& command, json config) {
  return {{"tool", "archipelago"}, {"version", kVersion}, {"command", command}, {"config", config}};
}

json common_config(const Options& o) {
  return {{"input", o.input},          {"method", o.method},
          {"tau", o.tau},              {"rho", o.rho},
          {"mode", to_string(mode_of(o.mode))},
          {"log_base", o.base},        {"seed", o.seed},
          {"k", o.k == 0 ? json(nullptr) : json(o.k)},
          {"keywords", o.keywords},    {"corpus", o.corpus_dirs},
          {"stoplist", o.stoplist.empty() ? "bundled" : o.stoplist}};
}

Document load_document(const std::string& path) {
  return build_document(read_text_file(path));
}

Stoplist load_stoplist(const Options& o) {
  return o.stoplist.empty() ? Stoplist::bundled() : Stoplist::load(o.stoplist);
}

CorpusIndex load_corpus(const Options& o, const Document& doc) {
  CorpusIndex corpus;
  corpus.add(doc);
  const auto self = fs::weakly_canonical(o.input);
  for (const auto& dir : o.corpus_dirs) {
    for (const auto& e : list_collection(dir)) {
      if (fs::weakly_canonical(e.path) == self) continue;
      corpus.add(load_document(e.path.string()));
    }
  }
  return corpus;
}

// Keyword ids for --keywords or --method.
std::vector<WordId> select_keywords(const Options& o, const Document& doc) {
  if (!o.keywords.empty()) {
    std::vector<WordId> ids;
    for (const auto& w : split_list(o.keywords)) ids.push_back(doc.require(w));
    return ids;
  }
  const auto mode = mode_of(o.mode);
  const auto base = base_of(o.base);
  if (o.method == "entropy") return extract_keywords(doc, o.tau, mode, base).words;
  std::size_t k = o.k;
  if (k == 0) k = extract_keywords(doc, o.tau, mode, base).words.size();
  if (k == 0) throw DataError("no archipelago keywords at tau " + std::to_string(o.tau) +
                              "; pass --k to size the baseline");
  if (o.method == "tfidf") return tfidf_keywords(doc, load_corpus(o, doc), k).ids();
  if (o.method == "textrank") return textrank_keywords(doc, k).ids();
  if (o.method == "rake") return rake_keywords(doc, k, load_stoplist(o)).ids();
  return random_keywords(doc, k, o.seed).ids();
}

int run_extract(const Options& o) {
  check_common(o);
  const auto doc = load_document(o.input);
  const auto mode = mode_of(o.mode);
  const auto base = base_of(o.base);
  json body;
  if (o.method == "entropy") {
    body = to_json(doc, extract_keywords(doc, o.tau, mode, base));
  } else {
    std::size_t k = o.k;
    if (k == 0) k = extract_keywords(doc, o.tau, mode, base).words.size();
    if (k == 0) throw DataError("no archipelago keywords at tau " + std::to_string(o.tau) +
                                "; pass --k to size the baseline");
    RankedKeywords ranked;
    if (o.method == "tfidf") ranked = tfidf_keywords(doc, load_corpus(o, doc), k);
    if (o.method == "textrank") ranked = textrank_keywords(doc, k);
    if (o.method == "rake") ranked = rake_keywords(doc, k, load_stoplist(o));
    if (o.method == "random") ranked = random_keywords(doc, k, o.seed);
    body = to_json(doc, ranked);
  }
  json out = header("extract", common_config(o));
  out["result"] = body;
  emit(o, out.dump(2) + "\n");
  return 0;
}

int run_curve(const Options& o) {
  check_common(o);
  const auto doc = load_document(o.input);
  const auto base = base_of(o.base);
  std::vector<EntropyCurve> curves;
  if (o.words.empty()) {
    for (WordId w = 0; w < doc.vocabulary_size(); ++w) curves.push_back(entropy_curve(doc, w, base));
  } else {
    for (const auto& w : o.words) curves.push_back(entropy_curve(doc, doc.require(w), base));
  }
  emit(o, curves_csv(doc, curves, base));
  return 0;
}

int run_evaluate(const Options& o) {
  check_common(o);
  const auto doc = load_document(o.input);
  const auto ids = select_keywords(o, doc);
  if (ids.empty()) throw DataError("empty keyword set");
  const auto report = evaluate_keyword_set(doc, ids, o.rho, base_of(o.base));
  json out = header("evaluate", common_config(o));
  json keywords = json::array();
  for (WordId w : report.graph.nodes) keywords.push_back(doc.word(w));
  out["result"] = to_json(doc, report);
  out["result"]["keywords"] = keywords;
  emit(o, out.dump(2) + "\n");
  return 0;
}

int run_graph(const Options& o) {
  check_common(o);
  const std::string format = o.format.empty() ? "dot" : o.format;
  if (format != "dot" && format != "json") throw UsageError("--format must be dot or json");
  const auto doc = load_document(o.input);
  const auto ids = select_keywords(o, doc);
  if (ids.empty()) throw DataError("empty keyword set");
  const auto graph = build_cooc_graph(doc, ids, o.rho);
  const auto partition = connected_clusters(graph);
  if (format == "dot") {
    emit(o, graph_dot(doc, graph, partition));
  } else {
    json out = header("graph", common_config(o));
    out["result"] = graph_json(doc, graph, partition);
    emit(o, out.dump(2) + "\n");
  }
  return 0;
}

int run_compare(const Options& o) {
  ExperimentConfig config;
  config.taus = parse_taus(o.taus);
  config.reference_tau = o.reference_tau;
  config.rho = o.rho;
  config.modes.clear();
  for (const auto& m : split_list(o.mode)) config.modes.push_back(mode_of(m));
  if (config.modes.empty()) throw UsageError("no detection mode given");
  config.base = base_of(o.base);
  config.reps = o.reps;
  config.seed = o.seed;
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.collections.empty()) throw UsageError("--collection is required");
  if (o.threads > 0) omp_set_num_threads(o.threads);

  std::vector<LabeledDocument> documents;
  std::set<std::string> ids;
  for (const auto& dir : o.collections) {
    for (const auto& e : list_collection(dir)) {
      auto raw = read_text_file(e.path);
      raw.source_id = e.label + "/" + e.path.filename().string();
      if (!ids.insert(raw.source_id).second) throw DataError("duplicate document " + raw.source_id);
      documents.push_back({e.label, build_document(raw)});
    }
  }
  const auto stoplist = load_stoplist(o);
  const auto result = run_experiment(documents, config, stoplist);

  json cfg = to_json(config);
  cfg["collections"] = o.collections;
  cfg["stoplist"] = o.stoplist.empty() ? "bundled" : o.stoplist;
  json out = header("compare", cfg);
  const auto body = to_json(result);
  out["tables"] = body["tables"];
  out["documents"] = body["documents"];
  emit(o, out.dump(2) + "\n");
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv, std::ios::binary);
    if (!csv) throw DataError("cannot write " + o.csv);
    csv << comparison_csv(result);
  }
  return 0;
}

std::vector<SyntheticSpec> load_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read spec: " + path);
  try {
    return specs_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw DataError("bad spec " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError("bad spec " + path + ": " + e.what());
  }
}

int run_synth(const Options& o) {
  if (o.spec.empty() || o.out.empty()) throw UsageError("synth needs --spec and --out");
  const auto specs = load_specs(o.spec);
  fs::create_directories(o.out);
  json manifest = json::object();
  for (const auto& spec : specs) {
    const auto name = spec.id + ".txt";
    std::ofstream file(fs::path(o.out) / name, std::ios::binary);
    if (!file) throw DataError("cannot write " + (fs::path(o.out) / name).string());
    file << render_text(synth_document(spec));
    manifest[name] = "synthetic";
  }
  std::ofstream(fs::path(o.out) / "manifest.json") << manifest.dump(2) << "\n";
  return 0;
}

int run_mode_report(const Options& o) {
  const auto taus = parse_taus(o.taus);
  const auto base = base_of(o.base);
  const auto specs = o.spec.empty() ? std::vector<SyntheticSpec>{planted_fixture()} : load_specs(o.spec);
  json out = header("mode-report", {{"taus", taus}, {"log_base", o.base},
                                    {"spec", o.spec.empty() ? "builtin planted fixture" : o.spec}});
  out["result"] = to_json(mode_report(specs, taus, base));
  emit(o, out.dump(2) + "\n");
  return 0;
}

void add_document_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--in", o.input, "UTF-8 text file")->required();
  cmd->add_option("--tau", o.tau, "Minimum Δt_max_bound for a keyword")->capture_default_str();
  cmd->add_option("--mode", o.mode, "Detection mode: drop, increase or plateau")->capture_default_str();
  cmd->add_option("--base", o.base, "Log base: 2 or e")->capture_default_str();
}

void add_selection_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "entropy, tfidf, textrank, rake or random")->capture_default_str();
  cmd->add_option("--k", o.k, "Keyword count for baselines (default: |K| at tau)");
  cmd->add_option("--corpus", o.corpus_dirs, "Directories of .txt files for idf");
  cmd->add_option("--stoplist", o.stoplist, "Stop-word file for RAKE");
  cmd->add_option("--seed", o.seed, "Seed for the random method")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword archipelagoes by window entropy, scored by graph entropy"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* extract = app.add_subcommand("extract", "Extract keywords (JSON)");
  add_document_options(extract, o);
  add_selection_options(extract, o);
  extract->add_option("--out", o.out, "Output file (default stdout)");

  auto* curve = app.add_subcommand("curve", "Window entropy curves (CSV)");
  add_document_options(curve, o);
  curve->add_option("--word", o.words, "Words to include (default all)");
  curve->add_option("--out", o.out, "Output file (default stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Graph entropy of a keyword set (JSON)");
  add_document_options(evaluate, o);
  add_selection_options(evaluate, o);
  evaluate->add_option("--keywords", o.keywords, "Comma-separated keywords (overrides --method)");
  evaluate->add_option("--rho", o.rho, "Co-occurrence graph density")->capture_default_str();
  evaluate->add_option("--out", o.out, "Output file (default stdout)");

  auto* graph = app.add_subcommand("graph", "Co-occurrence graph (DOT or JSON)");
  add_document_options(graph, o);
  add_selection_options(graph, o);
  graph->add_option("--keywords", o.keywords, "Comma-separated keywords (overrides --method)");
  graph->add_option("--rho", o.rho, "Co-occurrence graph density")->capture_default_str();
  graph->add_option("--format", o.format, "dot or json")->capture_default_str();
  graph->add_option("--out", o.out, "Output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Compare all methods over collections (JSON)");
  compare->add_option("--collection", o.collections, "Directory of .txt files")->required();
  compare->add_option("--tau", o.taus, "Comma-separated tau values")->capture_default_str();
  compare->add_option("--reference-tau", o.reference_tau, "Tau that sizes the baselines")->capture_default_str();
  compare->add_option("--rho", o.rho, "Co-occurrence graph density")->capture_default_str();
  compare->add_option("--mode", o.mode, "Comma-separated detection modes")->capture_default_str();
  compare->add_option("--base", o.base, "Log base: 2 or e")->capture_default_str();
  compare->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  compare->add_option("--reps", o.reps, "Random draws per document")->capture_default_str();
  compare->add_option("--stoplist", o.stoplist, "Stop-word file for RAKE");
  compare->add_option("--threads", o.threads, "OpenMP threads (default: runtime)");
  compare->add_option("--csv", o.csv, "Also write the comparison grid as CSV");
  compare->add_option("--out", o.out, "Output file (default stdout)");

  auto* synth = app.add_subcommand("synth", "Write synthetic fixture documents");
  synth->add_option("--spec", o.spec, "Synthetic spec JSON")->required();
  synth->add_option("--out", o.out, "Output directory")->required();

  auto* report = app.add_subcommand("mode-report", "Detection-mode report on planted words (JSON)");
  report->add_option("--spec", o.spec, "Synthetic spec JSON (default: built-in fixture)");
  report->add_option("--tau", o.taus, "Comma-separated tau values")->capture_default_str();
  report->add_option("--base", o.base, "Log base: 2 or e")->capture_default_str();
  report->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*extract) return run_extract(o);
    if (*curve) return run_curve(o);
    if (*evaluate) return run_evaluate(o);
    if (*graph) return run_graph(o);
    if (*compare) return run_compare(o);
    if (*synth) return run_synth(o);
    if (*report) return run_mode_report(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
