#include "archipelago/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace archipelago {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

json cell_json(const ComparisonCell& c) {
  return {{"column", c.column},
          {"random_column", c.random_column},
          {"documents", c.documents},
          {"excluded", c.excluded},
          {"mean_h_b", optional_number(c.mean_h_b)},
          {"mean_random_h_b", optional_number(c.mean_random_h_b)},
          {"t_test", c.t_test ? to_json(*c.t_test) : json(nullptr)},
          {"percent_below_random", optional_number(c.percent_below_random)}};
}

json table_json(const CollectionTable& t) {
  json cells = json::array();
  for (const auto& c : t.cells) cells.push_back(cell_json(c));
  return {{"collection", t.collection}, {"cells", cells}};
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json to_json(const TTestResult& t) {
  return {{"t", number(t.t)},
          {"df", t.df},
          {"p_one_sided", number(t.p)},
          {"mean_difference", number(t.mean_difference)},
          {"alternative", "mean(method) < mean(random)"}};
}

json to_json(const Document& doc, const KeywordSet& keywords) {
  json words = json::array();
  for (const auto& v : keywords.verdicts) {
    words.push_back({{"word", doc.word(v.word)},
                     {"theta", number(v.theta)},
                     {"delta_t_max_bound", optional_json(v.delta_t_max_bound)},
                     {"is_keyword", v.is_keyword}});
  }
  json k = json::array();
  for (WordId w : keywords.words) k.push_back(doc.word(w));
  return {{"method", "entropy"},
          {"tau", keywords.tau},
          {"mode", to_string(keywords.mode)},
          {"log_base", to_string(keywords.base)},
          {"sentences", doc.sentence_count()},
          {"words", words},
          {"keywords", k}};
}

json to_json(const Document& doc, const RankedKeywords& ranked) {
  json words = json::array();
  json k = json::array();
  for (const auto& w : ranked.words) {
    words.push_back({{"word", doc.word(w.word)}, {"score", number(w.score)}});
    k.push_back(doc.word(w.word));
  }
  return {{"method", ranked.method},
          {"k", ranked.k},
          {"sentences", doc.sentence_count()},
          {"words", words},
          {"keywords", k}};
}

json graph_json(const Document& doc, const CoocGraph& graph, const ClusterPartition& partition) {
  json nodes = json::array();
  for (WordId w : graph.nodes) nodes.push_back(doc.word(w));
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"source", doc.word(graph.nodes[e.a])},
                     {"target", doc.word(graph.nodes[e.b])},
                     {"cooc", number(e.weight)},
                     {"joint_sentences", e.joint}});
  }
  json clusters = json::array();
  for (const auto& c : partition.clusters) {
    json members = json::array();
    for (auto v : c) members.push_back(doc.word(graph.nodes[v]));
    clusters.push_back(members);
  }
  return {{"nodes", nodes},
          {"edges", edges},
          {"clusters", clusters},
          {"rho", number(graph.rho)},
          {"edge_budget", graph.edge_budget},
          {"candidate_pairs", graph.candidate_pairs}};
}

json to_json(const Document& doc, const EntropyBReport& report) {
  json counts = json::array();
  json probabilities = json::array();
  for (std::size_t c = 0; c < report.assignment.counts.size(); ++c) {
    counts.push_back(report.assignment.counts[c]);
    probabilities.push_back(number(report.assignment.probabilities[c]));
  }
  json sentence_cluster = json::array();
  for (const auto& c : report.assignment.sentence_cluster) sentence_cluster.push_back(optional_json(c));
  return {{"h_b", number(report.h_b)},
          {"log_base", to_string(report.base)},
          {"sentences", doc.sentence_count()},
          {"assigned_sentences", report.assignment.assigned},
          {"cluster_sentence_counts", counts},
          {"cluster_probabilities", probabilities},
          {"sentence_cluster", sentence_cluster},
          {"graph", graph_json(doc, report.graph, report.partition)}};
}

json to_json(const ExperimentConfig& config) {
  json modes = json::array();
  for (auto m : config.modes) modes.push_back(to_string(m));
  return {{"taus", config.taus},
          {"reference_tau", config.reference_tau},
          {"rho", number(config.rho)},
          {"modes", modes},
          {"log_base", to_string(config.base)},
          {"reps", config.reps},
          {"seed", config.seed}};
}

json to_json(const ExperimentResult& result) {
  json runs = json::array();
  for (const auto& r : result.runs) {
    json methods = json::array();
    for (const auto& m : r.results) {
      json entry = {{"column", m.column()},
                    {"method", m.method},
                    {"tau", m.tau},
                    {"k", m.k},
                    {"status", to_string(m.status)},
                    {"h_b", optional_number(m.h_b)},
                    {"keywords", m.keywords}};
      if (m.method == "random") entry["h_b_sd"] = number(m.h_b_sd);
      methods.push_back(entry);
    }
    runs.push_back({{"document", r.document},
                    {"collection", r.collection},
                    {"mode", to_string(r.mode)},
                    {"sentences", r.sentences},
                    {"vocabulary", r.vocabulary},
                    {"methods", methods}});
  }
  json tables = json::array();
  for (const auto& t : result.tables) {
    json collections = json::array();
    for (const auto& c : t.collections) collections.push_back(table_json(c));
    tables.push_back({{"mode", to_string(t.mode)},
                      {"collections", collections},
                      {"all_texts", table_json(t.all_texts)}});
  }
  return {{"tables", tables}, {"documents", runs}};
}

json to_json(const ModeReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"document", e.document},
                       {"word", e.word},
                       {"pattern", to_string(e.pattern)},
                       {"mode", to_string(e.mode)},
                       {"tau", e.tau},
                       {"theta", number(e.theta)},
                       {"delta_t_max_bound", optional_json(e.delta_t_max_bound)},
                       {"is_keyword", e.is_keyword}});
  }
  json flags = json::array();
  for (const auto& f : report.flags) {
    flags.push_back({{"document", f.document},
                     {"word", f.word},
                     {"mode", to_string(f.mode)},
                     {"tau", f.tau},
                     {"message", f.message}});
  }
  return {{"taus", report.taus}, {"entries", entries}, {"flags", flags}};
}

std::string graph_dot(const Document& doc, const CoocGraph& graph,
                      const ClusterPartition& partition) {
  std::ostringstream out;
  out << "graph cooc {\n";
  out << "  graph [rho=\"" << format_double(graph.rho) << "\"];\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t c = 0; c < partition.clusters.size(); ++c) {
    out << "  subgraph cluster_" << c << " {\n";
    for (auto v : partition.clusters[c]) {
      out << "    n" << v << " [label=\"" << dot_escape(doc.word(graph.nodes[v])) << "\"];\n";
    }
    out << "  }\n";
  }
  for (const auto& e : graph.edges) {
    out << "  n" << e.a << " -- n" << e.b << " [weight=\"" << format_double(e.weight)
        << "\", label=\"" << format_double(e.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string curves_csv(const Document& doc, const std::vector<EntropyCurve>& curves,
                       LogBase base) {
  std::ostringstream out;
  out << "word,delta_t," << (base == LogBase::bits ? "h_a_bits" : "h_a_nats") << "\n";
  for (const auto& c : curves) {
    for (std::size_t dt = 1; dt <= c.max_width(); ++dt) {
      out << doc.word(c.word) << ',' << dt << ',' << format_double(c.at(dt)) << '\n';
    }
  }
  return out.str();
}

std::string comparison_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "mode,collection,column,random_column,documents,excluded,mean_h_b,mean_random_h_b,t,df,"
         "p_one_sided,percent_below_random\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
  auto rows = [&](DetectionMode mode, const CollectionTable& table) {
    for (const auto& c : table.cells) {
      out << to_string(mode) << ',' << table.collection << ',' << c.column << ',' << c.random_column
          << ',' << c.documents << ',' << c.excluded << ',' << opt(c.mean_h_b) << ','
          << opt(c.mean_random_h_b) << ',';
      if (c.t_test) {
        out << format_double(c.t_test->t) << ',' << c.t_test->df << ',' << format_double(c.t_test->p);
      } else {
        out << "n/a,n/a,n/a";
      }
      out << ',' << opt(c.percent_below_random) << '\n';
    }
  };
  for (const auto& t : result.tables) {
    for (const auto& c : t.collections) rows(t.mode, c);
    rows(t.mode, t.all_texts);
  }
  return out.str();
}

}  // namespace archipelago
