#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "archipelago/baselines.hpp"
#include "archipelago/bench.hpp"
#include "archipelago/corpus.hpp"
#include "archipelago/graph_entropy.hpp"
#include "archipelago/window_entropy.hpp"

// Machine-readable renderings of library results. Non-finite doubles are
// written as null in JSON.

namespace archipelago {

nlohmann::json to_json(const Document& doc, const KeywordSet& keywords);
nlohmann::json to_json(const Document& doc, const RankedKeywords& ranked);
nlohmann::json to_json(const Document& doc, const EntropyBReport& report);
nlohmann::json graph_json(const Document& doc, const CoocGraph& graph,
                          const ClusterPartition& partition);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const ModeReport& report);
nlohmann::json to_json(const TTestResult& t);

/// Graphviz: one node per keyword labelled with the word, one undirected
/// edge per cooc pair with a `weight` attribute, clusters as subgraphs.
std::string graph_dot(const Document& doc, const CoocGraph& graph,
                      const ClusterPartition& partition);

/// word,delta_t,h_a_bits (or h_a_nats) rows.
std::string curves_csv(const Document& doc, const std::vector<EntropyCurve>& curves,
                       LogBase base = LogBase::bits);

/// One row per (mode, collection, column).
std::string comparison_csv(const ExperimentResult& result);

/// Fixed-precision text for doubles in CSV output.
std::string format_double(double v);

}  // namespace archipelago
