#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "archipelago/corpus.hpp"
#include "archipelago/window_entropy.hpp"

namespace archipelago {

/// Edge between node indices a < b of a CoocGraph.
struct CoocEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;        // cooc in (0, 1]
  std::size_t joint = 0;      // sentences containing both
};

struct CoocGraph {
  std::vector<WordId> nodes;  // keyword ids, ascending; node index = position
  std::vector<CoocEdge> edges;  // in rank order
  double rho = 0.0;
  std::size_t edge_budget = 0;
  std::size_t candidate_pairs = 0;  // pairs with cooc > 0
};

/// Hard clustering of a CoocGraph's nodes. Clusters hold node indices and
/// are ordered by their smallest member.
struct ClusterPartition {
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> cluster_of;  // node index -> cluster index
};

struct SentenceAssignment {
  std::vector<std::optional<std::size_t>> sentence_cluster;  // per sentence
  std::vector<std::size_t> counts;                           // f(c)
  std::vector<double> probabilities;                         // p(c)
  std::size_t assigned = 0;                                  // sum of f(c)
};

struct EntropyBReport {
  double h_b = 0.0;
  LogBase base = LogBase::bits;
  CoocGraph graph;
  ClusterPartition partition;
  SentenceAssignment assignment;
};

/// |S_x & S_y| / max(|S_x|, |S_y|) over the sets of sentences containing
/// each word.
double cooc(const Document& doc, WordId x, WordId y);

/// floor(rho * m * (m + 1) / 2).
std::size_t edge_budget(double rho, std::size_t keywords);

/// Keeps the top-ranked positive-cooc pairs up to the edge budget. Ranking:
/// cooc descending, then joint support descending, then (a, b) ascending.
/// Duplicate keywords are collapsed.
CoocGraph build_cooc_graph(const Document& doc, std::span<const WordId> keywords, double rho);

ClusterPartition connected_clusters(const CoocGraph& graph);

/// Each sentence containing a keyword goes to the cluster with the largest
/// binary cosine; ties go to the lower cluster index.
SentenceAssignment assign_sentences(const Document& doc, const CoocGraph& graph,
                                    const ClusterPartition& partition);

/// Throws DataError("unscorable keyword set") when no sentence was assigned.
double entropy_b(const SentenceAssignment& assignment, LogBase base = LogBase::bits);

EntropyBReport evaluate_keyword_set(const Document& doc, std::span<const WordId> keywords,
                                    double rho, LogBase base = LogBase::bits);

}  // namespace archipelago
