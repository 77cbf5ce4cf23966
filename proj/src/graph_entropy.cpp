#include "archipelago/graph_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace archipelago {

namespace {

std::size_t joint_support(std::span<const Posting> x, std::span<const Posting> y) {
  std::size_t joint = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (i->sentence < j->sentence) {
      ++i;
    } else if (j->sentence < i->sentence) {
      ++j;
    } else {
      ++joint;
      ++i;
      ++j;
    }
  }
  return joint;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

struct Candidate {
  CoocEdge edge;
  std::size_t denominator;  // max support, so weight == joint / denominator
};

}  // namespace

double cooc(const Document& doc, WordId x, WordId y) {
  if (x >= doc.vocabulary_size() || y >= doc.vocabulary_size()) {
    throw DataError("word not in document");
  }
  const auto px = doc.postings(x);
  const auto py = doc.postings(y);
  const auto joint = joint_support(px, py);
  return static_cast<double>(joint) / static_cast<double>(std::max(px.size(), py.size()));
}

std::size_t edge_budget(double rho, std::size_t keywords) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must be in (0, 1]");
  const double pairs = static_cast<double>(keywords) * static_cast<double>(keywords + 1) / 2.0;
  // Relative slack so that decimal rho values like 0.2 do not floor one low.
  return static_cast<std::size_t>(std::floor(rho * pairs * (1.0 + 1e-12)));
}

CoocGraph build_cooc_graph(const Document& doc, std::span<const WordId> keywords, double rho) {
  if (keywords.empty()) throw std::invalid_argument("empty keyword set");
  CoocGraph graph;
  graph.nodes.assign(keywords.begin(), keywords.end());
  std::sort(graph.nodes.begin(), graph.nodes.end());
  graph.nodes.erase(std::unique(graph.nodes.begin(), graph.nodes.end()), graph.nodes.end());
  for (WordId w : graph.nodes) {
    if (w >= doc.vocabulary_size()) throw DataError("keyword not in document");
  }
  graph.rho = rho;
  graph.edge_budget = edge_budget(rho, graph.nodes.size());

  const std::size_t m = graph.nodes.size();
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < m; ++a) {
    const auto pa = doc.postings(graph.nodes[a]);
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto pb = doc.postings(graph.nodes[b]);
      const auto joint = joint_support(pa, pb);
      if (joint == 0) continue;
      const auto denom = std::max(pa.size(), pb.size());
      candidates.push_back(
          {{a, b, static_cast<double>(joint) / static_cast<double>(denom), joint}, denom});
    }
  }
  graph.candidate_pairs = candidates.size();

  // Exact rational comparison of joint/denominator.
  auto ranks_before = [](const Candidate& l, const Candidate& r) {
    const auto lhs = static_cast<unsigned long long>(l.edge.joint) * r.denominator;
    const auto rhs = static_cast<unsigned long long>(r.edge.joint) * l.denominator;
    if (lhs != rhs) return lhs > rhs;
    if (l.edge.joint != r.edge.joint) return l.edge.joint > r.edge.joint;
    if (l.edge.a != r.edge.a) return l.edge.a < r.edge.a;
    return l.edge.b < r.edge.b;
  };
  const std::size_t keep = std::min(graph.edge_budget, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), ranks_before);
  graph.edges.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) graph.edges.push_back(candidates[i].edge);
  return graph;
}

ClusterPartition connected_clusters(const CoocGraph& graph) {
  const std::size_t m = graph.nodes.size();
  DisjointSets sets(m);
  for (const auto& e : graph.edges) sets.unite(e.a, e.b);

  ClusterPartition partition;
  partition.cluster_of.assign(m, 0);
  std::vector<std::size_t> cluster_of_root(m, SIZE_MAX);
  // Visiting nodes in index order makes cluster order follow minimum member.
  for (std::size_t v = 0; v < m; ++v) {
    const auto root = sets.find(v);
    if (cluster_of_root[root] == SIZE_MAX) {
      cluster_of_root[root] = partition.clusters.size();
      partition.clusters.emplace_back();
    }
    partition.cluster_of[v] = cluster_of_root[root];
    partition.clusters[cluster_of_root[root]].push_back(v);
  }
  return partition;
}

SentenceAssignment assign_sentences(const Document& doc, const CoocGraph& graph,
                                    const ClusterPartition& partition) {
  if (partition.clusters.empty()) throw std::invalid_argument("empty partition");
  const std::size_t clusters = partition.clusters.size();
  std::vector<std::size_t> node_of_word(doc.vocabulary_size(), SIZE_MAX);
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) node_of_word[graph.nodes[v]] = v;

  SentenceAssignment out;
  out.sentence_cluster.assign(doc.sentence_count(), std::nullopt);
  out.counts.assign(clusters, 0);

  std::vector<std::size_t> overlap(clusters, 0);
  std::vector<std::size_t> seen_stamp(graph.nodes.size(), SIZE_MAX);
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    std::fill(overlap.begin(), overlap.end(), 0);
    std::size_t present = 0;
    for (WordId w : doc.sentence(s)) {
      const auto v = node_of_word[w];
      if (v == SIZE_MAX || seen_stamp[v] == s) continue;
      seen_stamp[v] = s;
      ++present;
      ++overlap[partition.cluster_of[v]];
    }
    if (present == 0) continue;

    // cos = overlap / sqrt(present * |c|); present is shared, so compare
    // overlap^2 / |c| exactly via cross-multiplication.
    std::size_t best = 0;
    for (std::size_t c = 1; c < clusters; ++c) {
      const auto lhs = static_cast<unsigned long long>(overlap[c]) * overlap[c] *
                       partition.clusters[best].size();
      const auto rhs = static_cast<unsigned long long>(overlap[best]) * overlap[best] *
                       partition.clusters[c].size();
      if (lhs > rhs) best = c;
    }
    out.sentence_cluster[s] = best;
    ++out.counts[best];
    ++out.assigned;
  }

  out.probabilities.assign(clusters, 0.0);
  if (out.assigned > 0) {
    for (std::size_t c = 0; c < clusters; ++c) {
      out.probabilities[c] =
          static_cast<double>(out.counts[c]) / static_cast<double>(out.assigned);
    }
  }
  return out;
}

double entropy_b(const SentenceAssignment& assignment, LogBase base) {
  if (assignment.assigned == 0) throw DataError("unscorable keyword set");
  std::vector<std::uint64_t> counts(assignment.counts.begin(), assignment.counts.end());
  return entropy_of_counts(counts, base);
}

EntropyBReport evaluate_keyword_set(const Document& doc, std::span<const WordId> keywords,
                                    double rho, LogBase base) {
  EntropyBReport report;
  report.base = base;
  report.graph = build_cooc_graph(doc, keywords, rho);
  report.partition = connected_clusters(report.graph);
  report.assignment = assign_sentences(doc, report.graph, report.partition);
  report.h_b = entropy_b(report.assignment, base);
  return report;
}

}  // namespace archipelago
