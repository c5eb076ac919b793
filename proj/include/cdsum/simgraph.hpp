#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cdsum/textprep.hpp"

namespace cdsum {

inline constexpr double kDefaultBeta = 0.1;
inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr std::size_t kDefaultMaxIterations = 100;

/// Graphs above this size keep similarities in sparse rows.
inline constexpr std::size_t kDenseNodeLimit = 5000;

using Adjacency = std::vector<std::vector<std::size_t>>;
using WeightedAdjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

/// tf-idf weighted cosine between two sentences. Returns 0 when either vector
/// has zero norm; identical term-frequency maps score exactly 1.
[[nodiscard]] double idf_modified_cosine(const SentenceRecord& x, const SentenceRecord& y,
                                         const CorpusStats& stats);

/// Symmetric similarity matrix W. Dense up to kDenseNodeLimit nodes, sparse
/// rows (nonzero entries only) beyond.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool dense() const noexcept { return dense_; }
  [[nodiscard]] double at(std::size_t u, std::size_t v) const;
  /// Nonzero entries of row u, ascending by column, including the diagonal.
  [[nodiscard]] std::vector<std::pair<std::size_t, double>> row(std::size_t u) const;

  /// Sets W[u][v] and W[v][u]. Sparse storage expects rows to be filled in
  /// ascending column order.
  void set(std::size_t u, std::size_t v, double w);

 private:
  std::size_t n_ = 0;
  bool dense_ = true;
  std::vector<double> cells_;
  WeightedAdjacency rows_;
};

struct SentenceGraph {
  std::size_t n = 0;
  double beta = kDefaultBeta;
  SimilarityMatrix weights;
  /// W' as sorted neighbour lists; no self-edges.
  Adjacency pruned;

  [[nodiscard]] bool edge(std::size_t u, std::size_t v) const;
  [[nodiscard]] std::size_t edge_count() const;
};

/// Builds W from all sentence pairs and W' by thresholding at beta.
/// Throws DataError("empty corpus") on no sentences and std::invalid_argument
/// for beta outside [0, 1].
[[nodiscard]] SentenceGraph build_graph(std::span<const SentenceRecord> sentences,
                                        const CorpusStats& stats, double beta = kDefaultBeta);

struct PageRankOptions {
  double damping = kDefaultDamping;
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIterations;
};

struct CentralityVector {
  std::vector<double> scores;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Damped power iteration on an undirected graph:
///   P(u) = (1-d)/n + d * (sum_{v ~ u} P(v)/deg(v) + dangling/n)
/// where `dangling` is the mass held by degree-0 nodes. Stops once the L1
/// change drops below tol; `converged` is false if max_iter ran out first.
[[nodiscard]] CentralityVector pagerank(const Adjacency& adjacency, const PageRankOptions& options = {});
[[nodiscard]] CentralityVector pagerank(const SentenceGraph& graph, const PageRankOptions& options = {});

/// Same iteration, but node v splits its vote in proportion to edge weight.
/// Nodes with zero total weight are dangling. Weights must be non-negative.
[[nodiscard]] CentralityVector weighted_pagerank(const WeightedAdjacency& adjacency,
                                                 const PageRankOptions& options = {});

/// Debug dumps: "u v weight" for W (upper triangle, nonzero, u < v),
/// "u v 1" for W', and "u score" for P.
void write_similarity_edges(std::ostream& out, const SentenceGraph& graph);
void write_pruned_edges(std::ostream& out, const SentenceGraph& graph);
void write_scores(std::ostream& out, std::span<const double> scores);

}  // namespace cdsum
