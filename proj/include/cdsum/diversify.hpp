#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cdsum/simgraph.hpp"
#include "cdsum/summary.hpp"
#include "cdsum/textprep.hpp"

namespace cdsum {

/// Dense row-major square matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), cells_(n * n, fill) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return cells_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> cells_;
};

/// One agglomeration step. Leaves are 0..n-1; the cluster created by merge i
/// gets id n + i. `a` is the operand holding the smaller member index.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Cluster ids are 0..k-1, numbered by each cluster's smallest member.
struct ClusterLabels {
  std::vector<std::size_t> labels;
  std::size_t k = 0;
};

struct Clustering {
  ClusterLabels labels;
  Dendrogram dendrogram;
};

/// Complete-link agglomerative clustering. Always builds the full dendrogram
/// (n-1 merges) and reports the partition left after n-k merges. Among pairs
/// at minimum distance the one with the smallest (lower smallest-member,
/// higher smallest-member) pair wins.
/// Throws std::invalid_argument if k is 0 or exceeds n, or if the matrix is
/// not symmetric with a zero diagonal.
[[nodiscard]] Clustering complete_link(const SquareMatrix& distance, std::size_t k);

/// Best-scoring member per cluster (ties to the smaller index), ordered by
/// descending score then index.
[[nodiscard]] std::vector<std::size_t> select_representatives(const ClusterLabels& labels,
                                                              std::span<const double> scores);

/// 1 - W with a zero diagonal. Throws DataError past kDenseNodeLimit nodes.
[[nodiscard]] SquareMatrix similarity_distance(const SentenceGraph& graph);

struct DiverseSummary {
  std::vector<SummaryEntry> selected;
  Clustering clustering;
};

/// Clusters the raw similarity graph into min(k, n) groups and keeps the best
/// sentence of each according to `scores`. `centrality` and `keyword` only
/// feed provenance.
[[nodiscard]] DiverseSummary summarize_diverse(const SentenceGraph& graph,
                                               std::span<const SentenceRecord> sentences,
                                               std::span<const double> scores,
                                               std::span<const double> centrality,
                                               std::optional<std::span<const double>> keyword,
                                               std::size_t k);

/// "a b distance" per merge.
void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram);

}  // namespace cdsum
