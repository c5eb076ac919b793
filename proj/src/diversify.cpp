#include "cdsum/diversify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace {

using PairKey = std::pair<std::size_t, std::size_t>;

PairKey pair_key(std::size_t x, std::size_t y) { return {std::min(x, y), std::max(x, y)}; }

void check_distance_matrix(const SquareMatrix& distance) {
  const std::size_t n = distance.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(distance(i, i)) > 1e-12) throw std::invalid_argument("distance diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = distance(i, j);
      if (std::isnan(dij) || std::abs(dij - distance(j, i)) > 1e-12) {
        throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
  }
}

// Agglomeration state over "slots": a cluster lives in the slot of the leaf
// that is its smallest member, so a slot index doubles as the cluster's
// smallest member index.
class Agglomerator {
 public:
  explicit Agglomerator(const SquareMatrix& distance)
      : n_(distance.size()), dist_(distance), alive_(n_, true), node_id_(n_), members_(n_),
        nn_(n_, 0), nn_dist_(n_, 0.0) {
    for (std::size_t s = 0; s < n_; ++s) {
      node_id_[s] = s;
      members_[s] = {s};
    }
    for (std::size_t s = 0; s < n_; ++s) refresh(s);
  }

  Merge merge_closest(std::size_t step) {
    std::size_t best = n_;
    for (std::size_t s = 0; s < n_; ++s) {
      if (!alive_[s]) continue;
      if (best == n_ || better(nn_dist_[s], pair_key(s, nn_[s]), nn_dist_[best], pair_key(best, nn_[best]))) {
        best = s;
      }
    }
    const std::size_t a = std::min(best, nn_[best]);
    const std::size_t b = std::max(best, nn_[best]);
    const Merge merge{node_id_[a], node_id_[b], nn_dist_[best]};

    alive_[b] = false;
    node_id_[a] = n_ + step;
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();
    for (std::size_t c = 0; c < n_; ++c) {
      if (!alive_[c] || c == a) continue;
      const double d = std::max(dist_(a, c), dist_(b, c));
      dist_(a, c) = d;
      dist_(c, a) = d;
    }
    refresh(a);
    for (std::size_t c = 0; c < n_; ++c) {
      if (!alive_[c] || c == a) continue;
      if (nn_[c] == a || nn_[c] == b) {
        refresh(c);
      } else if (better(dist_(c, a), pair_key(c, a), nn_dist_[c], pair_key(c, nn_[c]))) {
        nn_[c] = a;
        nn_dist_[c] = dist_(c, a);
      }
    }
    return merge;
  }

  [[nodiscard]] ClusterLabels labels() const {
    ClusterLabels out;
    out.labels.assign(n_, 0);
    // Slots ascend by smallest member, which is the required label order.
    for (std::size_t s = 0; s < n_; ++s) {
      if (!alive_[s]) continue;
      for (const auto m : members_[s]) out.labels[m] = out.k;
      ++out.k;
    }
    return out;
  }

 private:
  static bool better(double d1, PairKey k1, double d2, PairKey k2) {
    return d1 < d2 || (d1 == d2 && k1 < k2);
  }

  void refresh(std::size_t s) {
    bool found = false;
    for (std::size_t t = 0; t < n_; ++t) {
      if (t == s || !alive_[t]) continue;
      if (!found || better(dist_(s, t), pair_key(s, t), nn_dist_[s], pair_key(s, nn_[s]))) {
        nn_[s] = t;
        nn_dist_[s] = dist_(s, t);
        found = true;
      }
    }
  }

  std::size_t n_;
  SquareMatrix dist_;
  std::vector<bool> alive_;
  std::vector<std::size_t> node_id_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> nn_;
  std::vector<double> nn_dist_;
};

}  // namespace

Clustering complete_link(const SquareMatrix& distance, std::size_t k) {
  const std::size_t n = distance.size();
  if (k == 0) throw std::invalid_argument("cluster count k must be at least 1");
  if (k > n) throw std::invalid_argument(fmt::format("cluster count k={} exceeds {} points", k, n));
  check_distance_matrix(distance);

  Agglomerator agg(distance);
  Clustering out;
  out.dendrogram.leaves = n;
  if (k == n) out.labels = agg.labels();
  for (std::size_t step = 0; step + 1 < n; ++step) {
    out.dendrogram.merges.push_back(agg.merge_closest(step));
    if (step + 1 == n - k) out.labels = agg.labels();
  }
  return out;
}

std::vector<std::size_t> select_representatives(const ClusterLabels& labels, std::span<const double> scores) {
  if (scores.size() != labels.labels.size()) {
    throw std::invalid_argument("score vector and labels differ in length");
  }
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(labels.k, none);
  for (std::size_t u = 0; u < scores.size(); ++u) {
    auto& slot = best.at(labels.labels[u]);
    if (slot == none || scores[u] > scores[slot]) slot = u;
  }
  std::erase(best, none);
  std::stable_sort(best.begin(), best.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });
  return best;
}

SquareMatrix similarity_distance(const SentenceGraph& graph) {
  if (graph.n > kDenseNodeLimit) {
    throw DataError(fmt::format("{} sentences exceed the clustering limit of {}", graph.n, kDenseNodeLimit));
  }
  SquareMatrix d(graph.n);
  for (std::size_t u = 0; u < graph.n; ++u) {
    for (std::size_t v = 0; v < graph.n; ++v) d(u, v) = (u == v) ? 0.0 : 1.0 - graph.weights.at(u, v);
  }
  return d;
}

DiverseSummary summarize_diverse(const SentenceGraph& graph, std::span<const SentenceRecord> sentences,
                                 std::span<const double> scores, std::span<const double> centrality,
                                 std::optional<std::span<const double>> keyword, std::size_t k) {
  if (k == 0) throw std::invalid_argument("summary size k must be at least 1");
  const std::size_t n = graph.n;
  if (sentences.size() != n || scores.size() != n || centrality.size() != n ||
      (keyword && keyword->size() != n)) {
    throw std::invalid_argument("summarize_diverse inputs differ in length");
  }

  DiverseSummary out;
  out.clustering = complete_link(similarity_distance(graph), std::min(k, n));
  for (const auto u : select_representatives(out.clustering.labels, scores)) {
    const auto& s = sentences[u];
    SummaryEntry e;
    e.sentence_id = s.sentence_id;
    e.doc_id = s.doc_id;
    e.position = s.position;
    e.raw = s.raw;
    e.final_score = scores[u];
    e.centrality = centrality[u];
    if (keyword) e.keyword_score = (*keyword)[u];
    e.cluster_id = out.clustering.labels.labels[u];
    out.selected.push_back(std::move(e));
  }
  return out;
}

void write_dendrogram(std::ostream& out, const Dendrogram& dendrogram) {
  for (const auto& m : dendrogram.merges) out << fmt::format("{} {} {}\n", m.a, m.b, m.distance);
}

}  // namespace cdsum
