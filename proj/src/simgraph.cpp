#include "cdsum/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace {

// tf-idf weights keyed by vocabulary index, ascending.
struct TermVector {
  std::vector<std::pair<std::size_t, double>> entries;
  double norm_sq = 0.0;
};

using VocabIndex = std::unordered_map<std::string_view, std::size_t>;

VocabIndex index_vocabulary(const CorpusStats& stats) {
  VocabIndex index;
  index.reserve(stats.idf.size());
  std::size_t i = 0;
  for (const auto& [term, idf] : stats.idf) index.emplace(term, i++);
  return index;
}

TermVector make_vector(const SentenceRecord& s, const CorpusStats& stats, const VocabIndex& vocab) {
  TermVector v;
  v.entries.reserve(s.term_freqs.size());
  // term_freqs and the vocabulary are both ordered by term, so entries come
  // out sorted by index.
  for (const auto& [term, tf] : s.term_freqs) {
    const auto it = vocab.find(term);
    if (it == vocab.end()) {
      throw std::invalid_argument(fmt::format("term '{}' not covered by corpus statistics", term));
    }
    const double w = static_cast<double>(tf) * stats.idf_of(term);
    v.entries.emplace_back(it->second, w);
    v.norm_sq += w * w;
  }
  return v;
}

double cosine(const TermVector& x, const TermVector& y) {
  if (x.norm_sq == 0.0 || y.norm_sq == 0.0) return 0.0;
  double dot = 0.0;
  auto a = x.entries.begin();
  auto b = y.entries.begin();
  while (a != x.entries.end() && b != y.entries.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      dot += a->second * b->second;
      ++a;
      ++b;
    }
  }
  // sqrt(a*a) == a in IEEE arithmetic, so identical vectors give exactly 1.
  const double c = dot / std::sqrt(x.norm_sq * y.norm_sq);
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace

double idf_modified_cosine(const SentenceRecord& x, const SentenceRecord& y, const CorpusStats& stats) {
  const auto vocab = index_vocabulary(stats);
  return cosine(make_vector(x, stats, vocab), make_vector(y, stats, vocab));
}

SimilarityMatrix::SimilarityMatrix(std::size_t n) : n_(n), dense_(n <= kDenseNodeLimit) {
  if (dense_) {
    cells_.assign(n * n, 0.0);
  } else {
    rows_.resize(n);
  }
}

double SimilarityMatrix::at(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("similarity index out of range");
  if (dense_) return cells_[u * n_ + v];
  const auto& r = rows_[u];
  const auto it = std::lower_bound(r.begin(), r.end(), v,
                                   [](const auto& entry, std::size_t col) { return entry.first < col; });
  return (it != r.end() && it->first == v) ? it->second : 0.0;
}

std::vector<std::pair<std::size_t, double>> SimilarityMatrix::row(std::size_t u) const {
  if (u >= n_) throw std::out_of_range("similarity index out of range");
  if (!dense_) return rows_[u];
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t v = 0; v < n_; ++v) {
    if (const double w = cells_[u * n_ + v]; w != 0.0) out.emplace_back(v, w);
  }
  return out;
}

void SimilarityMatrix::set(std::size_t u, std::size_t v, double w) {
  if (u >= n_ || v >= n_) throw std::out_of_range("similarity index out of range");
  if (dense_) {
    cells_[u * n_ + v] = w;
    cells_[v * n_ + u] = w;
    return;
  }
  if (w == 0.0) return;
  rows_[u].emplace_back(v, w);
  if (u != v) rows_[v].emplace_back(u, w);
}

bool SentenceGraph::edge(std::size_t u, std::size_t v) const {
  if (u >= n || v >= n) throw std::out_of_range("graph index out of range");
  return std::binary_search(pruned[u].begin(), pruned[u].end(), v);
}

std::size_t SentenceGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : pruned) twice += nbrs.size();
  return twice / 2;
}

SentenceGraph build_graph(std::span<const SentenceRecord> sentences, const CorpusStats& stats, double beta) {
  if (sentences.empty()) throw DataError("empty corpus");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument(fmt::format("beta must lie in [0, 1], got {}", beta));
  }
  const auto vocab = index_vocabulary(stats);
  std::vector<TermVector> vectors;
  vectors.reserve(sentences.size());
  for (const auto& s : sentences) vectors.push_back(make_vector(s, stats, vocab));

  SentenceGraph g;
  g.n = sentences.size();
  g.beta = beta;
  g.weights = SimilarityMatrix(g.n);
  g.pruned.assign(g.n, {});
  for (std::size_t u = 0; u < g.n; ++u) {
    g.weights.set(u, u, sentences[u].degenerate() ? 0.0 : 1.0);
    for (std::size_t v = u + 1; v < g.n; ++v) {
      const double w = cosine(vectors[u], vectors[v]);
      g.weights.set(u, v, w);
      if (w >= beta) {
        g.pruned[u].push_back(v);
        g.pruned[v].push_back(u);
      }
    }
  }
  return g;
}

void write_similarity_edges(std::ostream& out, const SentenceGraph& graph) {
  for (std::size_t u = 0; u < graph.n; ++u) {
    for (const auto& [v, w] : graph.weights.row(u)) {
      if (v > u) out << fmt::format("{} {} {}\n", u, v, w);
    }
  }
}

void write_pruned_edges(std::ostream& out, const SentenceGraph& graph) {
  for (std::size_t u = 0; u < graph.n; ++u) {
    for (const auto v : graph.pruned[u]) {
      if (v > u) out << fmt::format("{} {} 1\n", u, v);
    }
  }
}

void write_scores(std::ostream& out, std::span<const double> scores) {
  for (std::size_t u = 0; u < scores.size(); ++u) out << fmt::format("{} {}\n", u, scores[u]);
}

}  // namespace cdsum
