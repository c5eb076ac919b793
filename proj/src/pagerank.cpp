#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "cdsum/simgraph.hpp"

namespace cdsum {
namespace {

void validate(const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw std::invalid_argument(fmt::format("damping must lie in (0, 1), got {}", options.damping));
  }
  if (!(options.tol > 0.0)) {
    throw std::invalid_argument(fmt::format("tolerance must be positive, got {}", options.tol));
  }
}

// Shared power-iteration loop. `spread` writes d * (neighbour votes) into
// `next` given the current iterate and returns the dangling mass.
template <typename Spread>
CentralityVector iterate(std::size_t n, const PageRankOptions& options, Spread&& spread) {
  validate(options);
  CentralityVector result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> current(n, inv_n);
  std::vector<double> next(n);

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    const double dangling = spread(current, next);
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    for (auto& x : next) x = base + d * x;
    // Pin the sum to 1 so rounding drift cannot accumulate across sweeps.
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (auto& x : next) x /= total;

    double delta = 0.0;
    for (std::size_t u = 0; u < n; ++u) delta += std::abs(next[u] - current[u]);
    current.swap(next);
    result.iterations = it + 1;
    if (delta < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(current);
  return result;
}

}  // namespace

CentralityVector pagerank(const Adjacency& adjacency, const PageRankOptions& options) {
  const std::size_t n = adjacency.size();
  return iterate(n, options, [&](const std::vector<double>& p, std::vector<double>& acc) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto& nbrs = adjacency[v];
      if (nbrs.empty()) {
        dangling += p[v];
        continue;
      }
      const double share = p[v] / static_cast<double>(nbrs.size());
      for (const auto u : nbrs) acc[u] += share;
    }
    return dangling;
  });
}

CentralityVector pagerank(const SentenceGraph& graph, const PageRankOptions& options) {
  return pagerank(graph.pruned, options);
}

CentralityVector weighted_pagerank(const WeightedAdjacency& adjacency, const PageRankOptions& options) {
  const std::size_t n = adjacency.size();
  std::vector<double> strength(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : adjacency[v]) {
      if (!(w >= 0.0)) throw std::invalid_argument("edge weights must be non-negative");
      strength[v] += w;
    }
  }
  return iterate(n, options, [&](const std::vector<double>& p, std::vector<double>& acc) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (strength[v] == 0.0) {
        dangling += p[v];
        continue;
      }
      const double share = p[v] / strength[v];
      for (const auto& [u, w] : adjacency[v]) acc[u] += share * w;
    }
    return dangling;
  });
}

}  // namespace cdsum
