#include "cdsum/biascore.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {

std::size_t default_top_t(std::size_t distinct_terms) {
  return std::max<std::size_t>(10, (distinct_terms + 2) / 3);
}

CooccurrenceGraph build_cooccurrence(std::span<const SentenceRecord> sentences, std::size_t window) {
  if (window < 2) throw std::invalid_argument(fmt::format("window must be at least 2, got {}", window));
  std::map<std::string_view, std::size_t> index;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) index.emplace(t, 0);
  }
  CooccurrenceGraph g;
  g.terms.reserve(index.size());
  for (auto& [term, id] : index) {
    id = g.terms.size();
    g.terms.emplace_back(term);
  }

  std::vector<std::set<std::size_t>> nbrs(g.terms.size());
  for (const auto& s : sentences) {
    std::vector<std::size_t> ids;
    ids.reserve(s.tokens.size());
    for (const auto& t : s.tokens) ids.push_back(index.at(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size() && j - i < window; ++j) {
        if (ids[i] == ids[j]) continue;
        nbrs[ids[i]].insert(ids[j]);
        nbrs[ids[j]].insert(ids[i]);
      }
    }
  }
  g.adjacency.reserve(nbrs.size());
  for (const auto& set : nbrs) g.adjacency.emplace_back(set.begin(), set.end());
  return g;
}

KeywordTable extract_keywords(std::span<const Document> bias_corpus, const StopwordSet& stopwords,
                              const KeywordOptions& options) {
  if (bias_corpus.empty()) throw DataError("empty bias corpus");
  const auto sentences = ingest(bias_corpus, stopwords);
  const auto graph = build_cooccurrence(sentences, options.window);
  if (graph.terms.empty()) throw DataError("empty bias corpus");

  const auto centrality = pagerank(graph.adjacency, options.pagerank);
  std::vector<std::size_t> order(graph.terms.size());
  std::iota(order.begin(), order.end(), 0);
  // Terms are already lexicographic, so the index is the tie-breaker.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return centrality.scores[a] > centrality.scores[b];
  });
  const std::size_t keep = std::min(order.size(), options.top_t.value_or(default_top_t(order.size())));

  KeywordTable table;
  for (std::size_t i = 0; i < keep; ++i) {
    table.keywords.emplace(graph.terms[order[i]], centrality.scores[order[i]]);
  }
  for (std::size_t i = 0; i < bias_corpus.size(); ++i) {
    table.source += (i == 0 ? "" : ",") + bias_corpus[i].id;
  }
  return table;
}

double sim_keyword(const SentenceRecord& x, const KeywordTable& table) {
  std::size_t hits = 0;
  for (const auto& [term, tf] : x.term_freqs) {
    if (table.contains(term)) hits += tf;
  }
  return static_cast<double>(hits);
}

std::vector<double> keyword_scores(std::span<const SentenceRecord> sentences, const KeywordTable& table,
                                   bool normalize) {
  std::vector<double> k;
  k.reserve(sentences.size());
  for (const auto& s : sentences) k.push_back(sim_keyword(s, table));
  if (normalize) {
    const double total = std::accumulate(k.begin(), k.end(), 0.0);
    if (total > 0.0) {
      for (auto& v : k) v /= total;
    }
  }
  return k;
}

BiasedScores rescore(std::span<const double> centrality, std::span<const double> keyword,
                     std::size_t n_sentences) {
  if (centrality.size() != n_sentences || keyword.size() != n_sentences) {
    throw std::invalid_argument(fmt::format("rescore length mismatch: |P|={}, |K|={}, n={}",
                                            centrality.size(), keyword.size(), n_sentences));
  }
  BiasedScores out;
  out.centrality.assign(centrality.begin(), centrality.end());
  out.keyword_score.assign(keyword.begin(), keyword.end());
  out.final.resize(n_sentences);
  const auto n = static_cast<double>(n_sentences);
  for (std::size_t u = 0; u < n_sentences; ++u) {
    const double p = centrality[u];
    const double k = keyword[u];
    out.final[u] = (p + k > 0.0) ? n * p * k / (p + k) : 0.0;
  }
  return out;
}

void write_keyword_table(std::ostream& out, const KeywordTable& table) {
  for (const auto& [term, score] : table.keywords) out << fmt::format("{} {}\n", term, score);
}

KeywordTable read_keyword_table(std::istream& in, std::string source) {
  KeywordTable table;
  table.source = std::move(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string term;
    double score = 0.0;
    std::string extra;
    if (!(fields >> term >> score) || (fields >> extra)) {
      throw DataError(fmt::format("keyword table line {}: expected 'term score'", lineno));
    }
    if (!(score > 0.0)) {
      throw DataError(fmt::format("keyword table line {}: score must be positive", lineno));
    }
    const auto normalized = tokenize(term, StopwordSet{});
    if (normalized.size() != 1) {
      throw DataError(fmt::format("keyword table line {}: '{}' is not a single term", lineno, term));
    }
    table.keywords[normalized.front()] = score;
  }
  return table;
}

}  // namespace cdsum
