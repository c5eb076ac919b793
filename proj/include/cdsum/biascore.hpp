#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdsum/simgraph.hpp"
#include "cdsum/textprep.hpp"

namespace cdsum {

struct KeywordTable {
  std::map<std::string, double, std::less<>> keywords;
  std::string source;

  [[nodiscard]] bool contains(std::string_view term) const { return keywords.contains(term); }
  [[nodiscard]] std::size_t size() const noexcept { return keywords.size(); }
};

struct KeywordOptions {
  std::size_t window = 2;
  /// Unset means max(10, ceil(distinct_terms / 3)).
  std::optional<std::size_t> top_t;
  PageRankOptions pagerank;
};

[[nodiscard]] std::size_t default_top_t(std::size_t distinct_terms);

/// Term co-occurrence graph: nodes are distinct terms in lexicographic order,
/// with an undirected edge whenever two different terms fall within `window`
/// consecutive tokens of one sentence.
struct CooccurrenceGraph {
  std::vector<std::string> terms;
  Adjacency adjacency;
};

[[nodiscard]] CooccurrenceGraph build_cooccurrence(std::span<const SentenceRecord> sentences,
                                                   std::size_t window);

/// TextRank keyword extraction over a bias corpus. Candidates are the
/// stopword-filtered tokens; the top_t terms by centrality are kept (ties by
/// term). Throws DataError("empty bias corpus") when nothing survives
/// tokenization.
[[nodiscard]] KeywordTable extract_keywords(std::span<const Document> bias_corpus,
                                            const StopwordSet& stopwords,
                                            const KeywordOptions& options = {});

/// Occurrences in x of terms present in the table. Keyword weights are not
/// used; only membership matters.
[[nodiscard]] double sim_keyword(const SentenceRecord& x, const KeywordTable& table);

/// sim_keyword for every sentence. With `normalize`, K is divided by its sum
/// (left untouched when the sum is 0).
[[nodiscard]] std::vector<double> keyword_scores(std::span<const SentenceRecord> sentences,
                                                 const KeywordTable& table, bool normalize = false);

struct BiasedScores {
  std::vector<double> centrality;
  std::vector<double> keyword_score;
  std::vector<double> final;
};

/// O[u] = n * P[u] * K[u] / (P[u] + K[u]), or 0 when P[u] + K[u] = 0.
/// Throws std::invalid_argument when the vectors differ from n_sentences in
/// length.
[[nodiscard]] BiasedScores rescore(std::span<const double> centrality, std::span<const double> keyword,
                                   std::size_t n_sentences);

/// Two-column "term score" text, one keyword per line, ascending by term.
void write_keyword_table(std::ostream& out, const KeywordTable& table);
/// Throws DataError on malformed lines or non-positive scores.
[[nodiscard]] KeywordTable read_keyword_table(std::istream& in, std::string source);

}  // namespace cdsum
