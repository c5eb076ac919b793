#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdsum/biascore.hpp"
#include "cdsum/diversify.hpp"
#include "cdsum/metrics.hpp"
#include "cdsum/simgraph.hpp"
#include "cdsum/summary.hpp"
#include "cdsum/textprep.hpp"

namespace cdsum {

enum class Mode { centrality_only, biased, biased_diverse, textrank_baseline };

/// Output order of the selected sentences.
enum class SentenceOrder { score, position };

[[nodiscard]] std::string_view to_string(Mode mode);
[[nodiscard]] std::string_view to_string(SentenceOrder order);
/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] Mode parse_mode(std::string_view name);
[[nodiscard]] SentenceOrder parse_order(std::string_view name);

struct PipelineConfig {
  double beta = kDefaultBeta;
  double damping = kDefaultDamping;
  double tol = kDefaultTolerance;
  std::size_t max_iter = kDefaultMaxIterations;
  std::size_t k = 5;
  std::size_t word_budget = kDefaultWordBudget;
  std::size_t window = 2;
  std::optional<std::size_t> top_t;
  Mode mode = Mode::centrality_only;
  std::string stopwords;  // file path; empty selects the bundled list for `language`
  std::string language = "en";
  bool normalize_keywords = false;
  SentenceOrder order = SentenceOrder::score;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
  [[nodiscard]] PageRankOptions pagerank_options() const;
  [[nodiscard]] KeywordOptions keyword_options() const;
  [[nodiscard]] bool needs_bias() const noexcept { return mode == Mode::biased || mode == Mode::biased_diverse; }

  /// Sets one field from its textual form; key names match the field names.
  /// Throws std::invalid_argument on unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Every field as (key, value) text, in declaration order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Applies "key = value" lines ('#' comments, blank lines allowed) on top of
/// `base`.
[[nodiscard]] PipelineConfig parse_config(std::istream& in, PipelineConfig base = {});
void write_config(std::ostream& out, const PipelineConfig& config);

/// The configured stopword file, or the bundled list for the language tag.
[[nodiscard]] StopwordSet load_stopwords(const PipelineConfig& config);

struct ScoredSummary {
  Mode mode = Mode::centrality_only;
  PipelineConfig config;
  std::size_t n_sentences = 0;
  std::vector<SummaryEntry> selected;
  bool converged = true;
  /// Set when no sentence contains a bias keyword; selection then falls back
  /// to the zero-score tie rule.
  bool no_keyword_hits = false;

  [[nodiscard]] std::vector<std::string> sentences() const;
};

/// Everything computed along the way, for debug dumps.
struct PipelineTrace {
  std::vector<SentenceRecord> sentences;
  CorpusStats stats;
  SentenceGraph graph;
  CentralityVector centrality;
  std::optional<KeywordTable> keywords;
  std::optional<Dendrogram> dendrogram;
  ScoredSummary summary;
};

/// Top-k by centrality on the pruned graph.
[[nodiscard]] ScoredSummary run_lexrank_baseline(std::span<const Document> corpus, const PipelineConfig& config,
                                                 const StopwordSet& stopwords);

/// Top-k by weighted PageRank over the unpruned similarity graph.
[[nodiscard]] ScoredSummary run_textrank_baseline(std::span<const Document> corpus,
                                                  const PipelineConfig& config, const StopwordSet& stopwords);

/// Keyword-biased ranking; mode biased_diverse adds cluster-based selection.
/// Any other mode in `config` is treated as biased.
[[nodiscard]] ScoredSummary run_cross_domain(std::span<const Document> corpus,
                                             std::span<const Document> bias_corpus, const PipelineConfig& config,
                                             const StopwordSet& stopwords);
[[nodiscard]] ScoredSummary run_cross_domain(std::span<const Document> corpus, const KeywordTable& keywords,
                                             const PipelineConfig& config, const StopwordSet& stopwords);

/// Dispatches on config.mode. Biased modes need `keywords`; a missing table
/// raises std::invalid_argument.
[[nodiscard]] PipelineTrace run_pipeline(std::span<const Document> corpus, const KeywordTable* keywords,
                                         const PipelineConfig& config, const StopwordSet& stopwords);

/// Truncates the summary to config.word_budget tokens and scores it:
/// ROUGE-1/2/3 with stopwords kept, redundancy and coverage without.
/// Throws DataError when the gold text has no tokens.
[[nodiscard]] EvalReport evaluate(const ScoredSummary& candidate, std::string_view gold,
                                  std::span<const Document> sources, const PipelineConfig& config,
                                  const StopwordSet& stopwords);

/// Lower-level form on raw candidate text.
[[nodiscard]] EvalReport evaluate_text(std::string_view candidate, std::string_view gold,
                                       std::span<const Document> sources, std::size_t word_budget,
                                       const StopwordSet& stopwords);

/// Summary text, one sentence per line.
void write_summary_text(std::ostream& out, const ScoredSummary& summary);
/// JSON sidecar with mode, config, warnings and per-sentence provenance.
void write_summary_sidecar(std::ostream& out, const ScoredSummary& summary);

}  // namespace cdsum
