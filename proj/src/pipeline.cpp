#include "cdsum/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace {

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

SummaryEntry make_entry(const SentenceRecord& s, double final_score, double centrality,
                        std::optional<double> keyword) {
  SummaryEntry e;
  e.sentence_id = s.sentence_id;
  e.doc_id = s.doc_id;
  e.position = s.position;
  e.raw = s.raw;
  e.final_score = final_score;
  e.centrality = centrality;
  e.keyword_score = keyword;
  return e;
}

WeightedAdjacency unpruned_weights(const SentenceGraph& graph) {
  WeightedAdjacency adj(graph.n);
  for (std::size_t u = 0; u < graph.n; ++u) {
    for (const auto& [v, w] : graph.weights.row(u)) {
      if (v != u) adj[u].emplace_back(v, w);
    }
  }
  return adj;
}

}  // namespace

std::vector<std::string> ScoredSummary::sentences() const {
  std::vector<std::string> out;
  out.reserve(selected.size());
  for (const auto& e : selected) out.push_back(e.raw);
  return out;
}

PipelineTrace run_pipeline(std::span<const Document> corpus, const KeywordTable* keywords,
                           const PipelineConfig& config, const StopwordSet& stopwords) {
  config.validate();
  if (corpus.empty()) throw DataError("empty corpus");
  if (config.needs_bias() && keywords == nullptr) {
    throw std::invalid_argument(fmt::format("mode {} requires a bias corpus or keyword table", to_string(config.mode)));
  }

  PipelineTrace t;
  t.sentences = ingest(corpus, stopwords);
  t.stats = build_stats(t.sentences);
  t.graph = build_graph(t.sentences, t.stats, config.beta);

  auto& summary = t.summary;
  summary.mode = config.mode;
  summary.config = config;
  summary.n_sentences = t.sentences.size();

  switch (config.mode) {
    case Mode::centrality_only: {
      t.centrality = pagerank(t.graph, config.pagerank_options());
      const auto& p = t.centrality.scores;
      for (const auto u : top_k(p, config.k)) summary.selected.push_back(make_entry(t.sentences[u], p[u], p[u], {}));
      break;
    }
    case Mode::textrank_baseline: {
      t.centrality = weighted_pagerank(unpruned_weights(t.graph), config.pagerank_options());
      const auto& p = t.centrality.scores;
      for (const auto u : top_k(p, config.k)) summary.selected.push_back(make_entry(t.sentences[u], p[u], p[u], {}));
      break;
    }
    case Mode::biased:
    case Mode::biased_diverse: {
      t.keywords = *keywords;
      t.centrality = pagerank(t.graph, config.pagerank_options());
      const auto k_scores = keyword_scores(t.sentences, *keywords, config.normalize_keywords);
      summary.no_keyword_hits = std::all_of(k_scores.begin(), k_scores.end(), [](double v) { return v == 0.0; });
      const auto biased = rescore(t.centrality.scores, k_scores, t.sentences.size());
      if (config.mode == Mode::biased) {
        for (const auto u : top_k(biased.final, config.k)) {
          summary.selected.push_back(
              make_entry(t.sentences[u], biased.final[u], biased.centrality[u], biased.keyword_score[u]));
        }
      } else {
        auto diverse = summarize_diverse(t.graph, t.sentences, biased.final, biased.centrality,
                                         std::span<const double>(biased.keyword_score), config.k);
        summary.selected = std::move(diverse.selected);
        t.dendrogram = std::move(diverse.clustering.dendrogram);
      }
      break;
    }
  }
  summary.converged = t.centrality.converged;
  if (config.order == SentenceOrder::position) {
    std::sort(summary.selected.begin(), summary.selected.end(),
              [](const SummaryEntry& a, const SummaryEntry& b) { return a.sentence_id < b.sentence_id; });
  }
  return t;
}

ScoredSummary run_lexrank_baseline(std::span<const Document> corpus, const PipelineConfig& config,
                                   const StopwordSet& stopwords) {
  auto c = config;
  c.mode = Mode::centrality_only;
  return run_pipeline(corpus, nullptr, c, stopwords).summary;
}

ScoredSummary run_textrank_baseline(std::span<const Document> corpus, const PipelineConfig& config,
                                    const StopwordSet& stopwords) {
  auto c = config;
  c.mode = Mode::textrank_baseline;
  return run_pipeline(corpus, nullptr, c, stopwords).summary;
}

ScoredSummary run_cross_domain(std::span<const Document> corpus, const KeywordTable& keywords,
                               const PipelineConfig& config, const StopwordSet& stopwords) {
  auto c = config;
  if (!c.needs_bias()) c.mode = Mode::biased;
  return run_pipeline(corpus, &keywords, c, stopwords).summary;
}

ScoredSummary run_cross_domain(std::span<const Document> corpus, std::span<const Document> bias_corpus,
                               const PipelineConfig& config, const StopwordSet& stopwords) {
  config.validate();
  const auto table = extract_keywords(bias_corpus, stopwords, config.keyword_options());
  return run_cross_domain(corpus, table, config, stopwords);
}

EvalReport evaluate_text(std::string_view candidate, std::string_view gold, std::span<const Document> sources,
                         std::size_t word_budget, const StopwordSet& stopwords) {
  const StopwordSet keep_all;
  const auto reference = tokenize(gold, keep_all);
  if (reference.empty()) throw DataError("empty gold summary");
  const auto summary = truncate(tokenize(candidate, keep_all), word_budget);

  std::vector<TokenStream> source_streams;
  source_streams.reserve(sources.size());
  for (const auto& doc : sources) source_streams.push_back(tokenize(doc.body, keep_all));

  EvalReport report;
  for (std::size_t n = 1; n <= 3; ++n) report.rouge[n] = rouge_n(summary, reference, n);
  report.redundancy = redundancy(summary, stopwords);
  report.coverage = coverage(summary, source_streams, stopwords);
  report.summary_words = summary.size();
  return report;
}

EvalReport evaluate(const ScoredSummary& candidate, std::string_view gold, std::span<const Document> sources,
                    const PipelineConfig& config, const StopwordSet& stopwords) {
  std::string text;
  for (const auto& e : candidate.selected) {
    text += e.raw;
    text += '\n';
  }
  return evaluate_text(text, gold, sources, config.word_budget, stopwords);
}

}  // namespace cdsum
