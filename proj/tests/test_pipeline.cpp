#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cdsum/corpus_io.hpp"
#include "cdsum/errors.hpp"
#include "cdsum/pipeline.hpp"
#include "oracles.hpp"

using namespace cdsum;
namespace fs = std::filesystem;

namespace {

std::vector<Document> corpus_of(std::initializer_list<const char*> bodies, Origin origin = Origin::target_corpus) {
  std::vector<Document> docs;
  int i = 0;
  for (const char* b : bodies) docs.push_back({"d" + std::to_string(i++), b, origin});
  return docs;
}

std::vector<std::size_t> ids(const ScoredSummary& s) {
  std::vector<std::size_t> out;
  for (const auto& e : s.selected) out.push_back(e.sentence_id);
  return out;
}

KeywordTable table_of(std::initializer_list<const char*> terms) {
  KeywordTable t;
  for (const char* term : terms) t.keywords[term] = 1.0;
  return t;
}

std::vector<std::size_t> ranking(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  return order;
}

const StopwordSet kEnglish = StopwordSet::builtin("en");

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("cdsum_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                  ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const fs::path& rel, const std::string& content) const {
    fs::create_directories((path_ / rel).parent_path());
    std::ofstream(path_ / rel) << content;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(LexRankTest, SingleSentence) {
  PipelineConfig cfg;
  cfg.k = 3;
  const auto s = run_lexrank_baseline(corpus_of({"Only one sentence here."}), cfg, kEnglish);
  ASSERT_EQ(s.selected.size(), 1u);
  EXPECT_EQ(s.selected[0].raw, "Only one sentence here.");
  EXPECT_EQ(s.mode, Mode::centrality_only);
}

TEST(LexRankTest, IdenticalSentencesTieBySentenceId) {
  PipelineConfig cfg;
  cfg.k = 2;
  const auto s = run_lexrank_baseline(corpus_of({"Great movie. Great movie.", "Great movie. Great movie."}), cfg, kEnglish);
  EXPECT_EQ(ids(s), (std::vector<std::size_t>{0, 1}));
}

TEST(LexRankTest, SixSentenceOrderingMatchesDenseOracle) {
  const auto docs = corpus_of({"The film explores history. History lessons fill the film. Popcorn was stale.",
                               "Students learn history from the film. The soundtrack is loud. Film history matters."});
  PipelineConfig cfg;
  cfg.k = 6;
  cfg.tol = 1e-13;
  cfg.max_iter = 1000;
  const auto s = run_lexrank_baseline(docs, cfg, kEnglish);

  const auto pool = ingest(docs, kEnglish);
  ASSERT_EQ(pool.size(), 6u);
  std::vector<oracle::Tokens> toks;
  for (const auto& r : pool) toks.push_back(r.tokens);
  oracle::Matrix adj(6, std::vector<double>(6, 0.0));
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t v = 0; v < 6; ++v)
      if (u != v && oracle::dense_tfidf_cosine(toks[u], toks[v], toks) >= cfg.beta) adj[u][v] = 1.0;
  const auto p = oracle::dense_pagerank(adj, cfg.damping);
  EXPECT_EQ(ids(s), ranking(p));
  for (const auto& e : s.selected) EXPECT_NEAR(e.centrality, p[e.sentence_id], 1e-8);
}

TEST(TextRankTest, DisjointSentencesTie) {
  const auto s = run_textrank_baseline(corpus_of({"Apples grow. Rockets launch."}), PipelineConfig{}, kEnglish);
  ASSERT_EQ(s.selected.size(), 2u);
  EXPECT_EQ(s.selected[0].final_score, s.selected[1].final_score);
  EXPECT_NEAR(s.selected[0].final_score, 0.5, 1e-12);
}

TEST(TextRankTest, WeightedTriangleSharedEndpointFirst) {
  // Sentence 0 shares most vocabulary with both others; 1 and 2 barely overlap.
  const auto docs = corpus_of({"alpha beta gamma delta. alpha beta gamma omega. alpha delta kappa sigma. zeta."});
  PipelineConfig cfg;
  cfg.tol = 1e-13;
  cfg.max_iter = 1000;
  const auto s = run_textrank_baseline(docs, cfg, kEnglish);
  const auto pool = ingest(docs, kEnglish);
  std::vector<oracle::Tokens> toks;
  for (const auto& r : pool) toks.push_back(r.tokens);
  oracle::Matrix w(4, std::vector<double>(4, 0.0));
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v)
      if (u != v) w[u][v] = oracle::dense_tfidf_cosine(toks[u], toks[v], toks);
  ASSERT_GT(w[0][1], w[1][2]);
  ASSERT_GT(w[0][2], w[1][2]);
  const auto p = oracle::dense_pagerank(w, cfg.damping);
  EXPECT_EQ(s.selected[0].sentence_id, 0u);
  EXPECT_EQ(ids(s), ranking(p));
  for (const auto& e : s.selected) EXPECT_NEAR(e.final_score, p[e.sentence_id], 1e-8);
}

TEST(TextRankTest, UniformWeightsMatchLexRank) {
  const auto docs = corpus_of({"red fox jumps. blue whale sings. red fox jumps. blue whale sings. red fox jumps."});
  PipelineConfig cfg;
  cfg.k = 5;
  EXPECT_EQ(ids(run_textrank_baseline(docs, cfg, kEnglish)), ids(run_lexrank_baseline(docs, cfg, kEnglish)));
}

TEST(CrossDomainTest, SingleKeywordSentenceRanksFirst) {
  const auto docs = corpus_of({"The movie was fun. The movie had a fun cast. A fun movie overall. "
                               "The movie teaches history."});
  PipelineConfig cfg;
  cfg.mode = Mode::biased;
  cfg.k = 4;
  const auto s = run_cross_domain(docs, table_of({"history"}), cfg, kEnglish);
  EXPECT_EQ(s.selected[0].sentence_id, 3u);
  for (std::size_t i = 1; i < s.selected.size(); ++i) EXPECT_EQ(s.selected[i].final_score, 0.0);
  EXPECT_FALSE(s.no_keyword_hits);
}

TEST(CrossDomainTest, SelfBiasRecomputesFormula) {
  const auto docs = corpus_of({"Students learn history in class. The class watched a history film. "
                               "Film lessons help students. History class film discussion."});
  PipelineConfig cfg;
  cfg.mode = Mode::biased;
  cfg.k = 4;
  KeywordOptions kopts = cfg.keyword_options();
  const auto table = extract_keywords(docs, kEnglish, kopts);
  const auto s = run_cross_domain(docs, docs, cfg, kEnglish);

  const auto pool = ingest(docs, kEnglish);
  const auto stats = build_stats(pool);
  const auto p = pagerank(build_graph(pool, stats, cfg.beta), cfg.pagerank_options()).scores;
  std::vector<double> o(pool.size());
  for (std::size_t u = 0; u < pool.size(); ++u) {
    double k = 0;
    for (const auto& t : pool[u].tokens) k += table.contains(t) ? 1 : 0;
    ASSERT_GT(k, 0.0);
    o[u] = pool.size() * p[u] * k / (p[u] + k);
  }
  EXPECT_EQ(ids(s), ranking(o));
  for (const auto& e : s.selected) {
    EXPECT_NEAR(e.final_score, o[e.sentence_id], 1e-12);
    EXPECT_GT(e.final_score, 0.0);
  }
}

TEST(CrossDomainTest, TwoTopicDiverseTakesOneEach) {
  const auto docs = corpus_of({"The plot twist was great. Great plot and a twist ending. The plot twist ending was great. "
                               "A great twist in the plot. The film teaches students about history. "
                               "History students enjoyed the film."});
  PipelineConfig cfg;
  cfg.mode = Mode::biased_diverse;
  cfg.k = 2;
  const auto s = run_cross_domain(docs, table_of({"history", "students", "plot"}), cfg, kEnglish);
  ASSERT_EQ(s.selected.size(), 2u);
  EXPECT_NE(*s.selected[0].cluster_id, *s.selected[1].cluster_id);
  const bool first_is_history = s.selected[0].sentence_id >= 4;
  const bool second_is_history = s.selected[1].sentence_id >= 4;
  EXPECT_NE(first_is_history, second_is_history);
  // The history sentences carry two keywords each, so they are biased first.
  EXPECT_TRUE(first_is_history);
  EXPECT_GT(s.selected[0].final_score, s.selected[1].final_score);
}

TEST(CrossDomainTest, NoKeywordHitsWarns) {
  PipelineConfig cfg;
  cfg.mode = Mode::biased;
  cfg.k = 2;
  const auto s = run_cross_domain(corpus_of({"Alpha beta. Gamma delta. Alpha gamma."}), table_of({"zzz"}), cfg, kEnglish);
  EXPECT_TRUE(s.no_keyword_hits);
  EXPECT_EQ(ids(s), (std::vector<std::size_t>{0, 1}));
}

TEST(CrossDomainTest, UniformKeywordMatchesCentralityRanking) {
  const auto docs = corpus_of({"Film alpha beta. Film beta gamma. Film gamma delta alpha. Film delta. Film beta alpha gamma."});
  PipelineConfig cfg;
  cfg.k = 5;
  const auto plain = run_lexrank_baseline(docs, cfg, kEnglish);
  cfg.mode = Mode::biased;
  const auto biased = run_cross_domain(docs, table_of({"film"}), cfg, kEnglish);
  EXPECT_EQ(ids(plain), ids(biased));
}

TEST(CrossDomainTest, MissingKeywordsIsUsageError) {
  PipelineConfig cfg;
  cfg.mode = Mode::biased;
  EXPECT_THROW((void)run_pipeline(corpus_of({"a b."}), nullptr, cfg, kEnglish), std::invalid_argument);
  EXPECT_THROW((void)run_lexrank_baseline({}, PipelineConfig{}, kEnglish), DataError);
}

TEST(PipelineTest, BudgetPositionOrderAndDeterminism) {
  const auto docs = corpus_of({"The film explores history. History lessons fill the film. Popcorn was stale.",
                               "Students learn history from the film. The soundtrack is loud. Film history matters."});
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.mode = Mode::biased_diverse;
  const auto table = table_of({"history", "students"});
  const auto a = run_pipeline(docs, &table, cfg, kEnglish);
  const auto b = run_pipeline(docs, &table, cfg, kEnglish);
  EXPECT_LE(a.summary.selected.size(), 3u);
  ASSERT_TRUE(a.dendrogram.has_value());
  std::ostringstream sa, sb;
  write_summary_sidecar(sa, a.summary);
  write_summary_sidecar(sb, b.summary);
  EXPECT_EQ(sa.str(), sb.str());

  cfg.order = SentenceOrder::position;
  const auto pos = run_pipeline(docs, &table, cfg, kEnglish);
  EXPECT_TRUE(std::is_sorted(pos.summary.selected.begin(), pos.summary.selected.end(),
                             [](const auto& x, const auto& y) { return x.sentence_id < y.sentence_id; }));
}

TEST(PipelineTest, SidecarEchoesConfig) {
  PipelineConfig cfg;
  cfg.k = 2;
  cfg.beta = 0.2;
  const auto s = run_lexrank_baseline(corpus_of({"One fish. Two fish. Red fish."}), cfg, kEnglish);
  std::ostringstream out;
  write_summary_sidecar(out, s);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["mode"], "centrality_only");
  EXPECT_EQ(j["config"]["beta"], "0.2");
  EXPECT_EQ(j["config"]["k"], "2");
  EXPECT_EQ(j["selected"].size(), 2u);
  EXPECT_TRUE(j["selected"][0]["keyword_score"].is_null());

  std::ostringstream text;
  write_summary_text(text, s);
  const std::string lines = text.str();
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 2);
}

TEST(EvaluateTest, IdentityAndEmpty) {
  const auto docs = corpus_of({"The class studied the civil war. Students wrote essays."});
  PipelineConfig cfg;
  cfg.k = 2;
  cfg.order = SentenceOrder::position;
  const auto s = run_lexrank_baseline(docs, cfg, kEnglish);
  const auto r = evaluate(s, "The class studied the civil war.\nStudents wrote essays.", docs, cfg, kEnglish);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(r.rouge.at(n).f_score, 1.0);
  EXPECT_EQ(r.coverage, 1.0);

  const ScoredSummary empty;
  const auto z = evaluate(empty, "gold text", docs, cfg, kEnglish);
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_EQ(z.rouge.at(n).precision, 0.0);
    EXPECT_EQ(z.rouge.at(n).recall, 0.0);
    EXPECT_EQ(z.rouge.at(n).f_score, 0.0);
  }
  EXPECT_EQ(z.redundancy, 0.0);
  EXPECT_EQ(z.coverage, 0.0);
  EXPECT_EQ(z.summary_words, 0u);
  EXPECT_THROW((void)evaluate(empty, " ... ", docs, cfg, kEnglish), DataError);
}

TEST(EvaluateTest, FixtureComposesMetricOracles) {
  const auto docs = corpus_of({"Teachers can use the film to discuss history. The film is long."});
  const std::string candidate = "Teachers can use the film to discuss history. The film is long.";
  const std::string gold = "Teachers use this film to discuss history and ethics with students.";
  const auto r = evaluate_text(candidate, gold, docs, 5, kEnglish);
  const TokenStream cand{"teachers", "can", "use", "the", "film"};
  const auto ref = tokenize(gold, StopwordSet{});
  EXPECT_EQ(r.summary_words, 5u);
  for (std::size_t n = 1; n <= 3; ++n) {
    const double overlap = static_cast<double>(oracle::brute_overlap(cand, ref, n));
    EXPECT_DOUBLE_EQ(r.rouge.at(n).precision, overlap / static_cast<double>(oracle::gram_count(cand, n)));
    EXPECT_DOUBLE_EQ(r.rouge.at(n).recall, overlap / static_cast<double>(oracle::gram_count(ref, n)));
  }
  // Content terms of the truncated candidate: teachers, use, film (can/the are stopwords).
  EXPECT_EQ(r.redundancy, 0.0);
  EXPECT_EQ(r.coverage, 1.0);
}

TEST(ConfigTest, ParseSetAndValidate) {
  std::istringstream in("# comment\nbeta = 0.25\nmode = biased_diverse\ntop_t = 7\n\nnormalize_keywords = yes\n");
  auto cfg = parse_config(in);
  EXPECT_EQ(cfg.beta, 0.25);
  EXPECT_EQ(cfg.mode, Mode::biased_diverse);
  EXPECT_EQ(cfg.top_t, 7u);
  EXPECT_TRUE(cfg.normalize_keywords);
  cfg.set("top_t", "auto");
  EXPECT_FALSE(cfg.top_t.has_value());

  std::ostringstream out;
  write_config(out, cfg);
  std::istringstream back(out.str());
  const auto again = parse_config(back);
  EXPECT_EQ(again.entries(), cfg.entries());

  EXPECT_THROW(cfg.set("nope", "1"), std::invalid_argument);
  EXPECT_THROW(cfg.set("beta", "abc"), std::invalid_argument);
  EXPECT_THROW(cfg.set("mode", "lexrank"), std::invalid_argument);
  std::istringstream broken("beta 0.1\n");
  EXPECT_THROW((void)parse_config(broken), std::invalid_argument);

  PipelineConfig bad;
  bad.beta = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.damping = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.k = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.window = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(CorpusIoTest, DirectoryRecordsAndGold) {
  TempDir tmp;
  tmp.write("sets/b/doc2.txt", "Second doc.");
  tmp.write("sets/b/doc1.txt", "First doc.");
  tmp.write("sets/b/ignored.gold.txt", "not a source");
  tmp.write("sets/a/x.txt", "Alpha.");
  tmp.write("sets/b.gold.txt", "gold b");
  tmp.write("records.jsonl",
            "{\"id\": \"r1\", \"body\": \"Great film.\", \"group\": \"m2\"}\n"
            "\n"
            "{\"id\": 7, \"body\": \"Bad film.\", \"group\": \"m1\"}\n"
            "{\"id\": \"r3\", \"body\": \"Ok film.\", \"group\": \"m2\"}\n");

  const auto docs = load_corpus(tmp.path() / "sets/b", Origin::target_corpus);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].id, "doc1");
  EXPECT_EQ(docs[1].body, "Second doc.");

  const auto sets = load_document_sets(tmp.path() / "sets", Origin::target_corpus);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].id, "a");
  EXPECT_TRUE(find_gold(tmp.path() / "sets", "b").has_value());
  EXPECT_FALSE(find_gold(tmp.path() / "sets", "a").has_value());

  const auto m2 = load_corpus(tmp.path() / "records.jsonl", Origin::target_corpus, std::string("m2"));
  ASSERT_EQ(m2.size(), 2u);
  EXPECT_EQ(m2[1].id, "r3");
  const auto groups = load_document_sets(tmp.path() / "records.jsonl", Origin::target_corpus);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].id, "m1");
  EXPECT_EQ(groups[0].documents[0].id, "7");

  EXPECT_THROW((void)load_corpus(tmp.path() / "missing", Origin::target_corpus), DataError);
  EXPECT_THROW((void)load_corpus(tmp.path() / "records.jsonl", Origin::target_corpus, std::string("m9")), DataError);
  tmp.write("bad.jsonl", "{\"id\": \"x\"}\n");
  EXPECT_THROW((void)load_corpus(tmp.path() / "bad.jsonl", Origin::target_corpus), DataError);
  tmp.write("worse.jsonl", "not json\n");
  EXPECT_THROW((void)load_corpus(tmp.path() / "worse.jsonl", Origin::target_corpus), DataError);
}
