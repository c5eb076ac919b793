// cdsum: cross-domain, redundancy-aware extractive summarizer.
//
//   cdsum summarize  --input DIR|FILE [--bias PATH | --keywords FILE] [--mode M] ...
//   cdsum keywords   --bias PATH [--window N] [--top_t N] [--output FILE]
//   cdsum evaluate   --summary FILE --gold FILE --input PATH [--word_budget N]
//   cdsum batch-eval --sets PATH --output-dir DIR [--gold-dir DIR] [--bias PATH] ...
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence
// under --strict.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cdsum/biascore.hpp"
#include "cdsum/corpus_io.hpp"
#include "cdsum/errors.hpp"
#include "cdsum/metrics.hpp"
#include "cdsum/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cdsum;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNotConverged = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config flags shared by every subcommand. Values stay textual until the
// config file (if any) has been applied, so flags always win.
class ConfigFlags {
 public:
  void attach(CLI::App* cmd, std::initializer_list<const char*> keys) {
    cmd->add_option("--config", config_file_, "key = value configuration file");
    for (const char* key : keys) {
      std::string names = fmt::format("--{}", key);
      if (std::string dashed = key; dashed.find('_') != std::string::npos) {
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += fmt::format(",--{}", dashed);
      }
      options_.emplace_back(key, cmd->add_option(names, values_[key], fmt::format("pipeline setting '{}'", key)));
    }
  }

  [[nodiscard]] PipelineConfig resolve() const {
    PipelineConfig config;
    if (!config_file_.empty()) {
      std::ifstream in(config_file_);
      if (!in) throw DataError(fmt::format("cannot open config file '{}'", config_file_));
      config = parse_config(in);
    }
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) config.set(key, values_.at(key));
    }
    config.validate();
    return config;
  }

 private:
  std::string config_file_;
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << content;
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

std::optional<KeywordTable> resolve_keywords(const std::string& bias_path, const std::string& keywords_path,
                                             const PipelineConfig& config, const StopwordSet& stopwords) {
  if (!bias_path.empty() && !keywords_path.empty()) throw UsageError("use either --bias or --keywords, not both");
  if (!keywords_path.empty()) {
    std::ifstream in(keywords_path);
    if (!in) throw DataError(fmt::format("cannot open keyword table '{}'", keywords_path));
    return read_keyword_table(in, keywords_path);
  }
  if (!bias_path.empty()) {
    const auto bias = load_corpus(bias_path, Origin::bias_corpus);
    return extract_keywords(bias, stopwords, config.keyword_options());
  }
  if (config.needs_bias()) {
    throw UsageError(fmt::format("mode {} needs --bias or --keywords", to_string(config.mode)));
  }
  return std::nullopt;
}

void write_debug_dump(const fs::path& dir, const PipelineTrace& trace) {
  fs::create_directories(dir);
  write_file(dir / "similarity.edges", render([&](auto& o) { write_similarity_edges(o, trace.graph); }));
  write_file(dir / "pruned.edges", render([&](auto& o) { write_pruned_edges(o, trace.graph); }));
  write_file(dir / "centrality.txt", render([&](auto& o) { write_scores(o, trace.centrality.scores); }));
  if (trace.dendrogram) {
    write_file(dir / "dendrogram.txt", render([&](auto& o) { write_dendrogram(o, *trace.dendrogram); }));
  }
  if (trace.keywords) {
    write_file(dir / "keywords.txt", render([&](auto& o) { write_keyword_table(o, *trace.keywords); }));
  }
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first failure
// (by index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, count));
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-domain, redundancy-aware extractive summarizer"};
  app.require_subcommand(1);

  // summarize
  auto* summarize = app.add_subcommand("summarize", "Summarize one document set");
  ConfigFlags summarize_flags;
  summarize_flags.attach(summarize, {"beta", "damping", "tol", "max_iter", "k", "word_budget", "window", "top_t",
                                     "mode", "stopwords", "language", "normalize_keywords", "order"});
  std::string s_input, s_group, s_bias, s_keywords, s_output, s_sidecar, s_dump;
  bool s_strict = false;
  summarize->add_option("--input", s_input, "Directory of .txt files, record file, or single text file")->required();
  summarize->add_option("--group", s_group, "Record-file group to summarize");
  summarize->add_option("--bias", s_bias, "Bias corpus (directory, record file, or text file)");
  summarize->add_option("--keywords", s_keywords, "Precomputed keyword table ('term score' lines)");
  summarize->add_option("--output", s_output, "Summary text file (default: stdout)");
  summarize->add_option("--sidecar", s_sidecar, "JSON file with scores and provenance");
  summarize->add_option("--dump-dir", s_dump, "Directory for graph, centrality and dendrogram dumps");
  summarize->add_flag("--strict", s_strict, "Exit with code 3 if PageRank does not converge");

  // keywords
  auto* keywords = app.add_subcommand("keywords", "Extract a keyword table from a bias corpus");
  ConfigFlags keyword_flags;
  keyword_flags.attach(keywords, {"damping", "tol", "max_iter", "window", "top_t", "stopwords", "language"});
  std::string k_bias, k_output;
  keywords->add_option("--bias", k_bias, "Bias corpus (directory, record file, or text file)")->required();
  keywords->add_option("--output", k_output, "Keyword table file (default: stdout)");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a summary against a gold standard");
  ConfigFlags evaluate_flags;
  evaluate_flags.attach(evaluate_cmd, {"word_budget", "stopwords", "language"});
  std::string e_summary, e_gold, e_input, e_group, e_output;
  evaluate_cmd->add_option("--summary", e_summary, "Candidate summary text")->required();
  evaluate_cmd->add_option("--gold", e_gold, "Gold-standard summary text")->required();
  evaluate_cmd->add_option("--input", e_input, "Source documents used for coverage")->required();
  evaluate_cmd->add_option("--group", e_group, "Record-file group of the sources");
  evaluate_cmd->add_option("--output", e_output, "Report file (default: stdout)");

  // batch-eval
  auto* batch = app.add_subcommand("batch-eval", "Summarize and evaluate every document set");
  ConfigFlags batch_flags;
  batch_flags.attach(batch, {"beta", "damping", "tol", "max_iter", "k", "word_budget", "window", "top_t", "mode",
                             "stopwords", "language", "normalize_keywords", "order"});
  std::string b_sets, b_gold_dir, b_bias, b_keywords, b_output;
  std::size_t b_jobs = 1;
  bool b_strict = false;
  batch->add_option("--sets", b_sets, "Directory of set subdirectories, or a grouped record file")->required();
  batch->add_option("--gold-dir", b_gold_dir, "Directory holding <set>.gold.txt (default: next to the sets)");
  batch->add_option("--bias", b_bias, "Bias corpus shared by all sets");
  batch->add_option("--keywords", b_keywords, "Precomputed keyword table shared by all sets");
  batch->add_option("--output-dir", b_output, "Where summaries, reports and aggregate.tsv go")->required();
  batch->add_option("--jobs", b_jobs, "Sets processed in parallel")->check(CLI::PositiveNumber);
  batch->add_flag("--strict", b_strict, "Exit with code 3 if PageRank does not converge for any set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (summarize->parsed()) {
      const auto config = summarize_flags.resolve();
      const auto stopwords = load_stopwords(config);
      const auto corpus = load_corpus(s_input, Origin::target_corpus,
                                      s_group.empty() ? std::nullopt : std::optional<std::string>(s_group));
      const auto table = resolve_keywords(s_bias, s_keywords, config, stopwords);
      const auto trace = run_pipeline(corpus, table ? &*table : nullptr, config, stopwords);
      const auto text = render([&](auto& o) { write_summary_text(o, trace.summary); });
      if (s_output.empty()) {
        std::cout << text;
      } else {
        write_file(s_output, text);
      }
      if (!s_sidecar.empty()) write_file(s_sidecar, render([&](auto& o) { write_summary_sidecar(o, trace.summary); }));
      if (!s_dump.empty()) write_debug_dump(s_dump, trace);
      if (trace.summary.no_keyword_hits) std::cerr << "warning: no sentence contains a bias keyword\n";
      if (!trace.summary.converged) {
        std::cerr << "warning: PageRank did not converge within max_iter\n";
        if (s_strict) return kExitNotConverged;
      }
      return 0;
    }

    if (keywords->parsed()) {
      const auto config = keyword_flags.resolve();
      const auto stopwords = load_stopwords(config);
      const auto bias = load_corpus(k_bias, Origin::bias_corpus);
      const auto table = extract_keywords(bias, stopwords, config.keyword_options());
      const auto text = render([&](auto& o) { write_keyword_table(o, table); });
      if (k_output.empty()) {
        std::cout << text;
      } else {
        write_file(k_output, text);
      }
      return 0;
    }

    if (evaluate_cmd->parsed()) {
      const auto config = evaluate_flags.resolve();
      const auto stopwords = load_stopwords(config);
      const auto sources = load_corpus(e_input, Origin::target_corpus,
                                       e_group.empty() ? std::nullopt : std::optional<std::string>(e_group));
      const auto report =
          evaluate_text(read_text_file(e_summary), read_text_file(e_gold), sources, config.word_budget, stopwords);
      const auto text = render([&](auto& o) { write_eval_report(o, report); });
      if (e_output.empty()) {
        std::cout << text;
      } else {
        write_file(e_output, text);
      }
      return 0;
    }

    if (batch->parsed()) {
      const auto config = batch_flags.resolve();
      const auto stopwords = load_stopwords(config);
      const auto sets = load_document_sets(b_sets, Origin::target_corpus);
      const fs::path gold_dir = !b_gold_dir.empty()           ? fs::path(b_gold_dir)
                                : fs::is_directory(b_sets)    ? fs::path(b_sets)
                                                              : fs::path(b_sets).parent_path();
      std::vector<std::string> golds(sets.size());
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto path = find_gold(gold_dir, sets[i].id);
        if (!path) throw DataError(fmt::format("missing gold standard for set '{}' in '{}'", sets[i].id, gold_dir.string()));
        golds[i] = read_text_file(*path);
      }
      const auto table = resolve_keywords(b_bias, b_keywords, config, stopwords);
      const fs::path out_dir = b_output;
      fs::create_directories(out_dir);

      std::vector<std::pair<std::string, EvalReport>> reports(sets.size());
      std::vector<bool> converged(sets.size(), true);
      parallel_for(sets.size(), b_jobs, [&](std::size_t i) {
        const auto& set = sets[i];
        const auto trace = run_pipeline(set.documents, table ? &*table : nullptr, config, stopwords);
        const auto report = evaluate(trace.summary, golds[i], set.documents, config, stopwords);
        write_file(out_dir / (set.id + ".summary.txt"), render([&](auto& o) { write_summary_text(o, trace.summary); }));
        write_file(out_dir / (set.id + ".summary.json"),
                   render([&](auto& o) { write_summary_sidecar(o, trace.summary); }));
        write_file(out_dir / (set.id + ".eval.txt"), render([&](auto& o) { write_eval_report(o, report); }));
        reports[i] = {set.id, report};
        converged[i] = trace.summary.converged;
      });
      write_file(out_dir / "aggregate.tsv", render([&](auto& o) { write_aggregate_table(o, reports); }));
      write_file(out_dir / "config.txt", render([&](auto& o) { write_config(o, config); }));

      bool all_converged = true;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!converged[i]) {
          std::cerr << fmt::format("warning: PageRank did not converge for set '{}'\n", sets[i].id);
          all_converged = false;
        }
      }
      if (!all_converged && b_strict) return kExitNotConverged;
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
