#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cdsum/textprep.hpp"

namespace cdsum {

inline constexpr std::size_t kDefaultWordBudget = 100;

using TokenStream = std::vector<std::string>;

struct NgramProfile {
  std::size_t n = 1;
  std::map<std::vector<std::string>, std::size_t> counts;
  std::size_t total = 0;
};

/// Throws std::invalid_argument for n == 0.
[[nodiscard]] NgramProfile ngram_profile(std::span<const std::string> tokens, std::size_t n);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

/// Clipped n-gram overlap. Empty denominators give 0.
[[nodiscard]] RougeScore rouge_n(std::span<const std::string> candidate,
                                 std::span<const std::string> reference, std::size_t n);

[[nodiscard]] TokenStream truncate(std::span<const std::string> candidate, std::size_t budget);

/// 1 - distinct/total over the non-stopword terms; 0 for an empty stream.
[[nodiscard]] double redundancy(std::span<const std::string> summary, const StopwordSet& stopwords);

/// Fraction of distinct non-stopword summary terms found in any source stream.
[[nodiscard]] double coverage(std::span<const std::string> summary, std::span<const TokenStream> sources,
                              const StopwordSet& stopwords);

struct EvalReport {
  std::map<std::size_t, RougeScore> rouge;
  double redundancy = 0.0;
  double coverage = 0.0;
  std::size_t summary_words = 0;
};

/// key=value lines: summary_words, rougeN.precision/recall/f_score,
/// redundancy, coverage.
void write_eval_report(std::ostream& out, const EvalReport& report);

/// Reads back what write_eval_report produced. Throws DataError on unknown
/// keys or malformed lines.
[[nodiscard]] EvalReport read_eval_report(std::istream& in);

/// Tab-separated table, one row per set plus a final "mean" row.
void write_aggregate_table(std::ostream& out,
                           std::span<const std::pair<std::string, EvalReport>> reports);

}  // namespace cdsum
