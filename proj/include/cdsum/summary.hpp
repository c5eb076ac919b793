#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace cdsum {

/// One selected sentence with the scores that put it in the summary.
struct SummaryEntry {
  std::size_t sentence_id = 0;
  std::string doc_id;
  std::size_t position = 0;
  std::string raw;
  double final_score = 0.0;
  double centrality = 0.0;
  std::optional<double> keyword_score;
  std::optional<std::size_t> cluster_id;
};

}  // namespace cdsum
