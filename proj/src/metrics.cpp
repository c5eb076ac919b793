#include "cdsum/metrics.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::set<std::string_view> content_terms(std::span<const std::string> stream, const StopwordSet& stopwords) {
  std::set<std::string_view> terms;
  for (const auto& t : stream) {
    if (!stopwords.contains(t)) terms.insert(t);
  }
  return terms;
}

}  // namespace

NgramProfile ngram_profile(std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n-gram order must be at least 1");
  NgramProfile p;
  p.n = n;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++p.counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    ++p.total;
  }
  return p;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n) {
  const auto cand = ngram_profile(candidate, n);
  const auto ref = ngram_profile(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand.counts) {
    if (const auto it = ref.counts.find(gram); it != ref.counts.end()) overlap += std::min(count, it->second);
  }
  RougeScore s;
  s.precision = ratio(overlap, cand.total);
  s.recall = ratio(overlap, ref.total);
  const double sum = s.precision + s.recall;
  s.f_score = sum > 0.0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

TokenStream truncate(std::span<const std::string> candidate, std::size_t budget) {
  const auto keep = std::min(budget, candidate.size());
  return TokenStream(candidate.begin(), candidate.begin() + static_cast<std::ptrdiff_t>(keep));
}

double redundancy(std::span<const std::string> summary, const StopwordSet& stopwords) {
  std::size_t total = 0;
  std::set<std::string_view> distinct;
  for (const auto& t : summary) {
    if (stopwords.contains(t)) continue;
    ++total;
    distinct.insert(t);
  }
  return total == 0 ? 0.0 : 1.0 - ratio(distinct.size(), total);
}

double coverage(std::span<const std::string> summary, std::span<const TokenStream> sources,
                const StopwordSet& stopwords) {
  const auto terms = content_terms(summary, stopwords);
  if (terms.empty()) return 0.0;
  std::set<std::string_view> source_terms;
  for (const auto& stream : sources) source_terms.insert(stream.begin(), stream.end());
  const auto found = static_cast<std::size_t>(
      std::count_if(terms.begin(), terms.end(), [&](std::string_view t) { return source_terms.contains(t); }));
  return ratio(found, terms.size());
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << fmt::format("summary_words={}\n", report.summary_words);
  for (const auto& [n, s] : report.rouge) {
    out << fmt::format("rouge{0}.precision={1:.6f}\nrouge{0}.recall={2:.6f}\nrouge{0}.f_score={3:.6f}\n", n,
                       s.precision, s.recall, s.f_score);
  }
  out << fmt::format("redundancy={:.6f}\ncoverage={:.6f}\n", report.redundancy, report.coverage);
}

EvalReport read_eval_report(std::istream& in) {
  EvalReport report;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(fmt::format("malformed report line '{}'", line));
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "summary_words") {
        report.summary_words = std::stoul(value);
      } else if (key == "redundancy") {
        report.redundancy = std::stod(value);
      } else if (key == "coverage") {
        report.coverage = std::stod(value);
      } else if (key.starts_with("rouge") && key.find('.') != std::string::npos) {
        const auto dot = key.find('.');
        const std::size_t n = std::stoul(key.substr(5, dot - 5));
        const auto field = key.substr(dot + 1);
        auto& s = report.rouge[n];
        if (field == "precision") {
          s.precision = std::stod(value);
        } else if (field == "recall") {
          s.recall = std::stod(value);
        } else if (field == "f_score") {
          s.f_score = std::stod(value);
        } else {
          throw DataError(fmt::format("unknown report key '{}'", key));
        }
      } else {
        throw DataError(fmt::format("unknown report key '{}'", key));
      }
    } catch (const std::logic_error&) {
      throw DataError(fmt::format("malformed report line '{}'", line));
    }
  }
  return report;
}

void write_aggregate_table(std::ostream& out, std::span<const std::pair<std::string, EvalReport>> reports) {
  std::set<std::size_t> orders;
  for (const auto& [id, r] : reports) {
    for (const auto& [n, s] : r.rouge) orders.insert(n);
  }
  out << "set";
  for (const auto n : orders) out << fmt::format("\trouge{0}_p\trouge{0}_r\trouge{0}_f", n);
  out << "\tredundancy\tcoverage\tsummary_words\n";

  std::map<std::size_t, RougeScore> sum_rouge;
  double sum_red = 0.0;
  double sum_cov = 0.0;
  double sum_words = 0.0;
  for (const auto& [id, r] : reports) {
    out << id;
    for (const auto n : orders) {
      const auto it = r.rouge.find(n);
      const RougeScore s = it == r.rouge.end() ? RougeScore{} : it->second;
      out << fmt::format("\t{:.6f}\t{:.6f}\t{:.6f}", s.precision, s.recall, s.f_score);
      auto& acc = sum_rouge[n];
      acc.precision += s.precision;
      acc.recall += s.recall;
      acc.f_score += s.f_score;
    }
    out << fmt::format("\t{:.6f}\t{:.6f}\t{}\n", r.redundancy, r.coverage, r.summary_words);
    sum_red += r.redundancy;
    sum_cov += r.coverage;
    sum_words += static_cast<double>(r.summary_words);
  }
  const double count = reports.empty() ? 1.0 : static_cast<double>(reports.size());
  out << "mean";
  for (const auto n : orders) {
    const auto& acc = sum_rouge[n];
    out << fmt::format("\t{:.6f}\t{:.6f}\t{:.6f}", acc.precision / count, acc.recall / count,
                       acc.f_score / count);
  }
  out << fmt::format("\t{:.6f}\t{:.6f}\t{:.2f}\n", sum_red / count, sum_cov / count, sum_words / count);
}

}  // namespace cdsum
