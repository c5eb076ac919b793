#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "cdsum/pipeline.hpp"

namespace cdsum {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(fmt::format("invalid value '{}' for {}", text, key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument(fmt::format("invalid boolean '{}' for {}", text, key));
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::centrality_only: return "centrality_only";
    case Mode::biased: return "biased";
    case Mode::biased_diverse: return "biased_diverse";
    case Mode::textrank_baseline: return "textrank_baseline";
  }
  return "unknown";
}

std::string_view to_string(SentenceOrder order) {
  return order == SentenceOrder::score ? "score" : "position";
}

Mode parse_mode(std::string_view name) {
  for (const auto m : {Mode::centrality_only, Mode::biased, Mode::biased_diverse, Mode::textrank_baseline}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument(fmt::format("unknown mode '{}'", name));
}

SentenceOrder parse_order(std::string_view name) {
  if (name == "score") return SentenceOrder::score;
  if (name == "position") return SentenceOrder::position;
  throw std::invalid_argument(fmt::format("unknown order '{}'", name));
}

void PipelineConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument(fmt::format("beta must lie in [0, 1], got {}", beta));
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument(fmt::format("damping must lie in (0, 1), got {}", damping));
  }
  if (!(tol > 0.0)) throw std::invalid_argument(fmt::format("tol must be positive, got {}", tol));
  if (max_iter == 0) throw std::invalid_argument("max_iter must be at least 1");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (window < 2) throw std::invalid_argument(fmt::format("window must be at least 2, got {}", window));
  if (top_t && *top_t == 0) throw std::invalid_argument("top_t must be at least 1");
}

PageRankOptions PipelineConfig::pagerank_options() const { return {damping, tol, max_iter}; }

KeywordOptions PipelineConfig::keyword_options() const { return {window, top_t, pagerank_options()}; }

void PipelineConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "beta") {
    beta = parse_number<double>(key, value);
  } else if (key == "damping") {
    damping = parse_number<double>(key, value);
  } else if (key == "tol") {
    tol = parse_number<double>(key, value);
  } else if (key == "max_iter") {
    max_iter = parse_number<std::size_t>(key, value);
  } else if (key == "k") {
    k = parse_number<std::size_t>(key, value);
  } else if (key == "word_budget") {
    word_budget = parse_number<std::size_t>(key, value);
  } else if (key == "window") {
    window = parse_number<std::size_t>(key, value);
  } else if (key == "top_t") {
    if (value == "auto") {
      top_t.reset();
    } else {
      top_t = parse_number<std::size_t>(key, value);
    }
  } else if (key == "mode") {
    mode = parse_mode(value);
  } else if (key == "stopwords") {
    stopwords = std::string(value);
  } else if (key == "language") {
    language = std::string(value);
  } else if (key == "normalize_keywords") {
    normalize_keywords = parse_bool(key, value);
  } else if (key == "order") {
    order = parse_order(value);
  } else {
    throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
  }
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::entries() const {
  return {
      {"beta", fmt::format("{}", beta)},
      {"damping", fmt::format("{}", damping)},
      {"tol", fmt::format("{}", tol)},
      {"max_iter", fmt::format("{}", max_iter)},
      {"k", fmt::format("{}", k)},
      {"word_budget", fmt::format("{}", word_budget)},
      {"window", fmt::format("{}", window)},
      {"top_t", top_t ? fmt::format("{}", *top_t) : std::string("auto")},
      {"mode", std::string(to_string(mode))},
      {"stopwords", stopwords},
      {"language", language},
      {"normalize_keywords", normalize_keywords ? "true" : "false"},
      {"order", std::string(to_string(order))},
  };
}

PipelineConfig parse_config(std::istream& in, PipelineConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("config line {}: expected 'key = value'", lineno));
    }
    base.set(trim(text.substr(0, eq)), text.substr(eq + 1));
  }
  return base;
}

void write_config(std::ostream& out, const PipelineConfig& config) {
  for (const auto& [key, value] : config.entries()) out << key << " = " << value << '\n';
}

StopwordSet load_stopwords(const PipelineConfig& config) {
  if (!config.stopwords.empty()) return StopwordSet::from_file(config.stopwords);
  return StopwordSet::builtin(config.language);
}

}  // namespace cdsum
