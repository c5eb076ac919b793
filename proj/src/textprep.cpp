#include "cdsum/textprep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace {

constexpr std::array<std::string_view, 7> kAbbreviations = {"mr", "mrs", "dr", "etc", "vs", "e.g", "i.e"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// The whitespace-delimited word that ends right before `end`, lowercased and
// stripped of leading quotes/brackets.
std::string word_before(std::string_view body, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !is_space(body[begin - 1])) --begin;
  std::string word;
  for (std::size_t i = begin; i < end; ++i) word.push_back(ascii_lower(body[i]));
  const auto first = word.find_first_not_of("\"'([");
  return first == std::string::npos ? std::string{} : word.substr(first);
}

bool is_abbreviation(std::string_view word) {
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view body) {
  std::vector<std::string> out;
  auto emit = [&](std::size_t from, std::size_t to) {
    const auto piece = trim(body.substr(from, to - from));
    if (!piece.empty()) out.emplace_back(piece);
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    if (!is_terminator(body[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && is_terminator(body[j])) ++j;
    const std::size_t run = j - i;
    while (j < body.size() && is_closer(body[j])) ++j;
    const bool at_boundary = j == body.size() || is_space(body[j]);
    if (at_boundary && !(run == 1 && body[i] == '.' && is_abbreviation(word_before(body, i)))) {
      emit(start, j);
      start = j;
    }
    i = j;
  }
  emit(start, body.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view raw, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !stopwords.contains(current)) tokens.push_back(current);
    current.clear();
  };
  for (const char c : raw) {
    if (is_word_byte(c)) {
      current.push_back(ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<SentenceRecord> segment(const Document& document, const StopwordSet& stopwords,
                                    std::size_t first_id) {
  if (trim(document.body).empty()) {
    throw DataError(fmt::format("document '{}' has an empty body", document.id));
  }
  std::vector<SentenceRecord> records;
  const auto pieces = split_sentences(document.body);
  records.reserve(pieces.size());
  for (std::size_t pos = 0; pos < pieces.size(); ++pos) {
    SentenceRecord rec;
    rec.sentence_id = first_id + pos;
    rec.doc_id = document.id;
    rec.position = pos;
    rec.raw = pieces[pos];
    rec.tokens = tokenize(rec.raw, stopwords);
    for (const auto& t : rec.tokens) ++rec.term_freqs[t];
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SentenceRecord> ingest(std::span<const Document> documents, const StopwordSet& stopwords) {
  std::set<std::string_view> seen;
  std::vector<SentenceRecord> pool;
  for (const auto& doc : documents) {
    if (!seen.insert(doc.id).second) {
      throw DataError(fmt::format("duplicate document id '{}'", doc.id));
    }
    auto records = segment(doc, stopwords, pool.size());
    std::move(records.begin(), records.end(), std::back_inserter(pool));
  }
  return pool;
}

double CorpusStats::idf_of(std::string_view term) const {
  const auto it = idf.find(term);
  if (it == idf.end()) {
    throw std::invalid_argument(fmt::format("term '{}' not covered by corpus statistics", term));
  }
  return it->second;
}

CorpusStats build_stats(std::span<const SentenceRecord> sentences) {
  if (sentences.empty()) throw DataError("empty corpus");
  CorpusStats stats;
  stats.n_sentences = sentences.size();
  for (const auto& s : sentences) {
    for (const auto& [term, count] : s.term_freqs) ++stats.doc_freq[term];
  }
  const auto n = static_cast<double>(stats.n_sentences);
  for (const auto& [term, df] : stats.doc_freq) {
    // ln(1) is exactly 0, so a term present in every sentence gets idf 0.
    stats.idf.emplace(term, std::log(n / static_cast<double>(df)));
  }
  return stats;
}

}  // namespace cdsum
