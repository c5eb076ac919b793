#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdsum {

enum class Origin { target_corpus, bias_corpus };

struct Document {
  std::string id;
  std::string body;
  Origin origin = Origin::target_corpus;
};

/// One segmented sentence. `sentence_id` is global across an ingested pool
/// and strictly increasing in ingestion order; graph node u corresponds to the
/// sentence with sentence_id u.
struct SentenceRecord {
  std::size_t sentence_id = 0;
  std::string doc_id;
  std::size_t position = 0;
  std::string raw;
  std::vector<std::string> tokens;
  std::map<std::string, std::size_t, std::less<>> term_freqs;

  /// A sentence with no content terms. It stays in the pool for provenance
  /// but has similarity 0 to every sentence.
  [[nodiscard]] bool degenerate() const noexcept { return tokens.empty(); }
};

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::vector<std::string> terms);

  /// Bundled list for a language tag: "en", "pt", or "none" (empty).
  static StopwordSet builtin(std::string_view language);
  /// One term per line; blank lines and lines starting with '#' are skipped.
  static StopwordSet from_file(const std::filesystem::path& path);

  [[nodiscard]] bool contains(std::string_view term) const { return terms_.contains(term); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

 private:
  std::set<std::string, std::less<>> terms_;
};

struct CorpusStats {
  std::size_t n_sentences = 0;
  std::map<std::string, std::size_t, std::less<>> doc_freq;
  std::map<std::string, double, std::less<>> idf;

  /// Throws std::invalid_argument for a term absent from the corpus.
  [[nodiscard]] double idf_of(std::string_view term) const;
};

/// Splits on '.', '!' or '?' runs followed by whitespace or end of text.
/// A single '.' after one of mr, mrs, dr, etc, vs, e.g, i.e does not end a
/// sentence. Returned sentences are whitespace-trimmed and non-empty.
[[nodiscard]] std::vector<std::string> split_sentences(std::string_view body);

/// Lowercases ASCII, splits on every non-alphanumeric ASCII byte and drops
/// stopwords. Bytes >= 0x80 are kept as word characters so UTF-8 letters
/// survive intact.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view raw, const StopwordSet& stopwords);

/// Segments and tokenizes one document, numbering sentences from `first_id`.
/// Throws DataError when the body is blank.
[[nodiscard]] std::vector<SentenceRecord> segment(const Document& document,
                                                  const StopwordSet& stopwords,
                                                  std::size_t first_id = 0);

/// Segments a whole document set into one sentence pool, in document order.
/// Throws DataError on duplicate document ids or blank bodies.
[[nodiscard]] std::vector<SentenceRecord> ingest(std::span<const Document> documents,
                                                 const StopwordSet& stopwords);

/// Sentence-level document frequencies and idf = ln(n / df).
/// Throws DataError("empty corpus") for an empty list.
[[nodiscard]] CorpusStats build_stats(std::span<const SentenceRecord> sentences);

}  // namespace cdsum
