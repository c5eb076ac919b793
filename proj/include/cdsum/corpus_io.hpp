#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdsum/textprep.hpp"

namespace cdsum {

struct DocumentSet {
  std::string id;
  std::vector<Document> documents;
};

/// Whole file as a string. Throws DataError if it cannot be read.
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

/// True for ".jsonl" / ".ndjson" record files.
[[nodiscard]] bool is_record_file(const std::filesystem::path& path);

/// Loads one document set from
///   - a directory: every "*.txt" file except "*.gold.txt", sorted by name,
///     id = file name without ".txt";
///   - a record file: one JSON object per line with "id", "body" and an
///     optional "group"; `group` keeps only matching records;
///   - any other regular file: a single document.
/// Throws DataError on unreadable input, malformed records or an empty result.
[[nodiscard]] std::vector<Document> load_corpus(const std::filesystem::path& path, Origin origin,
                                                const std::optional<std::string>& group = std::nullopt);

/// Loads many sets: each subdirectory of a directory, or each distinct
/// "group" of a record file. Sets are ordered by id.
[[nodiscard]] std::vector<DocumentSet> load_document_sets(const std::filesystem::path& path, Origin origin);

/// "<gold_dir>/<set_id>.gold.txt" when that file exists.
[[nodiscard]] std::optional<std::filesystem::path> find_gold(const std::filesystem::path& gold_dir,
                                                             std::string_view set_id);

}  // namespace cdsum
