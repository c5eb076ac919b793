#include "cdsum/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cdsum/errors.hpp"

namespace cdsum {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kGoldSuffix = ".gold.txt";

struct Record {
  std::string id;
  std::string body;
  std::string group;
};

std::string json_field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return it->dump();
  throw DataError(fmt::format("record field '{}' must be a string", key));
}

std::vector<Record> read_records(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open record file '{}'", path.string()));
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
    if (!obj.is_object()) throw DataError(fmt::format("{}:{}: record must be an object", path.string(), lineno));
    Record r{json_field(obj, "id"), json_field(obj, "body"), json_field(obj, "group")};
    if (r.id.empty() || r.body.empty()) {
      throw DataError(fmt::format("{}:{}: record needs non-empty 'id' and 'body'", path.string(), lineno));
    }
    records.push_back(std::move(r));
  }
  return records;
}

bool is_document_file(const fs::directory_entry& entry) {
  if (!entry.is_regular_file()) return false;
  const auto name = entry.path().filename().string();
  return name.ends_with(".txt") && !name.ends_with(kGoldSuffix);
}

std::vector<Document> load_directory(const fs::path& dir, Origin origin) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (is_document_file(entry)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) docs.push_back({f.stem().string(), read_text_file(f), origin});
  return docs;
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_record_file(const fs::path& path) {
  const auto ext = path.extension();
  return ext == ".jsonl" || ext == ".ndjson";
}

std::vector<Document> load_corpus(const fs::path& path, Origin origin, const std::optional<std::string>& group) {
  std::vector<Document> docs;
  if (fs::is_directory(path)) {
    docs = load_directory(path, origin);
  } else if (!fs::exists(path)) {
    throw DataError(fmt::format("input '{}' does not exist", path.string()));
  } else if (is_record_file(path)) {
    for (auto& r : read_records(path)) {
      if (group && r.group != *group) continue;
      docs.push_back({std::move(r.id), std::move(r.body), origin});
    }
  } else {
    docs.push_back({path.stem().string(), read_text_file(path), origin});
  }
  if (docs.empty()) throw DataError(fmt::format("no documents found in '{}'", path.string()));
  return docs;
}

std::vector<DocumentSet> load_document_sets(const fs::path& path, Origin origin) {
  std::vector<DocumentSet> sets;
  if (fs::is_directory(path)) {
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs) {
      auto docs = load_directory(d, origin);
      if (!docs.empty()) sets.push_back({d.filename().string(), std::move(docs)});
    }
  } else if (is_record_file(path)) {
    std::map<std::string, std::vector<Document>> groups;
    for (auto& r : read_records(path)) groups[r.group].push_back({std::move(r.id), std::move(r.body), origin});
    for (auto& [id, docs] : groups) sets.push_back({id.empty() ? "default" : id, std::move(docs)});
  } else {
    throw DataError(fmt::format("'{}' is neither a directory of sets nor a record file", path.string()));
  }
  if (sets.empty()) throw DataError(fmt::format("no document sets found in '{}'", path.string()));
  return sets;
}

std::optional<fs::path> find_gold(const fs::path& gold_dir, std::string_view set_id) {
  auto p = gold_dir / (std::string(set_id) + std::string(kGoldSuffix));
  if (fs::is_regular_file(p)) return p;
  return std::nullopt;
}

}  // namespace cdsum
