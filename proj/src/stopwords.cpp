#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "cdsum/errors.hpp"
#include "cdsum/textprep.hpp"

namespace cdsum {
namespace {

// Terms are stored post-tokenization: lowercase, no apostrophes.
constexpr std::string_view kEnglish[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
    "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves"};

constexpr std::string_view kPortuguese[] = {
    "a", "ao", "aos", "aquela", "aquelas", "aquele", "aqueles", "aquilo", "as", "até", "com",
    "como", "da", "das", "de", "dela", "delas", "dele", "deles", "depois", "do", "dos", "e",
    "ela", "elas", "ele", "eles", "em", "entre", "era", "eram", "essa", "essas", "esse", "esses",
    "esta", "estas", "este", "estes", "eu", "foi", "foram", "há", "isso", "isto", "já", "lhe",
    "lhes", "mais", "mas", "me", "mesmo", "meu", "meus", "minha", "minhas", "muito", "na", "nas",
    "nem", "no", "nos", "nossa", "nossas", "nosso", "nossos", "num", "numa", "não", "o", "os",
    "ou", "para", "pela", "pelas", "pelo", "pelos", "por", "qual", "quando", "que", "quem", "se",
    "sem", "ser", "seu", "seus", "só", "sua", "suas", "também", "te", "tem", "têm", "um", "uma",
    "umas", "uns", "você", "vocês", "à", "às", "é"};

std::string normalize_term(std::string_view term) {
  std::string out;
  out.reserve(term.size());
  for (const char c : term) out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  return out;
}

}  // namespace

StopwordSet::StopwordSet(std::vector<std::string> terms) {
  for (auto& t : terms) {
    auto norm = normalize_term(t);
    if (!norm.empty()) terms_.insert(std::move(norm));
  }
}

StopwordSet StopwordSet::builtin(std::string_view language) {
  std::vector<std::string> terms;
  if (language == "en") {
    terms.assign(std::begin(kEnglish), std::end(kEnglish));
  } else if (language == "pt") {
    terms.assign(std::begin(kPortuguese), std::end(kPortuguese));
  } else if (language != "none") {
    throw std::invalid_argument(fmt::format("no bundled stopword list for language '{}'", language));
  }
  return StopwordSet(std::move(terms));
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open stopword file '{}'", path.string()));
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    terms.push_back(line.substr(first, last - first + 1));
  }
  return StopwordSet(std::move(terms));
}

}  // namespace cdsum
