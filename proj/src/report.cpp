#include <ostream>

#include <json.hpp>

#include "cdsum/pipeline.hpp"

namespace cdsum {

void write_summary_text(std::ostream& out, const ScoredSummary& summary) {
  for (const auto& e : summary.selected) out << e.raw << '\n';
}

void write_summary_sidecar(std::ostream& out, const ScoredSummary& summary) {
  nlohmann::ordered_json doc;
  doc["mode"] = to_string(summary.mode);
  auto& cfg = doc["config"];
  cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summary.config.entries()) cfg[key] = value;
  doc["n_sentences"] = summary.n_sentences;
  doc["converged"] = summary.converged;
  auto warnings = nlohmann::ordered_json::array();
  if (!summary.converged) warnings.push_back("pagerank_not_converged");
  if (summary.no_keyword_hits) warnings.push_back("no_keyword_hits");
  doc["warnings"] = std::move(warnings);

  auto selected = nlohmann::ordered_json::array();
  for (const auto& e : summary.selected) {
    nlohmann::ordered_json item;
    item["sentence_id"] = e.sentence_id;
    item["doc_id"] = e.doc_id;
    item["position"] = e.position;
    item["final_score"] = e.final_score;
    item["centrality"] = e.centrality;
    item["keyword_score"] = e.keyword_score ? nlohmann::ordered_json(*e.keyword_score) : nullptr;
    item["cluster_id"] = e.cluster_id ? nlohmann::ordered_json(*e.cluster_id) : nullptr;
    item["raw"] = e.raw;
    selected.push_back(std::move(item));
  }
  doc["selected"] = std::move(selected);
  out << doc.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
}

}  // namespace cdsum
