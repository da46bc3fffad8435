#pragma once

#include <string>

#include <json.hpp>

#include "rlab/attack.hpp"
#include "rlab/privacy.hpp"
#include "rlab/rashomon.hpp"
#include "rlab/selection.hpp"
#include "rlab/stability.hpp"

namespace rlab {

using json = nlohmann::json;

// shortest round-trip decimal form, deterministic across runs
std::string format_double(double v);

json tree_to_json(const Tree& t);
Tree tree_from_json(const json& j);

json rashomon_to_json(const RashomonSet& set);
RashomonSet rashomon_from_json(const json& j);
void save_rashomon(const RashomonSet& set, const std::string& path);
RashomonSet load_rashomon(const std::string& path);

json selection_to_json(const EnsembleSelection& sel);

json leaf_count_summary_to_json(const LeafCountSummary& summary);
LeafCountSummary leaf_count_summary_from_json(const json& j);

// CSV + {target_key, flips} sidecar
void save_adversarial(const AdversarialDataset& adv, const std::string& csv_path,
                      const std::string& sidecar_path);

json neighbor_report_to_json(const NeighborReport& report);
json reconstruction_report_to_json(const ReconstructionResult& result,
                                   double baseline_error);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace rlab
