#pragma once

#include <filesystem>
#include <json.hpp>

#include "citefield/corpus.hpp"
#include "citefield/environment.hpp"
#include "citefield/similarity.hpp"

namespace citefield {

using ordered_json = nlohmann::ordered_json;

// Metadata block stamped into every artifact: tool, version, config hash.
ordered_json meta_block(const std::string& config_hash);

ordered_json matrix_to_json(const CitationMatrix& matrix, const std::string& config_hash);
CitationMatrix matrix_from_json(const ordered_json& j);

ordered_json environment_to_json(const LocalEnvironment& env, const std::string& config_hash);
LocalEnvironment environment_from_json(const ordered_json& j);

ordered_json graph_to_json(const SimilarityGraph& graph, const std::string& config_hash);
SimilarityGraph graph_from_json(const ordered_json& j);

ordered_json load_json(const std::filesystem::path& path);
void write_json(const ordered_json& j, const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace citefield
