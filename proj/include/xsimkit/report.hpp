#pragma once

#include <string>

#include <json.hpp>

#include "xsimkit/corpus.hpp"
#include "xsimkit/ranking.hpp"
#include "xsimkit/scoring.hpp"

namespace xsimkit {

nlohmann::json to_json(const StatsReport& report);
nlohmann::json to_json(const ErrorReport& report);
nlohmann::json to_json(const RankingReport& report);

// Renders one of the tool's JSON documents (dispatching on its "type" field)
// as a Markdown table.
std::string render_markdown(const nlohmann::json& doc);

}  // namespace xsimkit
