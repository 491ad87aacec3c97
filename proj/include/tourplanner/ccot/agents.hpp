#pragma once

#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/providers/provider.hpp"

#include <string>
#include <vector>

namespace tourplanner::ccot {

struct AgentSpec {
    std::string agent_id;
    std::string objective;  // must carry a measurable component
    std::vector<std::string> priorities;
    std::string personality;
};

json agent_to_json(const AgentSpec& a);
AgentSpec agent_from_json(const json& doc);

// Build the specialist team for a query. The parsed team is validated for
// size and id uniqueness with one structured-repair retry; persistent
// violations raise TeamSizeError (size) or SchemaError (shape/duplicates).
std::vector<AgentSpec> instantiate_agents(const std::string& query, providers::Provider& provider,
                                          int min_agents = 4, int max_agents = 6);

} // namespace tourplanner::ccot
