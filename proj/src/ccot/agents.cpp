#include "tourplanner/ccot/agents.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/providers/structured.hpp"

#include <set>

namespace tourplanner::ccot {

json agent_to_json(const AgentSpec& a) {
    return json{{"agent_id", a.agent_id},
                {"objective", a.objective},
                {"priorities", a.priorities},
                {"personality", a.personality}};
}

AgentSpec agent_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("agent: not an object");
    AgentSpec a;
    if (!doc.contains("agent_id") || !doc["agent_id"].is_string() ||
        doc["agent_id"].get<std::string>().empty())
        throw SchemaError("agent: missing agent_id");
    a.agent_id = doc["agent_id"].get<std::string>();
    a.objective = doc.value("objective", "");
    if (a.objective.empty()) throw SchemaError("agent '" + a.agent_id + "': missing objective");
    if (doc.contains("priorities")) {
        for (const auto& p : doc["priorities"])
            if (p.is_string()) a.priorities.push_back(p.get<std::string>());
    }
    a.personality = doc.value("personality", "");
    return a;
}

namespace {

std::vector<AgentSpec> parse_team(const std::string& reply, int min_agents, int max_agents) {
    json doc = providers::parse_json_payload(reply);
    if (!doc.is_array()) throw SchemaError("agent team: reply is not a JSON array");
    std::vector<AgentSpec> team;
    std::set<std::string> ids;
    for (const auto& item : doc) {
        AgentSpec a = agent_from_json(item);
        if (!ids.insert(a.agent_id).second)
            throw SchemaError("agent team: duplicate agent_id '" + a.agent_id + "'");
        team.push_back(std::move(a));
    }
    int n = static_cast<int>(team.size());
    if (n < min_agents || n > max_agents)
        throw TeamSizeError("agent team: got " + std::to_string(n) + " agents, need " +
                            std::to_string(min_agents) + ".." + std::to_string(max_agents));
    return team;
}

} // namespace

std::vector<AgentSpec> instantiate_agents(const std::string& query, providers::Provider& provider,
                                          int min_agents, int max_agents) {
    if (query.empty()) throw std::invalid_argument("instantiate_agents: empty query");
    providers::ChatRequest req;
    req.system_prompt = prompts::build_agents_system();
    req.user_prompt = prompts::build_agents_user(query);
    req.expects_structured = true;

    std::string reply = provider.chat(req);
    try {
        return parse_team(reply, min_agents, max_agents);
    } catch (const Error& first) {
        providers::ChatRequest repair = req;
        repair.user_prompt += std::string("\n\nYour previous reply was rejected: ") + first.what() +
                              "\nReply again following the required format exactly.";
        std::string second = provider.chat(repair);
        return parse_team(second, min_agents, max_agents);
    }
}

} // namespace tourplanner::ccot
