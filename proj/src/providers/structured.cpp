#include "tourplanner/providers/structured.hpp"

namespace tourplanner::providers {

std::string extract_payload(const std::string& reply) {
    size_t open = reply.find("```");
    if (open == std::string::npos) return reply;
    size_t body = reply.find('\n', open);
    if (body == std::string::npos) return reply;
    size_t close = reply.find("```", body);
    if (close == std::string::npos) return reply;
    return reply.substr(body + 1, close - body - 1);
}

json parse_json_payload(const std::string& reply) {
    std::string payload = extract_payload(reply);
    try {
        return json::parse(payload);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("reply is not valid JSON: ") + e.what());
    }
}

} // namespace tourplanner::providers
