#include "tourplanner/ccot/itinerary.hpp"

#include "tourplanner/core/errors.hpp"

#include <sstream>

namespace tourplanner::ccot {

std::string to_string(ActivityType t) {
    switch (t) {
        case ActivityType::Transportation: return "transportation";
        case ActivityType::CheckIn: return "check-in";
        case ActivityType::CheckOut: return "check-out";
        case ActivityType::Sightseeing: return "sightseeing";
        case ActivityType::Meal: return "meal";
        case ActivityType::LocalTransfer: return "local_transfer";
    }
    return "sightseeing";
}

std::optional<ActivityType> activity_type_from_string(const std::string& s) {
    if (s == "transportation") return ActivityType::Transportation;
    if (s == "check-in") return ActivityType::CheckIn;
    if (s == "check-out") return ActivityType::CheckOut;
    if (s == "sightseeing") return ActivityType::Sightseeing;
    if (s == "meal") return ActivityType::Meal;
    if (s == "local_transfer") return ActivityType::LocalTransfer;
    return std::nullopt;
}

json step_to_json(const Step& s) {
    json j{{"time", format_window(s.start, s.end)},
           {"activity type", to_string(s.type)},
           {"name", s.name},
           {"description", s.description}};
    if (s.price) j["price"] = *s.price;
    if (s.mode) j["mode"] = sandbox::to_string(*s.mode);
    return j;
}

json proposal_to_json(const Proposal& p) {
    json j;
    if (!p.agent_id.empty()) j["agent_id"] = p.agent_id;
    j["day_label"] = p.day_label;
    j["daily_cost"] = p.daily_cost;
    json steps = json::array();
    for (const auto& s : p.steps) steps.push_back(step_to_json(s));
    j["plan"] = std::move(steps);
    return j;
}

json itinerary_to_json(const Itinerary& it) {
    json j;
    j["schema_version"] = 1;
    if (!it.config_hash.empty()) j["config_hash"] = it.config_hash;
    if (!it.sandbox_hash.empty()) j["sandbox_hash"] = it.sandbox_hash;
    j["query"] = it.query;
    j["origin_city"] = it.origin_city;
    j["city"] = it.city;
    j["duration_days"] = it.duration_days;
    j["hotel"] = it.hotel_name;
    j["arrival_transport"] = it.arrival_leg;
    j["return_transport"] = it.return_leg;
    json days = json::array();
    for (const auto& d : it.days) days.push_back(proposal_to_json(d));
    j["days"] = std::move(days);
    j["total_cost"] = it.total_cost;
    return j;
}

Step step_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("step: not an object");
    if (!doc.contains("time") || !doc["time"].is_string())
        throw SchemaError("step: missing time");
    auto window = parse_window(doc["time"].get<std::string>());
    if (!window) throw SchemaError("step: bad time window '" + doc["time"].get<std::string>() + "'");
    Step s;
    s.start = window->first;
    s.end = window->second;
    if (!doc.contains("activity type") || !doc["activity type"].is_string())
        throw SchemaError("step: missing activity type");
    auto type = activity_type_from_string(doc["activity type"].get<std::string>());
    if (!type)
        throw SchemaError("step: unknown activity type '" + doc["activity type"].get<std::string>() + "'");
    s.type = *type;
    if (!doc.contains("name") || !doc["name"].is_string()) throw SchemaError("step: missing name");
    s.name = doc["name"].get<std::string>();
    s.description = doc.value("description", "");
    if (doc.contains("price")) {
        if (!doc["price"].is_number()) throw SchemaError("step: non-numeric price");
        s.price = doc["price"].get<double>();
    }
    if (doc.contains("mode")) {
        auto mode = sandbox::transport_mode_from_string(doc["mode"].get<std::string>());
        if (!mode) throw SchemaError("step: bad mode");
        s.mode = *mode;
    }
    return s;
}

Proposal proposal_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("proposal: not an object");
    Proposal p;
    p.agent_id = doc.value("agent_id", "");
    if (!doc.contains("day_label") || !doc["day_label"].is_string())
        throw SchemaError("proposal: missing day_label");
    p.day_label = doc["day_label"].get<std::string>();
    if (!doc.contains("daily_cost") || !doc["daily_cost"].is_number())
        throw SchemaError("proposal: missing daily_cost");
    p.daily_cost = doc["daily_cost"].get<double>();
    if (!doc.contains("plan") || !doc["plan"].is_array())
        throw SchemaError("proposal: missing plan array");
    for (const auto& s : doc["plan"]) p.steps.push_back(step_from_json(s));
    return p;
}

Itinerary itinerary_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("itinerary: not an object");
    Itinerary it;
    it.config_hash = doc.value("config_hash", "");
    it.sandbox_hash = doc.value("sandbox_hash", "");
    it.query = doc.value("query", "");
    it.origin_city = doc.value("origin_city", "");
    it.city = doc.value("city", "");
    it.duration_days = doc.value("duration_days", 0);
    it.hotel_name = doc.value("hotel", "");
    it.arrival_leg = doc.value("arrival_transport", "");
    it.return_leg = doc.value("return_transport", "");
    if (!doc.contains("days") || !doc["days"].is_array())
        throw ParseError("itinerary: missing days array");
    try {
        for (const auto& d : doc["days"]) it.days.push_back(proposal_from_json(d));
    } catch (const SchemaError& e) {
        throw ParseError(std::string("itinerary: ") + e.what());
    }
    it.total_cost = doc.value("total_cost", 0.0);
    if (it.duration_days == 0) it.duration_days = static_cast<int>(it.days.size());
    return it;
}

std::string canonical_step_text(const Proposal& p) {
    std::string out;
    for (const auto& s : p.steps) {
        if (!out.empty()) out += "|";
        out += format_window(s.start, s.end) + " " + s.name;
    }
    return out;
}

std::string render_markdown(const Itinerary& it) {
    std::ostringstream out;
    for (size_t d = 0; d < it.days.size(); ++d) {
        const auto& day = it.days[d];
        out << "**" << day.day_label << " Itinerary";
        if (d == 0 && !it.origin_city.empty()) out << ": " << it.origin_city << " to " << it.city;
        out << "**\n\n";
        for (size_t i = 0; i < day.steps.size(); ++i) {
            const auto& s = day.steps[i];
            if (i) out << "---\n\n";
            out << "### " << format_clock(s.start) << "-" << format_clock(s.end) << " | " << s.name
                << "\n";
            if (!s.description.empty()) out << s.description << "\n";
            if (s.price) out << "- **Price**: ¥" << *s.price << "\n";
            out << "\n";
        }
        out << "**Total Daily Cost**: ¥" << day.daily_cost << "\n\n";
    }
    out << "**Total Trip Cost**: ¥" << it.total_cost << "\n";
    return out.str();
}

} // namespace tourplanner::ccot
