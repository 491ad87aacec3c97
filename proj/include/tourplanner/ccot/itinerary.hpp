#pragma once

#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/core/time.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tourplanner::ccot {

enum class ActivityType { Transportation, CheckIn, CheckOut, Sightseeing, Meal, LocalTransfer };

std::string to_string(ActivityType t);
std::optional<ActivityType> activity_type_from_string(const std::string& s);

struct Step {
    Minutes start = 0;
    Minutes end = 0;
    ActivityType type = ActivityType::Sightseeing;
    std::string name;
    std::string description;
    std::optional<double> price;
    std::optional<sandbox::TransportMode> mode;  // transportation steps
};

// One day's plan. agent_id is empty for consensus/day documents and set for
// per-agent proposals.
struct Proposal {
    std::string agent_id;
    std::string day_label;
    double daily_cost = 0.0;
    std::vector<Step> steps;
};

struct Itinerary {
    std::string query;
    std::string origin_city;
    std::string city;
    int duration_days = 0;
    std::string hotel_name;
    std::string arrival_leg;
    std::string return_leg;
    std::vector<Proposal> days;
    double total_cost = 0.0;
    std::string sandbox_hash;  // optional provenance
    std::string config_hash;
};

json step_to_json(const Step& s);
json proposal_to_json(const Proposal& p);
json itinerary_to_json(const Itinerary& it);

// Throws SchemaError for malformed proposals (chat replies) and ParseError
// for malformed itinerary documents. Step chronology is NOT enforced here;
// that is the validator's job.
Step step_from_json(const json& doc);
Proposal proposal_from_json(const json& doc);
Itinerary itinerary_from_json(const json& doc);

// Compact "start-end name" serialization of the step list; the embedding
// input used for diversity weighting.
std::string canonical_step_text(const Proposal& p);

// Human-readable day-by-day rendering ("### HH:MM-HH:MM | Title" sections).
std::string render_markdown(const Itinerary& it);

} // namespace tourplanner::ccot
