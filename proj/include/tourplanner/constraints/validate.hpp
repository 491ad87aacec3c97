#pragma once

#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace tourplanner::constraints {

struct Violation {
    std::string rule;
    std::string entity;
    std::string detail;
};

// The six binary indicators and their aggregates.
struct HardScore {
    int i_sandbox = 1;
    int i_comp = 1;
    int i_rest = 1;
    int i_attr = 1;
    int i_dur = 1;
    int i_time = 1;
    double s_feas = 1.0;  // (i_sandbox + i_comp) / 2
    double s_rat = 1.0;   // (i_rest + i_attr + i_dur + i_time) / 4
    double eta = 1.0;     // (s_feas + s_rat) / 2
    double r_hard = 2.0;  // s_feas + s_rat
    std::vector<Violation> violations;

    void finalize();
    json to_json() const;
};

struct DayContext {
    bool is_first = false;
    bool is_last = false;
    std::set<std::string> used_attraction_ids;  // from prior days
    std::set<std::string> used_restaurant_ids;
};

// Per-rule pass flags for one day plan. cluster_locality is advisory: it
// annotates but never fails the report.
struct RuleReport {
    bool chronology = true;         // sequential, non-overlapping
    bool transfer_duration = true;  // explicit local_transfer >= 30 min
    bool idle_gap = true;           // bare gaps <= 60 min (pre-transport gap exempt)
    bool day_end = true;            // everything ends by 22:30
    bool meal_windows = true;       // middle days: lunch 11:00-14:00, dinner 17:00-20:00
    bool meal_separation = true;    // middle days: starts >= 5 h apart
    bool no_repeats = true;         // within day and against prior days
    bool departure_buffer = true;   // 2 h before flights, 1 h before trains
    bool day_structure = true;      // day-1 / last-day framing, clean middle days
    bool entities_resolve = true;
    bool opening_hours = true;      // includes admission cutoff when present
    bool visit_duration = true;
    bool cluster_locality = true;   // advisory only
    std::vector<Violation> violations;

    bool hard_pass() const;
    json to_json() const;
};

RuleReport validate_proposal(const ccot::Proposal& p, const sandbox::Sandbox& sb,
                             const profile::UserProfile& prof, const DayContext& ctx);

HardScore hard_score(const ccot::Itinerary& it, const sandbox::Sandbox& sb,
                     const profile::UserProfile& prof);

// Step costs resolved from the sandbox plus one hotel night when
// night_price > 0. Throws UnresolvedEntityError for unknown names.
double day_cost(const ccot::Proposal& day, const sandbox::Sandbox& sb, const std::string& city,
                double night_price);

// Sum of transport, entrance, and meal prices plus price_per_night * (duration-1).
double total_cost(const ccot::Itinerary& it, const sandbox::Sandbox& sb);

} // namespace tourplanner::constraints
