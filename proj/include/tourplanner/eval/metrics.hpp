#pragma once

#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/constraints/validate.hpp"
#include "tourplanner/providers/provider.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <optional>
#include <vector>

namespace tourplanner::eval {

struct PlanCase {
    std::string query;
    ccot::Itinerary generated;
    ccot::Itinerary reference;
};

PlanCase case_from_json(const json& doc);
json case_to_json(const PlanCase& c);

struct EvalConfig {
    double meal_price_widening = 0.5;   // profile meal range +-50%
    double budget_multiplier = 1.0;     // total cost <= multiplier * budget
    double route_ratio_limit = 1.5;     // final-pass route length cap
};

struct FeasibilityFlags {
    bool sandbox_ok = true;
    bool completeness_ok = true;
    bool departure_ok = true;
    bool return_ok = true;
    std::vector<bool> as_vector() const { return {sandbox_ok, completeness_ok, departure_ok, return_ok}; }
    bool all() const { return sandbox_ok && completeness_ok && departure_ok && return_ok; }
};

struct RationalityFlags {
    bool diverse_restaurants = true;
    bool reasonable_meal_prices = true;
    bool diverse_attractions = true;
    bool visit_duration = true;
    bool visit_time = true;
    bool budget_limit = true;
    std::vector<bool> as_vector() const {
        return {diverse_restaurants, reasonable_meal_prices, diverse_attractions,
                visit_duration,      visit_time,            budget_limit};
    }
    bool all() const {
        return diverse_restaurants && reasonable_meal_prices && diverse_attractions &&
               visit_duration && visit_time && budget_limit;
    }
};

FeasibilityFlags feasibility(const PlanCase& c, const sandbox::Sandbox& sb);
RationalityFlags rationality(const PlanCase& c, const sandbox::Sandbox& sb, const EvalConfig& cfg);

// micro: passed flags / total flags. macro: fraction of rows passing every flag.
std::pair<double, double> micro_macro(const std::vector<std::vector<bool>>& rows);

// D_avg(generated) / D_avg(reference).
double distance_ratio(const PlanCase& c, const sandbox::Sandbox& sb);

// Both flag families all-pass and total route length within the 1.5x cap.
bool final_pass(const PlanCase& c, const sandbox::Sandbox& sb, const EvalConfig& cfg);

struct MetricsReport {
    double feasibility_micro = 0.0;
    double feasibility_macro = 0.0;
    double rationality_micro = 0.0;
    double rationality_macro = 0.0;
    double avg_route_distance_ratio = 0.0;
    double final_pass_rate = 0.0;
    std::optional<double> final_surpassing_rate;
    int judged_cases = 0;
    int skipped_judgements = 0;
    json per_case = json::array();
    json to_json() const;
};

MetricsReport evaluate_cases(const std::vector<PlanCase>& cases, const sandbox::Sandbox& sb,
                             const EvalConfig& cfg, providers::Provider* judge = nullptr);

// Fraction of judged cases where the generated plan matches or exceeds the
// reference on the 1..5 scale. Failed judgements are skipped and the
// denominator adjusted.
double surpass_rate(const std::vector<PlanCase>& cases, providers::Provider& judge,
                    int* judged = nullptr, int* skipped = nullptr);

} // namespace tourplanner::eval
