#pragma once

#include "tourplanner/providers/provider.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tourplanner::profile {

struct ExplicitDemands {
    std::string departure_day;  // weekday, carried as metadata
    std::string return_day;
    sandbox::DaySlot departure_slot = sandbox::DaySlot::EarlyMorning;
    sandbox::DaySlot return_slot = sandbox::DaySlot::Evening;
    int duration_days = 0;
    std::string origin_city;
    std::string dest_city;
    std::vector<std::string> other_requirements;
    double budget = 0.0;
    std::vector<std::string> cuisine_prefs;  // canonical vocabulary entries
};

struct InferredPrefs {
    sandbox::HotelCategory hotel_category = sandbox::HotelCategory::Economy;
    double meal_min = 0.0;  // per-meal bounds
    double meal_max = 0.0;
};

struct CityPriceStats {
    std::map<sandbox::HotelCategory, double> hotel_min_price;
    double meal_q25 = 0.0;
    double meal_q50 = 0.0;
    double meal_q75 = 0.0;
    std::optional<std::pair<double, double>> transport_price_range;
};

struct UserProfile {
    ExplicitDemands explicit_demands;
    InferredPrefs inferred;
    std::string raw_query;
};

// Rule-based parser for the benchmark's templated query phrasing. Throws
// ExtractionError when cities, duration or budget cannot be recovered. When a
// provider is given, the extraction prompt is sent first and its bracketed
// block parsed; the rule-based path is the fallback.
ExplicitDemands extract_demands(const std::string& query, providers::Provider* provider = nullptr);

// Inverse of the rule-based parser; used to synthesize benchmark-style queries.
std::string render_query(const ExplicitDemands& d);

// Parse the "Field: [value]" block produced by the extraction prompt.
ExplicitDemands parse_bracketed_block(const std::string& text);

// Nights N = duration - 1 (must be >= 1). Hotel tier: highest category whose
// min price fits budget*0.55/N, else the cheapest available. Meal bounds:
// [0.15, 0.45] * (budget*0.35/N).
InferredPrefs infer_preferences(const ExplicitDemands& d, const CityPriceStats& stats);

CityPriceStats city_stats(const sandbox::Sandbox& sb, const std::string& city);

UserProfile build_profile(const std::string& query, const sandbox::Sandbox& sb,
                          providers::Provider* provider = nullptr);

} // namespace tourplanner::profile
