#pragma once

#include <string>

namespace tourplanner::prompts {

// Marker substrings the deterministic mock keys on to dispatch a request.
// Each is a stable fragment of the corresponding system prompt.
inline constexpr const char* kMarkerExtract = "extract and organize the information";
inline constexpr const char* kMarkerInfer = "infer demands";
inline constexpr const char* kMarkerAgents = "Chief Travel Planner";
inline constexpr const char* kMarkerDayPlan = "detailed itinerary for";
inline constexpr const char* kMarkerReview = "Review all competing plans";
inline constexpr const char* kMarkerArbitrate = "COMMITTEE ARBITRATOR";
inline constexpr const char* kMarkerFixer = "travel plan validator & fixer";
inline constexpr const char* kMarkerJudge = "evaluating two travel plans";
inline constexpr const char* kMarkerSuggest = "supplement the candidate list";

std::string demand_extraction_system();
std::string demand_extraction_user(const std::string& query);

std::string demand_inference_system();
std::string demand_inference_user(const std::string& query, const std::string& transport_info,
                                  const std::string& hotel_prices_info, const std::string& meal_prices_info,
                                  double budget);

std::string build_agents_system();
std::string build_agents_user(const std::string& query);

std::string day_plan_system(const std::string& agent_profile_json, const std::string& day_label);
std::string day_plan_user(const std::string& given_info_json, const std::string& previous_days_plan,
                          const std::string& query);

std::string peer_review_system(const std::string& reviewer_profile_json);
std::string peer_review_user(const std::string& query, const std::string& plans_joined);

std::string arbitration_system(const std::string& day_label);
std::string arbitration_user(const std::string& critique_summary, const std::string& given_info_json,
                             const std::string& plans_joined, const std::string& query, double budget,
                             bool is_first_day, bool is_last_day, const std::string& previous_days_plan);

std::string fixer_system();
std::string fixer_user(const std::string& query, const std::string& initial_plan,
                       const std::string& given_info_json);

std::string judge_system();
std::string judge_user(const std::string& query, const std::string& plan_a, const std::string& plan_b);

std::string suggest_system();
std::string suggest_user(const std::string& profile_text, const std::string& attraction_names, int count);

} // namespace tourplanner::prompts
