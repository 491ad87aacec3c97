#include "tourplanner/prompts/templates.hpp"

#include "tourplanner/sandbox/model.hpp"

#include <sstream>

namespace tourplanner::prompts {

namespace {

std::string cuisine_options() {
    std::string out;
    const auto& vocab = sandbox::cuisine_vocabulary();
    for (size_t i = 0; i < vocab.size(); ++i) {
        if (i) out += "/";
        out += vocab[i];
    }
    return out;
}

// Shared scheduling rules included in every plan-producing prompt.
const char* kScheduleRules = R"(Rules:
1. Source Integrity: All attractions, restaurants, hotels, and transportations must be strictly selected only from their respective sections in the Given Information, not from any other descriptions or summaries.
2. Traffic and Hotel Information: Day 1 begins with arrival transportation, then transfer to hotel and check-in. The last day ends with hotel check-out then transfer to airport/station and return transportation. The check-in and check-out must each be listed as independent activities.
3. Single Cluster Commitment: Prefer attractions and restaurants within the same cluster to avoid long detours. Restaurants should be chosen near the preceding attraction, i.e., along the travel route.
4. Visit Time and Duration: Every visit must lie within opening_hours and the visit duration must be between the lower and upper bound of recommended duration (0.5 day = 5 hours; 1 day = 10 hours), particularly must not be shorter than the minimum.
5. Time and Sequence Constraint: All activities must be sequential and non-overlapping, with total active time between 7-8 hours (except for arrival/departure days). Activities must not end later than 22:30. All consecutive activities must be connected by a local_transfer activity, whose duration is estimated based on the distance between consecutive activities (at least 30 minutes). No idle gap exceeding 1 hour.
6. Meal Enforcement: Each day must contain lunch and dinner (except for arrival/departure days). Lunch must start between 11:00-14:00 and dinner between 17:00-20:00, and their start times must be at least 5 hours apart. Skipping lunch or dinner is not allowed; breakfast is not allowed.
7. Diversity: The same restaurant or attraction cannot be repeated within the same day or across different days, including those already used in previous days.
8. Budget Guard: Keep total cost within the user's expected range.
9. Preference: Balance cultural/natural/culinary exposure; prefer items that match the user's core motives.
10. It is not permissible for a half-day (morning or afternoon) to be completely empty, unless it is the departure day or the return day.
11. No activities will be scheduled 2 hours before flight departure and 1 hours before train departure.
12. activity type must be one of: ["transportation", "check-in", "check-out", "sightseeing", "meal", "local_transfer"].
)";

} // namespace

std::string demand_extraction_system() {
    std::ostringstream out;
    out << "You are a travel assistant. When a user provides a travel query, extract and organize the "
           "information in the following structured format. If certain details (except `Other Requirements`) "
           "are not explicitly mentioned, infer them based on the user's query and general travel knowledge. "
           "Ensure each field is enclosed in square brackets `[]` for easy parsing. If no `Other Requirements` "
           "or `Restaurant Type` are mentioned, leave it blank. If the departure or return time is specified "
           "as \"morning\" assume it means \"early morning\".\n\n"
        << "Structured Output Format:\n"
        << "1. Departure Day: [Day of the Week]\n"
        << "2. Return Day: [Day of the Week]\n"
        << "3. Departure Time: [early morning/late morning/afternoon/evening]\n"
        << "4. Return Time: [early morning/late morning/afternoon/evening]\n"
        << "5. Duration: [Number of Days]\n"
        << "6. Departure City: [City Name]\n"
        << "7. Destination City: [City Name]\n"
        << "8. Other Requirements: [List of Requirements]\n"
        << "9. Budget: [Budget]\n"
        << "10. Restaurant Type: [" << cuisine_options() << "]\n";
    return out.str();
}

std::string demand_extraction_user(const std::string& query) {
    return "Now respond to the user query based on the instructions above:\n" + query;
}

std::string demand_inference_system() {
    return "You are a travel assistant. Use the given statistics and the total budget to infer demands. "
           "Output exactly the two lines in the required format. No extra text.\n\n"
           "Decision Rules\n"
           "- Hotel Cost (best within budget):\n"
           "  1) Define nights N from the query, N = travel days - 1.\n"
           "  2) Per-night hotel budget = (Budget x 0.55) / N.\n"
           "  3) Categories priority: Luxury > Upscale > Midscale > Economy.\n"
           "  4) Choose the highest category c with Hotel Prices[c].min_price <= per-night hotel budget.\n"
           "  5) If none fits, choose the cheapest available category.\n\n"
           "- Meal Cost Range (allocated from total budget):\n"
           "  1) Per-day meal budget = (Budget x 0.35) / N.\n"
           "  2) Output a reasonable integer range based on budget and price statistics.\n"
           "  3) Make the range slightly broader (not too narrow) to allow more restaurant options.\n"
           "  4) The cost range can be adjusted based on the user's cuisine preference.\n\n"
           "Structured Output Format:\n"
           "1. Hotel Cost: [Luxury/ Upscale/ Midscale/ Economy]\n"
           "2. Meal Cost Range: [Minimum Cost, Maximum Cost]\n";
}

std::string demand_inference_user(const std::string& query, const std::string& transport_info,
                                  const std::string& hotel_prices_info, const std::string& meal_prices_info,
                                  double budget) {
    std::ostringstream out;
    out << "Now respond to the user query based on the above information:\n\n"
        << "User Query:\n" << query << "\n\n"
        << "Price Information:\n"
        << "Transportation Prices: " << transport_info << "\n"
        << "Hotel Prices: " << hotel_prices_info << "\n"
        << "Restaurant Meal Prices: " << meal_prices_info << "\n"
        << "Budget: " << budget << "\n";
    return out.str();
}

std::string build_agents_system() {
    return "You are a Chief Travel Planner. Analyze the user's travel query to identify core motives, "
           "constraints, and potential conflicts, then create a set of specialized agent roles in JSON ARRAY "
           "format. Each item must include fields:\n"
           "1. \"agent_id\"\n"
           "2. \"objective\" (measurable; e.g., \"minimize average leg distance (km)\", \"keep total cost <= "
           "budget\", \"maximize cultural-hours within opening hours\", \"ensure all meals within [min,max] CNY\")\n"
           "3. \"priorities\" (ranked list of rules)\n"
           "4. \"personality\" (short traits)\n\n"
           "Rules:\n"
           "1. Generate 4-6 agents depending on the complexity of the query. Fewer if simple, more if "
           "conflicting demands exist.\n"
           "2. Each objective MUST include a measurable component (hours, CNY, km, count, etc.).\n"
           "3. Avoid vague or filler goals such as \"relax\" or \"take it easy\". Instead, replace them with "
           "purposeful activities.\n"
           "4. At least 80% of daylight hours should have active or semi-active plans.\n"
           "5. STRICT JSON only. No comments, no Markdown.\n";
}

std::string build_agents_user(const std::string& query) {
    return "Now respond based on the user query:\n" + query;
}

std::string day_plan_system(const std::string& agent_profile_json, const std::string& day_label) {
    std::ostringstream out;
    out << "You are an Agent with the following profile: " << agent_profile_json << "\n"
        << "Your task is to generate a detailed itinerary for [" << day_label
        << "] that fulfills your own objectives and priorities while ensuring overall itinerary coherence, "
           "balance, and logical flow within the full trip plan. The output format is a strict JSON object "
           "with:\n"
           "1. agent_id\n"
           "2. day_label (the specific day this plan is for, e.g., \"Day 1\")\n"
           "3. daily_cost (the total calculated cost for this day in CNY, including transportation "
           "(flights/trains for departure/return days), entrance fees, meals, and hotel expenses for all "
           "nights except the final return date)\n"
           "4. plan (array of steps, where each step is an object with \"time\", \"activity type\", \"name\", "
           "\"description\", \"price\", and for transportation steps \"mode\")\n\n"
        << kScheduleRules;
    return out.str();
}

std::string day_plan_user(const std::string& given_info_json, const std::string& previous_days_plan,
                          const std::string& query) {
    std::ostringstream out;
    out << "## GIVEN_INFORMATION\n" << given_info_json << "\n\n"
        << "## Previous Days Plan\n" << previous_days_plan << "\n\n"
        << "## USER QUERY (Must align with it.)\n" << query << "\n\n"
        << "Now respond according to the GIVEN_INFORMATION, USER QUERY, and Rules above:";
    return out.str();
}

std::string peer_review_system(const std::string& reviewer_profile_json) {
    std::ostringstream out;
    out << "You are role-playing as a travel agent with this profile: " << reviewer_profile_json << "\n\n"
        << "Task: Review all competing plans. Judge each plan by your objectives/priorities.\n\n"
           "SCORE = BASELINE + PRIORITY_FIT + BONUSES - PENALTIES, then clamp to [-10, +10], integers only.\n"
           "- -10 only for a truly empty plan (no real content).\n"
           "- BASELINE = +2 (prevents universal negatives unless a plan is genuinely bad).\n\n"
           "A) PRIORITY_FIT (0-10): 0=irrelevant, 3=weak, 6=good, 8=strong, 10=excellent alignment with your "
           "priorities.\n"
           "B) BONUSES (0-6): +0-3 spatial coherence (clustered routing, minimal detours); +0-2 diversity "
           "within theme (non-redundant POIs/meals); +0-1 budget/comfort fit (only if your profile cares).\n"
           "C) PENALTIES (Minor = -0.5, Major = -1, Critical = -1.5; sum all): day-structure violations, "
           "overlapping or out-of-order activities, idle gaps over 1 hour, missing transfers, meal-window "
           "violations.\n\n"
           "Your output format must be a STRICT JSON object where keys are the \"agent_id\" of the plans you "
           "reviewed. For each plan, provide:\n"
           "1. \"score\": integer [-10, 10]\n"
           "2. \"critique\": a short string (max 30 words) explaining the main flaw or strength.\n";
    return out.str();
}

std::string peer_review_user(const std::string& query, const std::string& plans_joined) {
    std::ostringstream out;
    out << "Must align with user query: " << query << "\n\n"
        << "--- ALL COMPETING PLANS ---\n" << plans_joined;
    return out.str();
}

std::string arbitration_system(const std::string& day_label) {
    std::ostringstream out;
    out << "You are the COMMITTEE ARBITRATOR. Fuse multiple agents' day plans into ONE realistic, feasible, "
           "and elegant itinerary for [" << day_label << "].\n"
        << "Use ONLY items from Given Information (transport, attractions, restaurants, hotels). Do NOT "
           "invent names.\n"
        << "daily_cost: the total calculated cost for this day in CNY, including transportation "
           "(flights/trains for departure/return days), entrance fees, meals, and hotel expenses for all "
           "nights except the final return date.\n"
        << "Output a strict JSON object with day_label, daily_cost, and plan (array of steps with \"time\", "
           "\"activity type\", \"name\", \"description\", \"price\", and for transportation steps \"mode\").\n\n"
        << kScheduleRules
        << "\nCRITICAL ROUTING INSTRUCTION:\n"
           "1. Maintain the geographic sequence found in the best-rated candidate plan. Do not rearrange the "
           "order of locations arbitrarily, as this increases travel distance.\n"
           "2. Select the specific POIs (attractions/restaurants) that maximize the consensus score, but keep "
           "them in the logical time slots.\n"
           "3. If combining one plan's morning and another's afternoon, ensure the transition (local_transfer) "
           "is geographically sensible.\n";
    return out.str();
}

std::string arbitration_user(const std::string& critique_summary, const std::string& given_info_json,
                             const std::string& plans_joined, const std::string& query, double budget,
                             bool is_first_day, bool is_last_day, const std::string& previous_days_plan) {
    std::ostringstream out;
    out << "### PEER REVIEW INSIGHTS\n" << critique_summary << "\n\n"
        << "### INPUTS\n\n"
        << "Given Information: " << given_info_json << "\n"
        << "Proposals (JSON): " << plans_joined << "\n"
        << "User Query: " << query << "\n"
        << "Budget: " << budget << "\n"
        << "Is First Day?: " << (is_first_day ? "yes" : "no") << "\n"
        << "Is Last Day?: " << (is_last_day ? "yes" : "no") << "\n"
        << "Previous days' plan: " << previous_days_plan << "\n";
    return out.str();
}

std::string fixer_system() {
    std::ostringstream out;
    out << "You are a strict travel plan validator & fixer.\n\n"
           "Your ONLY job: produce a fixed day plan as a strict JSON object with day_label, daily_cost, and "
           "plan (array of steps with \"time\", \"activity type\", \"name\", \"description\", \"price\", and "
           "for transportation steps \"mode\"). Output the JSON only.\n\n"
           "Hard Constraints (all must pass)\n"
        << kScheduleRules
        << "\nRepair Strategy (minimal)\n"
           "- Replace any non-compliant item with a compliant alternative (prefer same-cluster options).\n"
           "- If replacement is impossible, drop the slot and tighten/shift neighboring items while staying "
           "within opening hours and recommended durations.\n"
           "- Always enforce restaurant and attraction diversity, and time continuity.\n";
    return out.str();
}

std::string fixer_user(const std::string& query, const std::string& initial_plan,
                       const std::string& given_info_json) {
    std::ostringstream out;
    out << "USER_QUERY:\n" << query << "\n\n"
        << "INITIAL_PLAN:\n" << initial_plan << "\n\n"
        << "GIVEN_INFO:\n" << given_info_json << "\n";
    return out.str();
}

std::string judge_system() {
    return "You are an AI assistant evaluating two travel plans based on the following criteria:\n\n"
           "- Experiences: consider both variety and depth; immersive, well-planned experiences that align "
           "with traveler interests should be recognized.\n"
           "- Itinerary Intensity: match the traveler's desired intensity; no half-day (morning or afternoon) "
           "completely empty unless it is the arrival or departure day.\n"
           "- Cuisine: suitability of dining choices to stated preferences, including cuisine category and "
           "budget alignment.\n"
           "- Accommodations: quality, comfort, and fit with stated category and budget range.\n"
           "- Transportation: practicality of departure and return times, convenience, cost.\n"
           "- Total Budget Consideration: staying within budget is essential; justified premium experiences "
           "are viewed positively.\n"
           "- Day structure, sequencing, meal windows, and diversity of venues.\n\n"
           "Scoring Scale (Out of 5)\n"
           "5 (Excellent): exceeds expectations, perfectly aligned with all user preferences.\n"
           "4 (Good): largely meets the user's needs with minor gaps.\n"
           "3 (Average): partially satisfies the query; lacks depth or personalization.\n"
           "2 (Poor): barely meets expectations, significant gaps.\n"
           "1 (Very Poor): fails to address the query.\n\n"
           "Output format:\n"
           "#### Comparative Analysis:\n"
           "[analysis text]\n\n"
           "#### Scoring Results:\n"
           "{ \"Personalization Evaluation\": { \"Scores\": { \"Plan A\": X, \"Plan B\": Y } } }\n";
}

std::string judge_user(const std::string& query, const std::string& plan_a, const std::string& plan_b) {
    std::ostringstream out;
    out << "### Input\n"
        << "- Query: " << query << "\n"
        << "- Plan A: " << plan_a << "\n"
        << "- Plan B: " << plan_b << "\n";
    return out.str();
}

std::string suggest_system() {
    return "You are a travel assistant. Your task is to supplement the candidate list by suggesting "
           "attractions that align with the user's preferences. Choose strictly from the provided attraction "
           "names; do not invent names. Reply with a JSON array of attraction name strings.\n";
}

std::string suggest_user(const std::string& profile_text, const std::string& attraction_names, int count) {
    std::ostringstream out;
    out << "User preferences:\n" << profile_text << "\n\n"
        << "Available attractions:\n" << attraction_names << "\n\n"
        << "Suggest up to " << count << " attractions from the list above.";
    return out.str();
}

} // namespace tourplanner::prompts
