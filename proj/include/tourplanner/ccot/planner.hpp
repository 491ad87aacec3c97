#pragma once

#include "tourplanner/ccot/agents.hpp"
#include "tourplanner/ccot/arbitration.hpp"
#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/constraints/validate.hpp"
#include "tourplanner/geo/geo.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/providers/provider.hpp"
#include "tourplanner/recall/recall.hpp"

#include <optional>

namespace tourplanner::ccot {

struct ProviderBundle {
    providers::ProviderPtr chat;
    providers::ProviderPtr embed;
    providers::ProviderPtr reward;
    providers::ProviderPtr judge;
};

struct CcotConfig {
    int team_min = 4;
    int team_max = 6;
    int top_k = 3;
    double diversity_smoothing = 0.01;
    int structured_retries = 2;
    geo::ClusterConfig cluster;     // min_clusters is set to the trip duration
    bool use_provider_extraction = false;
};

// Per-day planning view: recall candidates with cluster labels, minus
// everything already committed on earlier days.
struct PlanningContext {
    int day_index = 1;  // 1-based
    int duration = 1;
    bool is_first = true;
    bool is_last = true;
    std::string day_label;
    std::vector<sandbox::Attraction> attractions;
    std::vector<sandbox::Restaurant> restaurants;
    std::optional<sandbox::Hotel> hotel;
    std::vector<sandbox::TransportLeg> arrival_legs;
    std::vector<sandbox::TransportLeg> return_legs;
    std::vector<Proposal> prior_days;
    constraints::DayContext validation;

    json given_info(const profile::UserProfile& prof) const;
    json prior_days_json() const;
};

Proposal generate_skeleton(const PlanningContext& ctx, const profile::UserProfile& prof,
                           providers::Provider& chat, const sandbox::Sandbox& sb, int retries);

// Invalid refinements are not errors: the returned optional is empty and the
// failure reason is reported through `reason`.
std::optional<Proposal> refine_proposal(const AgentSpec& agent, const Proposal& skeleton,
                                        const PlanningContext& ctx,
                                        const profile::UserProfile& prof,
                                        providers::Provider& chat, const sandbox::Sandbox& sb,
                                        int retries, std::string& reason);

// Arbitrated synthesis of the winners; one repair round on validation
// failure, then the top-ranked winner verbatim.
Proposal synthesize_day(const std::vector<Proposal>& winners,
                        const std::vector<std::string>& winner_critiques,
                        const PlanningContext& ctx, const profile::UserProfile& prof,
                        providers::Provider& chat, const sandbox::Sandbox& sb, int retries,
                        bool& used_fallback);

struct PlanOutcome {
    Itinerary itinerary;
    std::vector<ArbitrationRecord> records;
    profile::UserProfile profile;
    recall::CandidateSet candidates;
    constraints::HardScore final_score;
    std::vector<AgentSpec> team;
};

PlanOutcome plan_trip(const std::string& query, const sandbox::Sandbox& sb,
                      const ProviderBundle& providers, const CcotConfig& cfg);

} // namespace tourplanner::ccot
