#pragma once

#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/constraints/validate.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <vector>

namespace tourplanner::reward {

struct GateConfig {
    double tau = 0.75;
    double k = 28.0;
};

struct SoftScore {
    double s_budget = 0.0;  // 0..1
    double s_route = 0.0;   // 0..1
    double s_model = 0.0;   // -1..1
    double r_soft() const { return s_budget + s_route + s_model; }
};

struct RewardBreakdown {
    constraints::HardScore hard;
    SoftScore soft;
    double alpha = 0.0;
    double total = 0.0;
    json to_json() const;
};

// C <= B rewards utilization (C/B); overspending decays linearly to zero.
double budget_score(double cost, double budget);

// exp(-max(0, d_gen/d_ref - 0.8)); 1.0 for any ratio up to 0.8.
double route_score(double d_gen_km, double d_ref_km);

// tanh(raw / 6); raw reward-model outputs live around +-10.
double preference_score(double raw);

// Sigmoid gate alpha(eta) = 1 / (1 + exp(-k (eta - tau))).
double gate(double eta, const GateConfig& cfg);

// R = R_hard + alpha(eta) * R_soft, all intermediates retained.
RewardBreakdown total_reward(const constraints::HardScore& hard, const SoftScore& soft,
                             const GateConfig& cfg);

struct RouteStats {
    std::vector<std::vector<double>> day_segments_km;
    std::vector<double> day_avg_km;  // days with >= 2 located POIs
    double d_avg_km = 0.0;
    double total_km = 0.0;
};

// Located POIs are the day's sightseeing and meal venues in step order.
// Days with fewer than two located POIs do not contribute to the mean.
RouteStats route_stats(const ccot::Itinerary& it, const sandbox::Sandbox& sb);

// --- group-relative policy math --------------------------------------------

// (r_i - mean) / population std; all zeros when std < 1e-12. Needs G >= 2.
std::vector<double> group_advantages(const std::vector<double>& rewards);

// exp(mean(logp_new - logp_old)); the length-normalized sequence ratio.
double seq_importance_ratio(const std::vector<double>& logp_new,
                            const std::vector<double>& logp_old);

// Mean over rollouts of min(r*A, clip(r, 1-eps_low, 1+eps_high)*A).
double gspo_objective(const std::vector<double>& ratios, const std::vector<double>& advantages,
                      double eps_low = 0.0003, double eps_high = 0.0004);

} // namespace tourplanner::reward
