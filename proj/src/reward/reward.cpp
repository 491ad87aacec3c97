#include "tourplanner/reward/reward.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/geo/geo.hpp"

#include <cmath>
#include <stdexcept>

namespace tourplanner::reward {

double budget_score(double cost, double budget) {
    if (budget <= 0) throw std::invalid_argument("budget_score: budget must be positive");
    if (cost < 0) throw std::invalid_argument("budget_score: cost must be nonnegative");
    if (cost <= budget) return cost / budget;
    return std::max(0.0, 1.0 - (cost - budget) / budget);
}

double route_score(double d_gen_km, double d_ref_km) {
    if (d_ref_km <= 0) throw std::invalid_argument("route_score: reference distance must be positive");
    if (d_gen_km < 0) throw std::invalid_argument("route_score: distance must be nonnegative");
    return std::exp(-std::max(0.0, d_gen_km / d_ref_km - 0.8));
}

double preference_score(double raw) {
    if (!std::isfinite(raw)) throw std::invalid_argument("preference_score: raw score must be finite");
    return std::tanh(raw / 6.0);
}

double gate(double eta, const GateConfig& cfg) {
    if (cfg.k <= 0 || cfg.tau <= 0 || cfg.tau >= 1)
        throw std::invalid_argument("gate: config out of range");
    return 1.0 / (1.0 + std::exp(-cfg.k * (eta - cfg.tau)));
}

RewardBreakdown total_reward(const constraints::HardScore& hard, const SoftScore& soft,
                             const GateConfig& cfg) {
    RewardBreakdown out;
    out.hard = hard;
    out.soft = soft;
    out.alpha = gate(hard.eta, cfg);
    out.total = hard.r_hard + out.alpha * soft.r_soft();
    return out;
}

json RewardBreakdown::to_json() const {
    return json{{"hard", hard.to_json()},
                {"soft",
                 json{{"s_budget", soft.s_budget},
                      {"s_route", soft.s_route},
                      {"s_model", soft.s_model},
                      {"r_soft", soft.r_soft()}}},
                {"alpha", alpha},
                {"total", total}};
}

RouteStats route_stats(const ccot::Itinerary& it, const sandbox::Sandbox& sb) {
    RouteStats stats;
    for (const auto& day : it.days) {
        std::vector<geo::GeoPoint> pois;
        for (const auto& s : day.steps) {
            if (s.type == ccot::ActivityType::Sightseeing) {
                if (const auto* a = sb.find_attraction(it.city, s.name))
                    pois.push_back({a->lat, a->lon});
            } else if (s.type == ccot::ActivityType::Meal) {
                if (const auto* r = sb.find_restaurant(it.city, s.name))
                    pois.push_back({r->lat, r->lon});
            }
        }
        std::vector<double> segments;
        for (size_t i = 1; i < pois.size(); ++i)
            segments.push_back(geo::haversine_km(pois[i - 1], pois[i]));
        if (!segments.empty()) {
            double sum = 0;
            for (double d : segments) {
                sum += d;
                stats.total_km += d;
            }
            stats.day_avg_km.push_back(sum / static_cast<double>(segments.size()));
        }
        stats.day_segments_km.push_back(std::move(segments));
    }
    if (stats.day_avg_km.empty())
        throw NoLocatedDaysError("route_stats: no day has two located POIs");
    double sum = 0;
    for (double d : stats.day_avg_km) sum += d;
    stats.d_avg_km = sum / static_cast<double>(stats.day_avg_km.size());
    return stats;
}

std::vector<double> group_advantages(const std::vector<double>& rewards) {
    if (rewards.size() < 2)
        throw std::invalid_argument("group_advantages: need at least two rollouts");
    double mean = 0;
    for (double r : rewards) mean += r;
    mean /= static_cast<double>(rewards.size());
    double var = 0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    var /= static_cast<double>(rewards.size());  // population variance
    double std_dev = std::sqrt(var);
    std::vector<double> advantages(rewards.size(), 0.0);
    if (std_dev < 1e-12) return advantages;
    for (size_t i = 0; i < rewards.size(); ++i) advantages[i] = (rewards[i] - mean) / std_dev;
    return advantages;
}

double seq_importance_ratio(const std::vector<double>& logp_new,
                            const std::vector<double>& logp_old) {
    if (logp_new.size() != logp_old.size())
        throw LengthMismatchError("seq_importance_ratio: sequences differ in length");
    if (logp_new.empty())
        throw std::invalid_argument("seq_importance_ratio: sequences must be non-empty");
    double sum = 0;
    for (size_t i = 0; i < logp_new.size(); ++i) sum += logp_new[i] - logp_old[i];
    return std::exp(sum / static_cast<double>(logp_new.size()));
}

double gspo_objective(const std::vector<double>& ratios, const std::vector<double>& advantages,
                      double eps_low, double eps_high) {
    if (ratios.size() != advantages.size())
        throw DimensionMismatchError("gspo_objective: ratios and advantages differ in length");
    if (ratios.empty()) throw std::invalid_argument("gspo_objective: empty batch");
    double sum = 0;
    for (size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] <= 0) throw std::invalid_argument("gspo_objective: ratios must be positive");
        double clipped = std::min(std::max(ratios[i], 1.0 - eps_low), 1.0 + eps_high);
        sum += std::min(ratios[i] * advantages[i], clipped * advantages[i]);
    }
    return sum / static_cast<double>(ratios.size());
}

} // namespace tourplanner::reward
