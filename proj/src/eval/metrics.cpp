#include "tourplanner/eval/metrics.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/reward/reward.hpp"

#include <cmath>

namespace tourplanner::eval {

PlanCase case_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("case: not an object");
    PlanCase c;
    c.query = doc.value("query", "");
    if (c.query.empty()) throw ParseError("case: missing query");
    if (!doc.contains("generated") || !doc.contains("reference"))
        throw ParseError("case: needs generated and reference itineraries");
    c.generated = ccot::itinerary_from_json(doc["generated"]);
    c.reference = ccot::itinerary_from_json(doc["reference"]);
    if (!c.generated.city.empty() && !c.reference.city.empty() &&
        c.generated.city != c.reference.city)
        throw ParseError("case: generated and reference plans target different cities");
    return c;
}

json case_to_json(const PlanCase& c) {
    return json{{"query", c.query},
                {"generated", ccot::itinerary_to_json(c.generated)},
                {"reference", ccot::itinerary_to_json(c.reference)}};
}

namespace {

struct LegCheck {
    bool found = false;
    const sandbox::TransportLeg* leg = nullptr;
};

LegCheck first_transport(const ccot::Itinerary& it, const sandbox::Sandbox& sb, bool from_back) {
    LegCheck out;
    if (it.days.empty()) return out;
    const auto& day = from_back ? it.days.back() : it.days.front();
    if (from_back) {
        for (auto s = day.steps.rbegin(); s != day.steps.rend(); ++s) {
            if (s->type == ccot::ActivityType::Transportation) {
                out.found = true;
                out.leg = sb.find_transport(s->name);
                return out;
            }
        }
    } else {
        for (const auto& s : day.steps) {
            if (s.type == ccot::ActivityType::Transportation) {
                out.found = true;
                out.leg = sb.find_transport(s.name);
                return out;
            }
        }
    }
    return out;
}

} // namespace

FeasibilityFlags feasibility(const PlanCase& c, const sandbox::Sandbox& sb) {
    auto prof = profile::build_profile(c.query, sb);
    auto hard = constraints::hard_score(c.generated, sb, prof);

    FeasibilityFlags flags;
    flags.sandbox_ok = hard.i_sandbox == 1;
    flags.completeness_ok = hard.i_comp == 1;

    auto arrival = first_transport(c.generated, sb, false);
    flags.departure_ok = arrival.found && arrival.leg &&
                         arrival.leg->origin_city == prof.explicit_demands.origin_city &&
                         arrival.leg->dest_city == prof.explicit_demands.dest_city &&
                         arrival.leg->day_slot == prof.explicit_demands.departure_slot;
    auto back = first_transport(c.generated, sb, true);
    flags.return_ok = back.found && back.leg &&
                      back.leg->origin_city == prof.explicit_demands.dest_city &&
                      back.leg->dest_city == prof.explicit_demands.origin_city &&
                      back.leg->day_slot == prof.explicit_demands.return_slot;
    return flags;
}

RationalityFlags rationality(const PlanCase& c, const sandbox::Sandbox& sb, const EvalConfig& cfg) {
    auto prof = profile::build_profile(c.query, sb);
    auto hard = constraints::hard_score(c.generated, sb, prof);

    RationalityFlags flags;
    flags.diverse_restaurants = hard.i_rest == 1;
    flags.diverse_attractions = hard.i_attr == 1;
    flags.visit_duration = hard.i_dur == 1;
    flags.visit_time = hard.i_time == 1;

    double lo = prof.inferred.meal_min * (1.0 - cfg.meal_price_widening);
    double hi = prof.inferred.meal_max * (1.0 + cfg.meal_price_widening);
    for (const auto& day : c.generated.days) {
        for (const auto& s : day.steps) {
            if (s.type != ccot::ActivityType::Meal) continue;
            const auto* r = sb.find_restaurant(prof.explicit_demands.dest_city, s.name);
            if (!r || r->avg_price < lo || r->avg_price > hi) flags.reasonable_meal_prices = false;
        }
    }
    try {
        flags.budget_limit = constraints::total_cost(c.generated, sb) <=
                             cfg.budget_multiplier * prof.explicit_demands.budget;
    } catch (const UnresolvedEntityError&) {
        flags.budget_limit = false;
    }
    return flags;
}

std::pair<double, double> micro_macro(const std::vector<std::vector<bool>>& rows) {
    if (rows.empty()) throw std::invalid_argument("micro_macro: no rows");
    size_t flags_total = 0, flags_passed = 0, rows_passed = 0;
    for (const auto& row : rows) {
        bool all = true;
        for (bool f : row) {
            flags_total++;
            if (f) flags_passed++;
            else all = false;
        }
        if (all && !row.empty()) rows_passed++;
    }
    if (flags_total == 0) throw std::invalid_argument("micro_macro: rows have no flags");
    return {static_cast<double>(flags_passed) / static_cast<double>(flags_total),
            static_cast<double>(rows_passed) / static_cast<double>(rows.size())};
}

double distance_ratio(const PlanCase& c, const sandbox::Sandbox& sb) {
    auto gen = reward::route_stats(c.generated, sb);
    auto ref = reward::route_stats(c.reference, sb);
    return gen.d_avg_km / ref.d_avg_km;
}

bool final_pass(const PlanCase& c, const sandbox::Sandbox& sb, const EvalConfig& cfg) {
    if (!feasibility(c, sb).all()) return false;
    if (!rationality(c, sb, cfg).all()) return false;
    try {
        auto gen = reward::route_stats(c.generated, sb);
        auto ref = reward::route_stats(c.reference, sb);
        return gen.total_km <= cfg.route_ratio_limit * ref.total_km;
    } catch (const NoLocatedDaysError&) {
        return false;
    }
}

double surpass_rate(const std::vector<PlanCase>& cases, providers::Provider& judge, int* judged,
                    int* skipped) {
    int ok = 0, surpassed = 0, failed = 0;
    for (const auto& c : cases) {
        try {
            auto verdict = judge.judge_pair(c.query, ccot::itinerary_to_json(c.generated).dump(),
                                            ccot::itinerary_to_json(c.reference).dump());
            ok++;
            if (verdict.score_a >= verdict.score_b) surpassed++;
        } catch (const Error&) {
            failed++;  // provider errors skip the case, denominator adjusted
        }
    }
    if (judged) *judged = ok;
    if (skipped) *skipped = failed;
    return ok == 0 ? 0.0 : static_cast<double>(surpassed) / static_cast<double>(ok);
}

json MetricsReport::to_json() const {
    json j{{"conventions",
            "micro = passed flags / total flags; macro = plans passing all flags; surpassing uses "
            "a tie-inclusive >= comparison"},
           {"feasibility", json{{"micro", feasibility_micro}, {"macro", feasibility_macro}}},
           {"rationality", json{{"micro", rationality_micro}, {"macro", rationality_macro}}},
           {"avg_route_distance_ratio", avg_route_distance_ratio},
           {"final_pass_rate", final_pass_rate},
           {"per_case", per_case}};
    if (final_surpassing_rate) {
        j["final_surpassing_rate"] = *final_surpassing_rate;
        j["judged_cases"] = judged_cases;
        j["skipped_judgements"] = skipped_judgements;
    }
    return j;
}

MetricsReport evaluate_cases(const std::vector<PlanCase>& cases, const sandbox::Sandbox& sb,
                             const EvalConfig& cfg, providers::Provider* judge) {
    if (cases.empty()) throw std::invalid_argument("evaluate_cases: no cases");
    MetricsReport report;
    std::vector<std::vector<bool>> feas_rows, rat_rows;
    double ratio_sum = 0.0;
    int ratio_count = 0, passes = 0;

    for (const auto& c : cases) {
        auto f = feasibility(c, sb);
        auto r = rationality(c, sb, cfg);
        feas_rows.push_back(f.as_vector());
        rat_rows.push_back(r.as_vector());
        json row{{"query", c.query},
                 {"feasibility",
                  json{{"sandbox", f.sandbox_ok},
                       {"completeness", f.completeness_ok},
                       {"departure", f.departure_ok},
                       {"return", f.return_ok}}},
                 {"rationality",
                  json{{"diverse_restaurants", r.diverse_restaurants},
                       {"reasonable_meal_prices", r.reasonable_meal_prices},
                       {"diverse_attractions", r.diverse_attractions},
                       {"visit_duration", r.visit_duration},
                       {"visit_time", r.visit_time},
                       {"budget_limit", r.budget_limit}}}};
        try {
            double ratio = distance_ratio(c, sb);
            row["route_distance_ratio"] = ratio;
            ratio_sum += ratio;
            ratio_count++;
        } catch (const Error& e) {
            row["route_distance_ratio_error"] = e.what();
        }
        bool fp = final_pass(c, sb, cfg);
        row["final_pass"] = fp;
        if (fp) passes++;
        report.per_case.push_back(std::move(row));
    }

    auto [fm, fM] = micro_macro(feas_rows);
    report.feasibility_micro = fm;
    report.feasibility_macro = fM;
    auto [rm, rM] = micro_macro(rat_rows);
    report.rationality_micro = rm;
    report.rationality_macro = rM;
    report.avg_route_distance_ratio = ratio_count ? ratio_sum / ratio_count : 0.0;
    report.final_pass_rate = static_cast<double>(passes) / static_cast<double>(cases.size());
    if (judge) {
        int judged = 0, skipped = 0;
        report.final_surpassing_rate = surpass_rate(cases, *judge, &judged, &skipped);
        report.judged_cases = judged;
        report.skipped_judgements = skipped;
    }
    return report;
}

} // namespace tourplanner::eval
