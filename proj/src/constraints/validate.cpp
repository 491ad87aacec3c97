#include "tourplanner/constraints/validate.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/geo/geo.hpp"

#include <algorithm>
#include <cmath>

namespace tourplanner::constraints {

namespace {

constexpr Minutes kDayEndLimit = 22 * 60 + 30;
constexpr Minutes kLunchEarliest = 11 * 60;
constexpr Minutes kLunchLatest = 14 * 60;
constexpr Minutes kDinnerEarliest = 17 * 60;
constexpr Minutes kDinnerLatest = 20 * 60;
constexpr Minutes kMealSeparation = 5 * 60;
constexpr Minutes kMinTransfer = 30;
constexpr Minutes kMaxIdle = 60;
constexpr Minutes kFlightBuffer = 120;
constexpr Minutes kTrainBuffer = 60;
constexpr double kLocalityAdvisoryKm = 20.0;

using ccot::ActivityType;
using ccot::Proposal;
using ccot::Step;

Minutes buffer_for(const Step& step, const sandbox::TransportLeg* leg) {
    sandbox::TransportMode mode = sandbox::TransportMode::Flight;
    if (leg) mode = leg->mode;
    else if (step.mode) mode = *step.mode;
    return mode == sandbox::TransportMode::Flight ? kFlightBuffer : kTrainBuffer;
}

} // namespace

bool RuleReport::hard_pass() const {
    return chronology && transfer_duration && idle_gap && day_end && meal_windows &&
           meal_separation && no_repeats && departure_buffer && day_structure &&
           entities_resolve && opening_hours && visit_duration;
}

json RuleReport::to_json() const {
    json rules{{"chronology", chronology},
               {"transfer_duration", transfer_duration},
               {"idle_gap", idle_gap},
               {"day_end", day_end},
               {"meal_windows", meal_windows},
               {"meal_separation", meal_separation},
               {"no_repeats", no_repeats},
               {"departure_buffer", departure_buffer},
               {"day_structure", day_structure},
               {"entities_resolve", entities_resolve},
               {"opening_hours", opening_hours},
               {"visit_duration", visit_duration}};
    json advisory{{"cluster_locality", cluster_locality}};
    json vlist = json::array();
    for (const auto& v : violations)
        vlist.push_back(json{{"rule", v.rule}, {"entity", v.entity}, {"detail", v.detail}});
    return json{{"rules", rules},
                {"advisory", advisory},
                {"hard_pass", hard_pass()},
                {"violations", vlist}};
}

RuleReport validate_proposal(const Proposal& p, const sandbox::Sandbox& sb,
                             const profile::UserProfile& prof, const DayContext& ctx) {
    RuleReport r;
    const std::string& city = prof.explicit_demands.dest_city;
    auto fail = [&](bool RuleReport::*flag, const std::string& rule, const std::string& entity,
                    const std::string& detail) {
        r.*flag = false;
        r.violations.push_back({rule, entity, detail});
    };

    // Chronology.
    for (size_t i = 1; i < p.steps.size(); ++i) {
        if (p.steps[i].start < p.steps[i - 1].end) {
            fail(&RuleReport::chronology, "chronology", p.steps[i].name,
                 "overlaps or precedes the previous step");
        }
    }

    // Resolution (and per-step lookups reused below).
    std::vector<const sandbox::Attraction*> attraction_of(p.steps.size(), nullptr);
    std::vector<const sandbox::Restaurant*> restaurant_of(p.steps.size(), nullptr);
    std::vector<const sandbox::TransportLeg*> leg_of(p.steps.size(), nullptr);
    for (size_t i = 0; i < p.steps.size(); ++i) {
        const Step& s = p.steps[i];
        switch (s.type) {
            case ActivityType::Sightseeing:
                attraction_of[i] = sb.find_attraction(city, s.name);
                if (!attraction_of[i])
                    fail(&RuleReport::entities_resolve, "entities_resolve", s.name,
                         "attraction not in sandbox");
                break;
            case ActivityType::Meal:
                restaurant_of[i] = sb.find_restaurant(city, s.name);
                if (!restaurant_of[i])
                    fail(&RuleReport::entities_resolve, "entities_resolve", s.name,
                         "restaurant not in sandbox");
                break;
            case ActivityType::CheckIn:
            case ActivityType::CheckOut:
                if (!sb.find_hotel(city, s.name))
                    fail(&RuleReport::entities_resolve, "entities_resolve", s.name,
                         "hotel not in sandbox");
                break;
            case ActivityType::Transportation:
                leg_of[i] = sb.find_transport(s.name);
                if (!leg_of[i])
                    fail(&RuleReport::entities_resolve, "entities_resolve", s.name,
                         "transport leg not in sandbox");
                break;
            case ActivityType::LocalTransfer:
                break;
        }
    }

    // Transfer durations and idle gaps.
    for (const auto& s : p.steps) {
        if (s.type == ActivityType::LocalTransfer && s.end - s.start < kMinTransfer)
            fail(&RuleReport::transfer_duration, "transfer_duration", s.name,
                 "local transfer shorter than 30 minutes");
    }
    for (size_t i = 1; i < p.steps.size(); ++i) {
        Minutes gap = p.steps[i].start - p.steps[i - 1].end;
        if (gap > kMaxIdle && p.steps[i].type != ActivityType::Transportation)
            fail(&RuleReport::idle_gap, "idle_gap", p.steps[i].name,
                 "idle gap of " + std::to_string(gap) + " minutes before this step");
    }

    for (const auto& s : p.steps) {
        if (s.end > kDayEndLimit)
            fail(&RuleReport::day_end, "day_end", s.name, "activity ends after 22:30");
    }

    // Meal rules apply to full (middle) days only.
    if (!ctx.is_first && !ctx.is_last) {
        std::vector<const Step*> meals;
        for (const auto& s : p.steps)
            if (s.type == ActivityType::Meal) meals.push_back(&s);
        if (meals.size() != 2) {
            fail(&RuleReport::meal_windows, "meal_windows", p.day_label,
                 "full day needs exactly lunch and dinner, found " + std::to_string(meals.size()));
        } else {
            if (meals[0]->start < kLunchEarliest || meals[0]->start > kLunchLatest)
                fail(&RuleReport::meal_windows, "meal_windows", meals[0]->name,
                     "lunch must start between 11:00 and 14:00");
            if (meals[1]->start < kDinnerEarliest || meals[1]->start > kDinnerLatest)
                fail(&RuleReport::meal_windows, "meal_windows", meals[1]->name,
                     "dinner must start between 17:00 and 20:00");
            if (meals[1]->start - meals[0]->start < kMealSeparation)
                fail(&RuleReport::meal_separation, "meal_separation", meals[1]->name,
                     "lunch and dinner starts less than 5 hours apart");
        }
    }

    // Repeats, within the day and against prior days.
    {
        std::set<std::string> seen_attraction = ctx.used_attraction_ids;
        std::set<std::string> seen_restaurant = ctx.used_restaurant_ids;
        for (size_t i = 0; i < p.steps.size(); ++i) {
            if (attraction_of[i]) {
                if (!seen_attraction.insert(attraction_of[i]->id).second)
                    fail(&RuleReport::no_repeats, "no_repeats", p.steps[i].name,
                         "attraction repeated");
            }
            if (restaurant_of[i]) {
                if (!seen_restaurant.insert(restaurant_of[i]->id).second)
                    fail(&RuleReport::no_repeats, "no_repeats", p.steps[i].name,
                         "restaurant repeated");
            }
        }
    }

    // Departure buffer: nothing but the leg itself may end inside the window.
    for (size_t i = 0; i < p.steps.size(); ++i) {
        if (p.steps[i].type != ActivityType::Transportation) continue;
        Minutes depart = p.steps[i].start;
        Minutes buffer = buffer_for(p.steps[i], leg_of[i]);
        for (size_t j = 0; j < p.steps.size(); ++j) {
            if (j == i || p.steps[j].type == ActivityType::Transportation) continue;
            if (p.steps[j].end > depart - buffer && p.steps[j].end <= depart)
                fail(&RuleReport::departure_buffer, "departure_buffer", p.steps[j].name,
                     "activity ends within the pre-departure buffer");
        }
    }

    // Day structure.
    auto next_non_transfer = [&](size_t from) -> const Step* {
        for (size_t i = from; i < p.steps.size(); ++i)
            if (p.steps[i].type != ActivityType::LocalTransfer) return &p.steps[i];
        return nullptr;
    };
    auto prev_non_transfer = [&](size_t from) -> const Step* {
        for (size_t i = from; i-- > 0;)
            if (p.steps[i].type != ActivityType::LocalTransfer) return &p.steps[i];
        return nullptr;
    };
    if (ctx.is_first) {
        if (p.steps.empty() || p.steps.front().type != ActivityType::Transportation) {
            fail(&RuleReport::day_structure, "day_structure", p.day_label,
                 "first day must begin with arrival transportation");
        } else {
            const Step* after = next_non_transfer(1);
            if (!after || after->type != ActivityType::CheckIn)
                fail(&RuleReport::day_structure, "day_structure", p.day_label,
                     "arrival must be followed by hotel check-in");
        }
    }
    if (ctx.is_last) {
        if (p.steps.empty() || p.steps.back().type != ActivityType::Transportation) {
            fail(&RuleReport::day_structure, "day_structure", p.day_label,
                 "last day must end with return transportation");
        } else {
            const Step* before = prev_non_transfer(p.steps.size() - 1);
            if (!before || before->type != ActivityType::CheckOut)
                fail(&RuleReport::day_structure, "day_structure", p.day_label,
                     "return transportation must follow hotel check-out");
        }
    }
    if (!ctx.is_first && !ctx.is_last) {
        for (const auto& s : p.steps) {
            if (s.type == ActivityType::Transportation || s.type == ActivityType::CheckIn ||
                s.type == ActivityType::CheckOut)
                fail(&RuleReport::day_structure, "day_structure", s.name,
                     "intercity travel and hotel check-in/out belong to the first/last day");
        }
    }

    // Opening windows and visit durations for resolved attractions.
    for (size_t i = 0; i < p.steps.size(); ++i) {
        const auto* a = attraction_of[i];
        if (!a) continue;
        const Step& s = p.steps[i];
        if (s.start < a->open || s.end > a->close)
            fail(&RuleReport::opening_hours, "opening_hours", s.name,
                 "visit outside opening hours");
        else if (a->admission_end && s.start > *a->admission_end)
            fail(&RuleReport::opening_hours, "opening_hours", s.name,
                 "visit starts after last admission");
        double hours = minutes_to_hours(s.end - s.start);
        if (hours < a->min_hours - 1e-9 || hours > a->max_hours + 1e-9)
            fail(&RuleReport::visit_duration, "visit_duration", s.name,
                 "visit duration outside the recommended range");
    }

    // Advisory: consecutive located venues should stay within one urban area.
    {
        bool have_prev = false;
        double last_lat = 0, last_lon = 0;
        for (size_t i = 0; i < p.steps.size(); ++i) {
            double lat = 0, lon = 0;
            if (attraction_of[i]) {
                lat = attraction_of[i]->lat;
                lon = attraction_of[i]->lon;
            } else if (restaurant_of[i]) {
                lat = restaurant_of[i]->lat;
                lon = restaurant_of[i]->lon;
            } else {
                continue;
            }
            if (have_prev && geo::haversine_km({last_lat, last_lon}, {lat, lon}) > kLocalityAdvisoryKm) {
                r.cluster_locality = false;
                r.violations.push_back({"cluster_locality", p.steps[i].name,
                                        "long hop between consecutive venues (advisory)"});
            }
            last_lat = lat;
            last_lon = lon;
            have_prev = true;
        }
    }

    return r;
}

void HardScore::finalize() {
    s_feas = (i_sandbox + i_comp) / 2.0;
    s_rat = (i_rest + i_attr + i_dur + i_time) / 4.0;
    eta = (s_feas + s_rat) / 2.0;
    r_hard = s_feas + s_rat;
}

json HardScore::to_json() const {
    json v = json::array();
    for (const auto& x : violations)
        v.push_back(json{{"rule", x.rule}, {"entity", x.entity}, {"detail", x.detail}});
    return json{{"i_sandbox", i_sandbox}, {"i_comp", i_comp},   {"i_rest", i_rest},
                {"i_attr", i_attr},       {"i_dur", i_dur},     {"i_time", i_time},
                {"s_feas", s_feas},       {"s_rat", s_rat},     {"eta", eta},
                {"r_hard", r_hard},       {"violations", v}};
}

HardScore hard_score(const ccot::Itinerary& it, const sandbox::Sandbox& sb,
                     const profile::UserProfile& prof) {
    const std::string& city = prof.explicit_demands.dest_city;
    HardScore h;
    auto flag = [&](int HardScore::*indicator, const std::string& rule, const std::string& entity,
                    const std::string& detail) {
        h.*indicator = 0;
        h.violations.push_back({rule, entity, detail});
    };

    if (!it.hotel_name.empty() && !sb.find_hotel(city, it.hotel_name))
        flag(&HardScore::i_sandbox, "sandbox", it.hotel_name, "hotel not in sandbox");
    if (!it.arrival_leg.empty() && !sb.find_transport(it.arrival_leg))
        flag(&HardScore::i_sandbox, "sandbox", it.arrival_leg, "transport leg not in sandbox");
    if (!it.return_leg.empty() && !sb.find_transport(it.return_leg))
        flag(&HardScore::i_sandbox, "sandbox", it.return_leg, "transport leg not in sandbox");

    std::set<std::string> attraction_ids, restaurant_ids;
    for (const auto& day : it.days) {
        for (const auto& s : day.steps) {
            switch (s.type) {
                case ccot::ActivityType::Sightseeing: {
                    const auto* a = sb.find_attraction(city, s.name);
                    if (!a) {
                        flag(&HardScore::i_sandbox, "sandbox", s.name, "attraction not in sandbox");
                        break;
                    }
                    if (!attraction_ids.insert(a->id).second)
                        flag(&HardScore::i_attr, "attraction_diversity", s.name,
                             "attraction repeated");
                    double hours = minutes_to_hours(s.end - s.start);
                    if (hours < a->min_hours - 1e-9 || hours > a->max_hours + 1e-9)
                        flag(&HardScore::i_dur, "visit_duration", s.name,
                             "visit duration outside the recommended range");
                    if (s.start < a->open || s.end > a->close ||
                        (a->admission_end && s.start > *a->admission_end))
                        flag(&HardScore::i_time, "visit_time", s.name,
                             "visit outside opening hours");
                    break;
                }
                case ccot::ActivityType::Meal: {
                    const auto* r = sb.find_restaurant(city, s.name);
                    if (!r) {
                        flag(&HardScore::i_sandbox, "sandbox", s.name, "restaurant not in sandbox");
                        break;
                    }
                    if (!restaurant_ids.insert(r->id).second)
                        flag(&HardScore::i_rest, "restaurant_diversity", s.name,
                             "restaurant repeated");
                    break;
                }
                case ccot::ActivityType::CheckIn:
                case ccot::ActivityType::CheckOut:
                    if (!sb.find_hotel(city, s.name))
                        flag(&HardScore::i_sandbox, "sandbox", s.name, "hotel not in sandbox");
                    break;
                case ccot::ActivityType::Transportation:
                    if (!sb.find_transport(s.name))
                        flag(&HardScore::i_sandbox, "sandbox", s.name,
                             "transport leg not in sandbox");
                    if (!s.mode && !sb.find_transport(s.name))
                        flag(&HardScore::i_comp, "completeness", s.name,
                             "transport mode unspecified");
                    break;
                case ccot::ActivityType::LocalTransfer:
                    break;
            }
            // Completeness: priced steps must carry a price.
            bool needs_price = s.type == ccot::ActivityType::Transportation ||
                               s.type == ccot::ActivityType::Meal ||
                               s.type == ccot::ActivityType::Sightseeing ||
                               s.type == ccot::ActivityType::CheckIn;
            if (needs_price && !s.price)
                flag(&HardScore::i_comp, "completeness", s.name, "price unspecified");
        }
    }
    h.finalize();
    return h;
}

double day_cost(const ccot::Proposal& day, const sandbox::Sandbox& sb, const std::string& city,
                double night_price) {
    double cost = night_price;
    for (const auto& s : day.steps) {
        switch (s.type) {
            case ccot::ActivityType::Transportation: {
                const auto* leg = sb.find_transport(s.name);
                if (!leg) throw UnresolvedEntityError("day_cost: unknown transport " + s.name);
                cost += leg->price;
                break;
            }
            case ccot::ActivityType::Meal: {
                const auto* r = sb.find_restaurant(city, s.name);
                if (!r) throw UnresolvedEntityError("day_cost: unknown restaurant " + s.name);
                cost += r->avg_price;
                break;
            }
            case ccot::ActivityType::Sightseeing: {
                const auto* a = sb.find_attraction(city, s.name);
                if (!a) throw UnresolvedEntityError("day_cost: unknown attraction " + s.name);
                cost += a->entrance_fee;
                break;
            }
            default:
                break;
        }
    }
    return cost;
}

double total_cost(const ccot::Itinerary& it, const sandbox::Sandbox& sb) {
    double night_price = 0.0;
    if (!it.hotel_name.empty()) {
        const auto* h = sb.find_hotel(it.city, it.hotel_name);
        if (!h) throw UnresolvedEntityError("total_cost: unknown hotel " + it.hotel_name);
        night_price = h->price_per_night;
    }
    double total = 0.0;
    int nights = std::max(0, it.duration_days - 1);
    for (size_t d = 0; d < it.days.size(); ++d) {
        bool charge_night = static_cast<int>(d) < nights;
        total += day_cost(it.days[d], sb, it.city, charge_night ? night_price : 0.0);
    }
    return total;
}

} // namespace tourplanner::constraints
