#include "tourplanner/providers/mock_planner.hpp"

#include "tourplanner/core/rng.hpp"
#include "tourplanner/core/time.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace tourplanner::providers {

namespace {

struct CandidateAttraction {
    std::string name;
    double fee = 0.0;
    double popularity = 0.0;
    double rating = 0.0;
    int cluster = -1;
    Minutes open = 0;
    Minutes close = 0;
    std::optional<Minutes> admission_end;
    Minutes visit_minutes = 0;  // minimum recommended duration
    double sort_key = 0.0;
};

struct CandidateRestaurant {
    std::string name;
    double price = 0.0;
    double rating = 0.0;
    int cluster = -1;
    double sort_key = 0.0;
};

struct Leg {
    std::string id;
    std::string mode;
    Minutes depart = 0;
    Minutes arrive = 0;
    double price = 0.0;
    std::string day_slot;
};

enum class Persona { Neutral, Budget, Culture, Foodie, Nature, Pace };

Persona persona_of(const std::string& agent_id) {
    auto has = [&](const char* w) { return agent_id.find(w) != std::string::npos; };
    if (has("budget") || has("cost")) return Persona::Budget;
    if (has("cultur") || has("heritage") || has("histor")) return Persona::Culture;
    if (has("food") || has("gourmet") || has("culinary")) return Persona::Foodie;
    if (has("nature") || has("scenic") || has("outdoor")) return Persona::Nature;
    if (has("pace") || has("relax") || has("logistic") || has("route")) return Persona::Pace;
    return Persona::Neutral;
}

json step_json(Minutes start, Minutes end, const std::string& type, const std::string& name,
               const std::string& description) {
    return json{{"time", format_window(start, end)},
                {"activity type", type},
                {"name", name},
                {"description", description}};
}

struct DayBuilder {
    std::vector<json> steps;
    double cost = 0.0;
    Minutes cursor = 0;  // end of the last step

    void add(json step, double price_value, bool carries_price = true) {
        if (carries_price) step["price"] = price_value;
        cost += price_value;
        auto window = parse_window(step["time"].get<std::string>());
        cursor = window->second;
        steps.push_back(std::move(step));
    }

    void add_transfer(Minutes start, Minutes end, const std::string& description) {
        steps.push_back(step_json(start, end, "local_transfer", "Local transfer", description));
        cursor = end;
    }
};

} // namespace

json plan_day(const json& given_info, const json& agent_profile, uint64_t variation_seed) {
    const json& day = given_info.at("day");
    const bool is_first = day.value("is_first", false);
    const bool is_last = day.value("is_last", false);
    const std::string day_label = day.value("label", "Day 1");
    const std::string agent_id = agent_profile.value("agent_id", "base");
    const Persona persona = persona_of(agent_id);
    Rng rng(variation_seed ^ fnv1a64(agent_id));

    auto jitter5 = [&](int slots) { return static_cast<Minutes>(rng.uniform_int(0, slots) * 5); };

    // Candidate attractions, ranked by persona preference with a small jitter.
    std::vector<CandidateAttraction> attractions;
    for (const auto& a : given_info.value("attractions", json::array())) {
        CandidateAttraction c;
        c.name = a.at("name").get<std::string>();
        c.fee = a.value("entrance_fee", 0.0);
        c.popularity = a.value("popularity", 0.0);
        c.rating = a.value("rating", 0.0);
        c.cluster = a.value("cluster", -1);
        auto window = parse_window(a.at("opening_hours").get<std::string>());
        if (!window) continue;
        c.open = window->first;
        c.close = window->second;
        if (a.contains("admission_end")) {
            if (auto ae = parse_clock(a["admission_end"].get<std::string>())) c.admission_end = *ae;
        }
        c.visit_minutes = static_cast<Minutes>(std::lround(a.value("min_hours", 1.0) * 60.0));
        std::string grade = a.value("grade", "none");
        double grade_bonus = grade == "5A" ? 30.0 : grade == "4A" ? 15.0 : 0.0;
        switch (persona) {
            case Persona::Budget: c.sort_key = -c.fee * 2.0 + c.popularity * 0.1; break;
            case Persona::Culture: c.sort_key = grade_bonus * 2.0 + c.popularity; break;
            case Persona::Nature: c.sort_key = c.rating * 20.0 + c.popularity * 0.5; break;
            default: c.sort_key = c.popularity + grade_bonus; break;
        }
        c.sort_key += rng.uniform_real(0.0, 10.0);
        attractions.push_back(std::move(c));
    }
    std::stable_sort(attractions.begin(), attractions.end(),
                     [](const auto& x, const auto& y) { return x.sort_key > y.sort_key; });
    // Keep one day inside one cluster where possible.
    if (!attractions.empty()) {
        int anchor_cluster = attractions.front().cluster;
        std::stable_sort(attractions.begin(), attractions.end(), [&](const auto& x, const auto& y) {
            return (x.cluster == anchor_cluster) > (y.cluster == anchor_cluster);
        });
    }

    double meal_lo = 0.0, meal_hi = 1e9;
    if (given_info.contains("meal_range") && given_info["meal_range"].is_array()) {
        meal_lo = given_info["meal_range"][0].get<double>();
        meal_hi = given_info["meal_range"][1].get<double>();
    }
    std::vector<CandidateRestaurant> restaurants;
    for (const auto& r : given_info.value("restaurants", json::array())) {
        CandidateRestaurant c;
        c.name = r.at("name").get<std::string>();
        c.price = r.value("avg_price", 0.0);
        c.rating = r.value("rating", 0.0);
        c.cluster = r.value("cluster", -1);
        double mid = (meal_lo + meal_hi) / 2.0;
        bool in_range = c.price >= meal_lo && c.price <= meal_hi;
        switch (persona) {
            case Persona::Budget: c.sort_key = -c.price; break;
            case Persona::Foodie: c.sort_key = c.rating * 50.0 - std::abs(c.price - mid); break;
            default: c.sort_key = (in_range ? 100.0 : 0.0) - std::abs(c.price - mid); break;
        }
        c.sort_key += rng.uniform_real(0.0, 5.0);
        restaurants.push_back(std::move(c));
    }
    std::stable_sort(restaurants.begin(), restaurants.end(),
                     [](const auto& x, const auto& y) { return x.sort_key > y.sort_key; });

    std::vector<Leg> arrival_legs, return_legs;
    auto read_legs = [](const json& arr, std::vector<Leg>& out) {
        for (const auto& l : arr) {
            Leg leg;
            leg.id = l.at("id").get<std::string>();
            leg.mode = l.value("mode", "flight");
            leg.depart = *parse_clock(l.at("depart").get<std::string>());
            leg.arrive = *parse_clock(l.at("arrive").get<std::string>());
            leg.price = l.value("price", 0.0);
            leg.day_slot = l.value("day_slot", "");
            out.push_back(std::move(leg));
        }
    };
    if (given_info.contains("arrival_legs")) read_legs(given_info["arrival_legs"], arrival_legs);
    if (given_info.contains("return_legs")) read_legs(given_info["return_legs"], return_legs);

    const json hotel = given_info.value("hotel", json::object());
    const std::string hotel_name = hotel.value("name", "");
    const double hotel_price = hotel.value("price_per_night", 0.0);
    const std::string city = given_info.value("city", "");
    const std::string origin = given_info.value("origin_city", "");

    DayBuilder out;
    size_t next_attraction = 0;
    size_t next_restaurant = 0;

    auto pick_leg = [&](std::vector<Leg>& legs, const std::string& slot, bool latest,
                        bool arrival) -> std::optional<Leg> {
        std::vector<Leg> in_slot;
        for (const auto& l : legs)
            if (l.day_slot == slot) in_slot.push_back(l);
        if (in_slot.empty()) in_slot = legs;
        if (in_slot.empty()) return std::nullopt;
        if (arrival) {
            // Transfer plus check-in must still finish by 22:30.
            std::vector<Leg> workable;
            for (const auto& l : in_slot)
                if (l.arrive + 70 <= 22 * 60 + 30) workable.push_back(l);
            if (!workable.empty()) in_slot = workable;
        }
        std::stable_sort(in_slot.begin(), in_slot.end(), [&](const Leg& a, const Leg& b) {
            if (persona == Persona::Budget) return a.price < b.price;
            return latest ? a.depart > b.depart : a.depart < b.depart;
        });
        return in_slot.front();
    };

    // Return-leg deadline: nothing else may end inside the pre-departure buffer.
    std::optional<Leg> return_leg;
    Minutes hard_stop = 22 * 60;  // last allowed activity end before dinner cap applies
    if (is_last) {
        return_leg = pick_leg(return_legs, given_info.value("return_slot", ""), true, false);
        if (return_leg) {
            Minutes buffer = return_leg->mode == "flight" ? 120 : 60;
            hard_stop = return_leg->depart - buffer;
        }
    }

    // Arrival.
    if (is_first) {
        auto leg = pick_leg(arrival_legs, given_info.value("departure_slot", ""), false, true);
        if (leg) {
            json step = step_json(leg->depart, leg->arrive, "transportation", leg->id,
                                  "Travel from " + origin + " to " + city + " via " + leg->mode +
                                      " " + leg->id + ".");
            step["mode"] = leg->mode;
            out.add(std::move(step), leg->price);
            Minutes t = out.cursor;
            Minutes transfer_end = t + 30 + (t <= 20 * 60 ? jitter5(2) : 0);
            out.add_transfer(t, transfer_end, "Transfer to the hotel.");
            if (!hotel_name.empty()) {
                out.add(step_json(transfer_end, transfer_end + 30, "check-in", hotel_name,
                                  "Check in at " + hotel_name + "."),
                        hotel_price);
            }
        }
    }

    // Checkout must end exactly at the buffer boundary; activities before it
    // need to clear checkout start minus a transfer.
    Minutes checkout_start = 0;
    if (is_last && return_leg) {
        checkout_start = hard_stop - 30;
    }

    auto try_sightseeing = [&](Minutes earliest_start, Minutes latest_end) -> bool {
        for (size_t i = next_attraction; i < attractions.size(); ++i) {
            const auto& a = attractions[i];
            Minutes start = std::max(earliest_start, a.open);
            if (out.cursor > 0 && start < out.cursor + 30) start = out.cursor + 30;
            Minutes end = start + a.visit_minutes;
            if (end > std::min(a.close, latest_end)) continue;
            if (a.admission_end && start > *a.admission_end) continue;
            if (out.cursor > 0) out.add_transfer(out.cursor, start, "Head to " + a.name + ".");
            out.add(step_json(start, end, "sightseeing", a.name, "Visit " + a.name + "."), a.fee);
            std::swap(attractions[i], attractions[next_attraction]);
            ++next_attraction;
            return true;
        }
        return false;
    };

    auto add_meal = [&](Minutes start, Minutes duration, const char* kind) -> bool {
        if (next_restaurant >= restaurants.size()) return false;
        const auto& r = restaurants[next_restaurant++];
        if (out.cursor > 0) out.add_transfer(out.cursor, start, std::string("Head to ") + kind + ".");
        out.add(step_json(start, start + duration, "meal", r.name,
                          std::string("Enjoy ") + kind + " at " + r.name + "."),
                r.price);
        return true;
    };

    const Minutes lunch_latest = 14 * 60;
    const Minutes dinner_earliest = 17 * 60;
    const Minutes dinner_latest = 20 * 60;
    std::optional<Minutes> lunch_start;

    // Morning block and lunch.
    Minutes day_start = is_first ? out.cursor : 9 * 60 + jitter5(4);
    if (!is_first || out.cursor > 0) {
        Minutes lunch_cap = is_last ? std::min(lunch_latest, checkout_start - 90) : lunch_latest;
        if (lunch_cap >= 11 * 60) {
            Minutes morning_end_cap = std::min(lunch_cap - 30, static_cast<Minutes>(13 * 60));
            if (day_start + 60 <= morning_end_cap && !is_first) {
                try_sightseeing(day_start, morning_end_cap);
            } else if (is_first && out.cursor + 30 + 60 <= morning_end_cap) {
                try_sightseeing(out.cursor + 30, morning_end_cap);
            }
            Minutes target = std::max({out.cursor > 0 ? out.cursor + 30 : 11 * 60 + 30,
                                       static_cast<Minutes>(11 * 60)});
            target += jitter5(3);
            if (target <= lunch_cap) {
                Minutes duration = 60 + jitter5(4);
                if (!is_last || target + duration + 30 <= checkout_start)
                    if (add_meal(target, duration, "lunch")) lunch_start = target;
            }
        }
    }

    if (is_last && return_leg) {
        // Afternoon sightseeing if the checkout deadline leaves room.
        if (out.cursor > 0 && checkout_start - 30 > out.cursor + 90)
            try_sightseeing(out.cursor + 30, checkout_start - 30);
        if (checkout_start >= 30 && !hotel_name.empty()) {
            if (out.cursor > 0 && out.cursor < checkout_start)
                out.add_transfer(out.cursor, checkout_start, "Return to the hotel to collect luggage.");
            out.add(step_json(checkout_start, checkout_start + 30, "check-out", hotel_name,
                              "Check out from " + hotel_name + "."),
                    0.0, false);
        }
        json step = step_json(return_leg->depart, return_leg->arrive, "transportation",
                              return_leg->id,
                              "Return from " + city + " to " + origin + " via " + return_leg->mode +
                                  " " + return_leg->id + ".");
        step["mode"] = return_leg->mode;
        out.add(std::move(step), return_leg->price);
    } else {
        // Afternoon block.
        Minutes afternoon_from = out.cursor > 0 ? out.cursor + 30 : 13 * 60;
        Minutes dinner_floor = lunch_start ? std::max(dinner_earliest, *lunch_start + 5 * 60)
                                           : dinner_earliest;
        try_sightseeing(afternoon_from, dinner_latest - 30);
        Minutes dinner_start = std::max(dinner_floor, out.cursor > 0 ? out.cursor + 30 : dinner_floor);
        dinner_start = std::min(static_cast<Minutes>(dinner_start + jitter5(2)), dinner_latest);
        if (dinner_start <= dinner_latest && dinner_start >= out.cursor + (out.cursor > 0 ? 30 : 0)) {
            add_meal(dinner_start, 60 + jitter5(4), "dinner");
        }
    }

    // Hotel night charged on every day except the final one.
    if (!is_last) out.cost += hotel_price;
    // The check-in step already added one night for display; avoid counting twice.
    if (is_first && !hotel_name.empty()) out.cost -= hotel_price;

    json result;
    result["agent_id"] = agent_id;
    result["day_label"] = day_label;
    result["daily_cost"] = std::round(out.cost * 100.0) / 100.0;
    result["plan"] = out.steps;
    return result;
}

} // namespace tourplanner::providers
