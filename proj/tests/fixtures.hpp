#pragma once

#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/sandbox/io.hpp"

#include <string>

namespace tourplanner::testfx {

// The worked four-day query used across suites.
inline std::string wuhan_xian_query() {
    return "I am looking for a 4-day trip from Wuhan to Xi'an, departing on Thursday morning and "
           "returning on Sunday evening, with a budget of ¥4100. I'm interested in exploring "
           "historical landmarks, cultural museums, scenic parks, and architectural marvels, along "
           "with enjoying diverse cuisines like barbecue, hot pot, Korean, and Japanese dishes. The "
           "itinerary should be moderate in intensity, balancing guided exploration with some "
           "downtime.";
}

// A sandbox carrying exactly the venues the worked day-one plan references.
inline sandbox::Sandbox xian_sandbox() {
    json doc = {
        {"schema_version", 1},
        {"cities", {"Wuhan", "Xi'an"}},
        {"attractions",
         json::array(
             {json{{"id", "A1"},
                   {"name", "Shaanxi History Museum"},
                   {"city", "Xi'an"},
                   {"lat", 34.222},
                   {"lon", 108.954},
                   {"grade", "5A"},
                   {"popularity", 98.0},
                   {"rating", 4.8},
                   {"entrance_fee", 0.0},
                   {"opening_hours", "09:00-17:30"},
                   {"admission_end", "16:00"},
                   {"recommended_duration", "0.5-1 day"},
                   {"features", "cultural museums; ancient relics"}},
              json{{"id", "A2"},
                   {"name", "Xi'an City Wall"},
                   {"city", "Xi'an"},
                   {"lat", 34.266},
                   {"lon", 108.942},
                   {"grade", "5A"},
                   {"popularity", 95.0},
                   {"rating", 4.7},
                   {"entrance_fee", 54.0},
                   {"opening_hours", "08:00-22:00"},
                   {"recommended_duration", "1-4 hours"},
                   {"features", "historical landmarks; architectural marvels"}},
              json{{"id", "A3"},
                   {"name", "Huaqing Palace"},
                   {"city", "Xi'an"},
                   {"lat", 34.362},
                   {"lon", 109.212},
                   {"grade", "5A"},
                   {"popularity", 90.0},
                   {"rating", 4.6},
                   {"entrance_fee", 120.0},
                   {"opening_hours", "07:00-18:00"},
                   {"recommended_duration", "2-3 hours"},
                   {"features", "historical landmarks; scenic parks"}}})},
        {"restaurants",
         json::array(
             {json{{"id", "R1"},
                   {"name", "Beijing Zhengyangmen Roast Duck Restaurant"},
                   {"city", "Xi'an"},
                   {"lat", 34.225},
                   {"lon", 108.950},
                   {"cuisine", "Beijing Cuisine"},
                   {"avg_price", 121.5},
                   {"rating", 3.5},
                   {"env_rating", 6.9},
                   {"service_rating", 6.3}},
              json{{"id", "R2"},
                   {"name", "Haocheng Zhen Yangcheng Lake Hairy Crab"},
                   {"city", "Xi'an"},
                   {"lat", 34.230},
                   {"lon", 108.958},
                   {"cuisine", "Crayfish"},
                   {"avg_price", 120.0},
                   {"rating", 3.5},
                   {"env_rating", 6.9},
                   {"service_rating", 6.9}},
              json{{"id", "R3"},
                   {"name", "Pier Story Hot Pot"},
                   {"city", "Xi'an"},
                   {"lat", 34.268},
                   {"lon", 108.944},
                   {"cuisine", "Hot Pot"},
                   {"avg_price", 120.0},
                   {"rating", 4.0},
                   {"env_rating", 7.8},
                   {"service_rating", 7.5}},
              json{{"id", "R4"},
                   {"name", "Weng Kee Seafood"},
                   {"city", "Xi'an"},
                   {"lat", 34.264},
                   {"lon", 108.946},
                   {"cuisine", "Seafood"},
                   {"avg_price", 124.5},
                   {"rating", 4.0},
                   {"env_rating", 6.6},
                   {"service_rating", 6.8}}})},
        {"hotels",
         json::array({json{{"id", "H1"},
                           {"name", "Kunyi Hotel"},
                           {"city", "Xi'an"},
                           {"lat", 34.228},
                           {"lon", 108.952},
                           {"category", "Upscale"},
                           {"price_per_night", 387.0},
                           {"rating", 5.0}},
                      json{{"id", "H2"},
                           {"name", "North Gate Inn"},
                           {"city", "Xi'an"},
                           {"lat", 34.270},
                           {"lon", 108.940},
                           {"category", "Economy"},
                           {"price_per_night", 120.0},
                           {"rating", 4.0}}})},
        {"transport",
         json::array({json{{"id", "CA8219"},
                           {"mode", "flight"},
                           {"origin_city", "Wuhan"},
                           {"dest_city", "Xi'an"},
                           {"depart", "07:45"},
                           {"arrive", "09:20"},
                           {"price", 340.0}},
                      json{{"id", "CZ3890"},
                           {"mode", "flight"},
                           {"origin_city", "Xi'an"},
                           {"dest_city", "Wuhan"},
                           {"depart", "17:35"},
                           {"arrive", "19:20"},
                           {"price", 500.0}},
                      json{{"id", "G1234"},
                           {"mode", "train"},
                           {"origin_city", "Xi'an"},
                           {"dest_city", "Wuhan"},
                           {"depart", "15:00"},
                           {"arrive", "19:00"},
                           {"price", 280.0}},
                      json{{"id", "CZ9999"},
                           {"mode", "flight"},
                           {"origin_city", "Xi'an"},
                           {"dest_city", "Wuhan"},
                           {"depart", "19:00"},
                           {"arrive", "20:45"},
                           {"price", 520.0}}})}};
    return sandbox::sandbox_from_json(doc);
}

inline ccot::Step make_step(const std::string& time, const std::string& type,
                            const std::string& name, std::optional<double> price = std::nullopt,
                            std::optional<std::string> mode = std::nullopt) {
    json j{{"time", time}, {"activity type", type}, {"name", name}, {"description", ""}};
    if (price) j["price"] = *price;
    if (mode) j["mode"] = *mode;
    return ccot::step_from_json(j);
}

// The worked day-one plan: flight, check-in, lunch, museum, dinner.
inline ccot::Proposal day_one_plan() {
    ccot::Proposal p;
    p.day_label = "Day 1";
    p.daily_cost = 968.5;
    p.steps = {
        make_step("07:45-09:20", "transportation", "CA8219", 340.0, "flight"),
        make_step("10:15-10:45", "check-in", "Kunyi Hotel", 387.0),
        make_step("11:05-12:05", "meal", "Beijing Zhengyangmen Roast Duck Restaurant", 121.5),
        make_step("12:30-17:30", "sightseeing", "Shaanxi History Museum", 0.0),
        make_step("17:50-19:20", "meal", "Haocheng Zhen Yangcheng Lake Hairy Crab", 120.0),
    };
    return p;
}

inline profile::UserProfile xian_profile() {
    auto sb = xian_sandbox();
    return profile::build_profile(wuhan_xian_query(), sb);
}

} // namespace tourplanner::testfx
