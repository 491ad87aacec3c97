#include "tourplanner/sandbox/model.hpp"

#include "tourplanner/core/errors.hpp"

#include <algorithm>
#include <cctype>

namespace tourplanner::sandbox {

std::string to_string(Grade g) {
    switch (g) {
        case Grade::None: return "none";
        case Grade::ThreeA: return "3A";
        case Grade::FourA: return "4A";
        case Grade::FiveA: return "5A";
    }
    return "none";
}

std::string to_string(HotelCategory c) {
    switch (c) {
        case HotelCategory::Economy: return "Economy";
        case HotelCategory::Midscale: return "Midscale";
        case HotelCategory::Upscale: return "Upscale";
        case HotelCategory::Luxury: return "Luxury";
    }
    return "Economy";
}

std::string to_string(TransportMode m) {
    return m == TransportMode::Flight ? "flight" : "train";
}

std::string to_string(DaySlot s) {
    switch (s) {
        case DaySlot::EarlyMorning: return "early morning";
        case DaySlot::LateMorning: return "late morning";
        case DaySlot::Afternoon: return "afternoon";
        case DaySlot::Evening: return "evening";
    }
    return "early morning";
}

std::optional<Grade> grade_from_string(const std::string& s) {
    if (s == "none" || s.empty()) return Grade::None;
    if (s == "3A") return Grade::ThreeA;
    if (s == "4A") return Grade::FourA;
    if (s == "5A") return Grade::FiveA;
    return std::nullopt;
}

std::optional<HotelCategory> hotel_category_from_string(const std::string& s) {
    if (s == "Economy") return HotelCategory::Economy;
    if (s == "Midscale") return HotelCategory::Midscale;
    if (s == "Upscale") return HotelCategory::Upscale;
    if (s == "Luxury") return HotelCategory::Luxury;
    return std::nullopt;
}

std::optional<TransportMode> transport_mode_from_string(const std::string& s) {
    if (s == "flight") return TransportMode::Flight;
    if (s == "train") return TransportMode::Train;
    return std::nullopt;
}

std::optional<DaySlot> day_slot_from_string(const std::string& s) {
    if (s == "early morning") return DaySlot::EarlyMorning;
    if (s == "late morning") return DaySlot::LateMorning;
    if (s == "afternoon") return DaySlot::Afternoon;
    if (s == "evening") return DaySlot::Evening;
    return std::nullopt;
}

DaySlot slot_of(Minutes depart) {
    if (depart < 9 * 60) return DaySlot::EarlyMorning;
    if (depart < 12 * 60) return DaySlot::LateMorning;
    if (depart < 18 * 60) return DaySlot::Afternoon;
    return DaySlot::Evening;
}

const std::vector<std::string>& cuisine_vocabulary() {
    static const std::vector<std::string> vocab = {
        "Hot Pot", "Fast Food", "Northwestern Cuisine", "Snacks", "Buffet", "Seafood",
        "Pizza", "Barbecue", "Crayfish", "Hainan Cuisine", "Wontons and Dumplings",
        "Sichuan Cuisine", "Southeast Asian Cuisine", "Jiangsu and Zhejiang Cuisine",
        "Hunan Cuisine", "Yunnan and Guizhou Cuisine", "Porridge Shop", "Other Delicacies",
        "Rice Noodles", "Korean Cuisine", "Guangdong cuisine", "Japanese Cuisine",
        "Xinjiang Cuisine", "Western Cuisine", "Northeastern Cuisine", "Malatang",
        "Shandong Cuisine", "Farmhouse Cuisine", "Huaiyang Cuisine", "Creative Cuisine",
        "Vegetarian Cuisine", "Jiangxi Cuisine", "Chaoshan Cuisine", "Anhui Cuisine",
        "Taiwanese Cuisine", "Tea Restaurant", "Home-style Cooking", "Hubei Cuisine",
        "Beijing Cuisine", "Fujian Cuisine", "Guizhou Cuisine", "Private Kitchen",
        "Guangxi Cuisine", "Hakka Cuisine", "Tianjin Cuisine", "Shanxi Cuisine",
        "Henan Cuisine", "Shaanxi Cuisine",
    };
    return vocab;
}

std::optional<std::string> resolve_cuisine(const std::string& phrase) {
    std::string n = normalize_name(phrase);
    for (const auto& entry : cuisine_vocabulary()) {
        if (normalize_name(entry) == n) return entry;
    }
    // Queries often drop the trailing "Cuisine" ("Hakka dishes" -> Hakka Cuisine).
    for (const auto& entry : cuisine_vocabulary()) {
        std::string en = normalize_name(entry);
        if (en == n + " cuisine") return entry;
    }
    return std::nullopt;
}

std::string normalize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (char c : name) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isspace(uc)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(uc)));
    }
    return out;
}

bool Sandbox::has_city(const std::string& city) const {
    return std::find(cities.begin(), cities.end(), city) != cities.end();
}

const Attraction* Sandbox::find_attraction(const std::string& city, const std::string& name) const {
    auto it = attraction_index.find({city, normalize_name(name)});
    return it == attraction_index.end() ? nullptr : &attractions[it->second];
}

const Restaurant* Sandbox::find_restaurant(const std::string& city, const std::string& name) const {
    auto it = restaurant_index.find({city, normalize_name(name)});
    return it == restaurant_index.end() ? nullptr : &restaurants[it->second];
}

const Hotel* Sandbox::find_hotel(const std::string& city, const std::string& name) const {
    auto it = hotel_index.find({city, normalize_name(name)});
    return it == hotel_index.end() ? nullptr : &hotels[it->second];
}

const TransportLeg* Sandbox::find_transport(const std::string& code) const {
    auto it = transport_index.find(normalize_name(code));
    return it == transport_index.end() ? nullptr : &transport[it->second];
}

void Sandbox::rebuild_indexes() {
    attraction_index.clear();
    restaurant_index.clear();
    hotel_index.clear();
    transport_index.clear();
    for (size_t i = 0; i < attractions.size(); ++i) {
        auto key = std::make_pair(attractions[i].city, normalize_name(attractions[i].name));
        if (!attraction_index.emplace(key, i).second)
            throw DuplicateIdError("attraction name collides after normalization: " + attractions[i].name);
    }
    for (size_t i = 0; i < restaurants.size(); ++i) {
        auto key = std::make_pair(restaurants[i].city, normalize_name(restaurants[i].name));
        if (!restaurant_index.emplace(key, i).second)
            throw DuplicateIdError("restaurant name collides after normalization: " + restaurants[i].name);
    }
    for (size_t i = 0; i < hotels.size(); ++i) {
        auto key = std::make_pair(hotels[i].city, normalize_name(hotels[i].name));
        if (!hotel_index.emplace(key, i).second)
            throw DuplicateIdError("hotel name collides after normalization: " + hotels[i].name);
    }
    for (size_t i = 0; i < transport.size(); ++i) {
        if (!transport_index.emplace(normalize_name(transport[i].id), i).second)
            throw DuplicateIdError("transport id collides after normalization: " + transport[i].id);
    }
}

} // namespace tourplanner::sandbox
