#pragma once

#include "tourplanner/core/time.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tourplanner::sandbox {

enum class Grade { None, ThreeA, FourA, FiveA };
enum class HotelCategory { Economy, Midscale, Upscale, Luxury };
enum class TransportMode { Flight, Train };
enum class DaySlot { EarlyMorning, LateMorning, Afternoon, Evening };

std::string to_string(Grade g);
std::string to_string(HotelCategory c);
std::string to_string(TransportMode m);
std::string to_string(DaySlot s);

std::optional<Grade> grade_from_string(const std::string& s);
std::optional<HotelCategory> hotel_category_from_string(const std::string& s);
std::optional<TransportMode> transport_mode_from_string(const std::string& s);
std::optional<DaySlot> day_slot_from_string(const std::string& s);

// Slot boundaries: early morning < 09:00, late morning 09:00-12:00,
// afternoon 12:00-18:00, evening >= 18:00.
DaySlot slot_of(Minutes depart);

// The closed cuisine vocabulary used by restaurant records and query parsing.
const std::vector<std::string>& cuisine_vocabulary();
std::optional<std::string> resolve_cuisine(const std::string& phrase);

struct Attraction {
    std::string id;
    std::string name;
    std::string city;
    double lat = 0.0;
    double lon = 0.0;
    Grade grade = Grade::None;
    double popularity = 0.0;
    double rating = 0.0;
    double entrance_fee = 0.0;
    Minutes open = 0;
    Minutes close = 0;
    std::optional<Minutes> admission_end;  // latest admitted start, if stated
    double min_hours = 0.0;
    double max_hours = 0.0;
    std::string feature_text;
    std::optional<int> cluster_label;
};

struct Restaurant {
    std::string id;
    std::string name;
    std::string city;
    double lat = 0.0;
    double lon = 0.0;
    std::string cuisine;
    double avg_price = 0.0;
    double rating = 0.0;
    double env_rating = 0.0;
    double service_rating = 0.0;
    std::optional<int> cluster_label;
};

struct Hotel {
    std::string id;
    std::string name;
    std::string city;
    double lat = 0.0;
    double lon = 0.0;
    HotelCategory category = HotelCategory::Economy;
    double price_per_night = 0.0;
    double rating = 0.0;
    std::optional<int> cluster_label;
};

struct TransportLeg {
    std::string id;  // flight/train code, e.g. "CA8219"
    TransportMode mode = TransportMode::Flight;
    std::string origin_city;
    std::string dest_city;
    Minutes depart = 0;
    Minutes arrive = 0;
    double price = 0.0;
    DaySlot day_slot = DaySlot::EarlyMorning;  // derived from depart at load
};

// Case-fold, trim, collapse internal whitespace. Entity resolution is exact
// on this normal form.
std::string normalize_name(const std::string& name);

enum class EntityKind { Attraction, Restaurant, Hotel, Transport };

struct Sandbox {
    std::vector<std::string> cities;
    std::vector<Attraction> attractions;
    std::vector<Restaurant> restaurants;
    std::vector<Hotel> hotels;
    std::vector<TransportLeg> transport;

    // (city, normalized name) -> index into the entity vector
    std::map<std::pair<std::string, std::string>, size_t> attraction_index;
    std::map<std::pair<std::string, std::string>, size_t> restaurant_index;
    std::map<std::pair<std::string, std::string>, size_t> hotel_index;
    std::map<std::string, size_t> transport_index;  // by normalized leg id

    bool has_city(const std::string& city) const;

    const Attraction* find_attraction(const std::string& city, const std::string& name) const;
    const Restaurant* find_restaurant(const std::string& city, const std::string& name) const;
    const Hotel* find_hotel(const std::string& city, const std::string& name) const;
    const TransportLeg* find_transport(const std::string& code) const;

    void rebuild_indexes();
};

} // namespace tourplanner::sandbox
