#include "tourplanner/sandbox/io.hpp"

#include "tourplanner/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tourplanner::sandbox {

namespace {

double require_number(const json& obj, const std::string& field, const std::string& who) {
    if (!obj.contains(field) || !obj[field].is_number())
        throw ParseError(who + ": missing or non-numeric field '" + field + "'");
    return obj[field].get<double>();
}

std::string require_string(const json& obj, const std::string& field, const std::string& who) {
    if (!obj.contains(field) || !obj[field].is_string())
        throw ParseError(who + ": missing or non-string field '" + field + "'");
    return obj[field].get<std::string>();
}

Minutes require_clock(const json& obj, const std::string& field, const std::string& who) {
    auto m = parse_clock(require_string(obj, field, who));
    if (!m) throw ParseError(who + ": bad clock value in '" + field + "'");
    return *m;
}

void check_latlon(double lat, double lon, const std::string& who) {
    if (lat < -90.0 || lat > 90.0) throw ParseError(who + ": lat out of range");
    if (lon < -180.0 || lon > 180.0) throw ParseError(who + ": lon out of range");
}

} // namespace

std::optional<std::pair<double, double>> parse_duration_range(const std::string& text) {
    // Forms: "A-B day", "A-B days", "A-B hours", "A day", "2 hours".
    std::string t = text;
    bool days = t.find("day") != std::string::npos;
    bool hours = t.find("hour") != std::string::npos;
    if (!days && !hours) return std::nullopt;
    size_t unit = t.find(days ? "day" : "hour");
    std::string nums = t.substr(0, unit);
    double lo = 0, hi = 0;
    size_t dash = nums.find('-');
    try {
        if (dash == std::string::npos) {
            lo = hi = std::stod(nums);
        } else {
            lo = std::stod(nums.substr(0, dash));
            hi = std::stod(nums.substr(dash + 1));
        }
    } catch (...) {
        return std::nullopt;
    }
    if (days) {
        lo *= 10.0;  // 0.5 day = 5 hours, 1 day = 10 hours
        hi *= 10.0;
    }
    if (lo <= 0 || lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

Sandbox sandbox_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("sandbox: document is not an object");
    int version = doc.value("schema_version", -1);
    if (version != kSchemaVersion)
        throw ParseError("sandbox: unsupported schema_version");

    Sandbox sb;
    for (const auto& c : doc.value("cities", json::array())) {
        if (!c.is_string()) throw ParseError("sandbox: city entries must be strings");
        sb.cities.push_back(c.get<std::string>());
    }
    {
        std::set<std::string> seen;
        for (const auto& c : sb.cities)
            if (!seen.insert(c).second) throw DuplicateIdError("duplicate city: " + c);
    }
    auto check_city = [&](const std::string& city, const std::string& who) {
        if (!sb.has_city(city)) throw UnknownCityError(who + ": unknown city '" + city + "'");
    };

    std::set<std::string> ids;
    auto check_id = [&](const std::string& id, const std::string& who) {
        if (id.empty()) throw ParseError(who + ": empty id");
        if (!ids.insert(who.substr(0, 4) + ":" + id).second)
            throw DuplicateIdError(who + ": duplicate id '" + id + "'");
    };

    for (const auto& a : doc.value("attractions", json::array())) {
        Attraction x;
        x.id = require_string(a, "id", "attraction");
        std::string who = "attraction " + x.id;
        check_id(x.id, "attraction");
        x.name = require_string(a, "name", who);
        x.city = require_string(a, "city", who);
        check_city(x.city, who);
        x.lat = require_number(a, "lat", who);
        x.lon = require_number(a, "lon", who);
        check_latlon(x.lat, x.lon, who);
        auto g = grade_from_string(a.value("grade", "none"));
        if (!g) throw ParseError(who + ": bad grade");
        x.grade = *g;
        x.popularity = require_number(a, "popularity", who);
        if (x.popularity < 0) throw ParseError(who + ": popularity negative");
        x.rating = require_number(a, "rating", who);
        if (x.rating < 0 || x.rating > 5) throw ParseError(who + ": rating out of 0..5");
        x.entrance_fee = require_number(a, "entrance_fee", who);
        if (x.entrance_fee < 0) throw ParseError(who + ": entrance_fee negative");
        auto w = parse_window(require_string(a, "opening_hours", who));
        if (!w) throw ParseError(who + ": bad opening_hours");
        x.open = w->first;
        x.close = w->second;
        if (a.contains("admission_end")) {
            auto ae = parse_clock(a["admission_end"].get<std::string>());
            if (!ae) throw ParseError(who + ": bad admission_end");
            x.admission_end = *ae;
        }
        if (a.contains("recommended_duration")) {
            auto d = parse_duration_range(a["recommended_duration"].get<std::string>());
            if (!d) throw ParseError(who + ": bad recommended_duration");
            x.min_hours = d->first;
            x.max_hours = d->second;
        } else {
            x.min_hours = require_number(a, "duration_min_hours", who);
            x.max_hours = require_number(a, "duration_max_hours", who);
        }
        if (!(x.min_hours > 0 && x.min_hours <= x.max_hours))
            throw ParseError(who + ": duration bounds violate 0 < min <= max");
        x.feature_text = a.value("features", "");
        sb.attractions.push_back(std::move(x));
    }

    for (const auto& r : doc.value("restaurants", json::array())) {
        Restaurant x;
        x.id = require_string(r, "id", "restaurant");
        std::string who = "restaurant " + x.id;
        check_id(x.id, "restaurant");
        x.name = require_string(r, "name", who);
        x.city = require_string(r, "city", who);
        check_city(x.city, who);
        x.lat = require_number(r, "lat", who);
        x.lon = require_number(r, "lon", who);
        check_latlon(x.lat, x.lon, who);
        x.cuisine = require_string(r, "cuisine", who);
        if (!resolve_cuisine(x.cuisine))
            throw ParseError(who + ": cuisine '" + x.cuisine + "' not in vocabulary");
        x.avg_price = require_number(r, "avg_price", who);
        if (x.avg_price <= 0) throw ParseError(who + ": avg_price must be positive");
        x.rating = require_number(r, "rating", who);
        if (x.rating < 0 || x.rating > 5) throw ParseError(who + ": rating out of 0..5");
        x.env_rating = require_number(r, "env_rating", who);
        x.service_rating = require_number(r, "service_rating", who);
        if (x.env_rating < 0 || x.env_rating > 10 || x.service_rating < 0 || x.service_rating > 10)
            throw ParseError(who + ": env/service rating out of 0..10");
        sb.restaurants.push_back(std::move(x));
    }

    for (const auto& h : doc.value("hotels", json::array())) {
        Hotel x;
        x.id = require_string(h, "id", "hotel");
        std::string who = "hotel " + x.id;
        check_id(x.id, "hotel");
        x.name = require_string(h, "name", who);
        x.city = require_string(h, "city", who);
        check_city(x.city, who);
        x.lat = require_number(h, "lat", who);
        x.lon = require_number(h, "lon", who);
        check_latlon(x.lat, x.lon, who);
        auto cat = hotel_category_from_string(require_string(h, "category", who));
        if (!cat) throw ParseError(who + ": bad category");
        x.category = *cat;
        x.price_per_night = require_number(h, "price_per_night", who);
        if (x.price_per_night <= 0) throw ParseError(who + ": price_per_night must be positive");
        x.rating = require_number(h, "rating", who);
        if (x.rating < 0 || x.rating > 5) throw ParseError(who + ": rating out of 0..5");
        sb.hotels.push_back(std::move(x));
    }

    for (const auto& t : doc.value("transport", json::array())) {
        TransportLeg x;
        x.id = require_string(t, "id", "transport");
        std::string who = "transport " + x.id;
        check_id(x.id, "transport");
        auto mode = transport_mode_from_string(require_string(t, "mode", who));
        if (!mode) throw ParseError(who + ": bad mode");
        x.mode = *mode;
        x.origin_city = require_string(t, "origin_city", who);
        x.dest_city = require_string(t, "dest_city", who);
        check_city(x.origin_city, who);
        check_city(x.dest_city, who);
        x.depart = require_clock(t, "depart", who);
        x.arrive = require_clock(t, "arrive", who);
        if (x.depart >= x.arrive) throw ParseError(who + ": depart must precede arrive");
        x.price = require_number(t, "price", who);
        if (x.price <= 0) throw ParseError(who + ": price must be positive");
        x.day_slot = slot_of(x.depart);
        sb.transport.push_back(std::move(x));
    }

    sb.rebuild_indexes();  // also rejects post-normalization name collisions
    return sb;
}

Sandbox load_sandbox(const std::string& path) {
    return sandbox_from_json(load_json_file(path));
}

json sandbox_to_json(const Sandbox& sb) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["cities"] = sb.cities;
    json attractions = json::array();
    auto sorted_attr = sb.attractions;
    std::sort(sorted_attr.begin(), sorted_attr.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& a : sorted_attr) {
        json j{{"id", a.id},
               {"name", a.name},
               {"city", a.city},
               {"lat", a.lat},
               {"lon", a.lon},
               {"grade", to_string(a.grade)},
               {"popularity", a.popularity},
               {"rating", a.rating},
               {"entrance_fee", a.entrance_fee},
               {"opening_hours", format_window(a.open, a.close)},
               {"duration_min_hours", a.min_hours},
               {"duration_max_hours", a.max_hours},
               {"features", a.feature_text}};
        if (a.admission_end) j["admission_end"] = format_clock(*a.admission_end);
        attractions.push_back(std::move(j));
    }
    doc["attractions"] = std::move(attractions);

    json restaurants = json::array();
    auto sorted_rest = sb.restaurants;
    std::sort(sorted_rest.begin(), sorted_rest.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& r : sorted_rest) {
        restaurants.push_back(json{{"id", r.id},
                                   {"name", r.name},
                                   {"city", r.city},
                                   {"lat", r.lat},
                                   {"lon", r.lon},
                                   {"cuisine", r.cuisine},
                                   {"avg_price", r.avg_price},
                                   {"rating", r.rating},
                                   {"env_rating", r.env_rating},
                                   {"service_rating", r.service_rating}});
    }
    doc["restaurants"] = std::move(restaurants);

    json hotels = json::array();
    auto sorted_hot = sb.hotels;
    std::sort(sorted_hot.begin(), sorted_hot.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& h : sorted_hot) {
        hotels.push_back(json{{"id", h.id},
                              {"name", h.name},
                              {"city", h.city},
                              {"lat", h.lat},
                              {"lon", h.lon},
                              {"category", to_string(h.category)},
                              {"price_per_night", h.price_per_night},
                              {"rating", h.rating}});
    }
    doc["hotels"] = std::move(hotels);

    json transport = json::array();
    auto sorted_tr = sb.transport;
    std::sort(sorted_tr.begin(), sorted_tr.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& t : sorted_tr) {
        transport.push_back(json{{"id", t.id},
                                 {"mode", to_string(t.mode)},
                                 {"origin_city", t.origin_city},
                                 {"dest_city", t.dest_city},
                                 {"depart", format_clock(t.depart)},
                                 {"arrive", format_clock(t.arrive)},
                                 {"price", t.price}});
    }
    doc["transport"] = std::move(transport);
    return doc;
}

void save_sandbox(const Sandbox& sb, const std::string& path) {
    atomic_write(path, canon_dump(sandbox_to_json(sb)) + "\n");
}

std::string sandbox_hash(const Sandbox& sb) {
    return hash_hex(json_hash(sandbox_to_json(sb)));
}

} // namespace tourplanner::sandbox
