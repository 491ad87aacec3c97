#include "tourplanner/profile/profile.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace tourplanner::profile {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Split a rendered list ("a, b, and c") back into items. Fragments keep any
// internal "and"; only a leading "and " after a comma is stripped.
std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (part.rfind("and ", 0) == 0) part = trim(part.substr(4));
        if (!part.empty()) items.push_back(part);
    }
    return items;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += i + 1 == items.size() ? ", and " : ", ";
        out += items[i];
    }
    return out;
}

sandbox::DaySlot parse_slot(std::string text) {
    text = trim(text);
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (text == "morning") text = "early morning";  // stated mapping
    auto slot = sandbox::day_slot_from_string(text);
    if (!slot) throw ExtractionError("unrecognized day slot: " + text);
    return *slot;
}

std::string format_budget(double budget) {
    if (budget == std::floor(budget)) return std::to_string(static_cast<long long>(budget));
    std::ostringstream out;
    out << budget;
    return out.str();
}

ExplicitDemands parse_templated_query(const std::string& query) {
    ExplicitDemands d;
    std::smatch m;

    std::regex duration_re(R"((\d+)-day trip)");
    if (!std::regex_search(query, m, duration_re))
        throw ExtractionError("extract_demands: could not recover duration");
    d.duration_days = std::stoi(m[1]);

    std::regex cities_re(R"(trip from (.+?) to (.+?), departing)");
    if (!std::regex_search(query, m, cities_re))
        throw ExtractionError("extract_demands: could not recover cities");
    d.origin_city = trim(m[1]);
    d.dest_city = trim(m[2]);

    std::regex depart_re(
        R"(departing on (\w+) (early morning|late morning|morning|afternoon|evening))");
    if (std::regex_search(query, m, depart_re)) {
        d.departure_day = m[1];
        d.departure_slot = parse_slot(m[2]);
    }
    std::regex return_re(
        R"(returning on (\w+) (early morning|late morning|morning|afternoon|evening))");
    if (std::regex_search(query, m, return_re)) {
        d.return_day = m[1];
        d.return_slot = parse_slot(m[2]);
    }

    std::regex budget_re(R"(budget of \W*([0-9]+(?:\.[0-9]+)?))");
    if (!std::regex_search(query, m, budget_re))
        throw ExtractionError("extract_demands: could not recover budget");
    d.budget = std::stod(m[1]);

    std::regex interests_re(R"(interested in (?:exploring )?(.+?)(?:,? along with|\. ))");
    if (std::regex_search(query, m, interests_re)) {
        std::string interests = m[1];
        if (interests.rfind("enjoying diverse cuisines", 0) != 0)
            d.other_requirements = split_list(interests);
    }

    std::regex cuisine_re(R"(cuisines like (.+?) dishes)");
    if (std::regex_search(query, m, cuisine_re)) {
        for (const auto& raw : split_list(m[1])) {
            if (auto c = sandbox::resolve_cuisine(raw)) d.cuisine_prefs.push_back(*c);
        }
    }

    if (d.duration_days < 1) throw ExtractionError("extract_demands: duration must be >= 1");
    if (d.budget <= 0) throw ExtractionError("extract_demands: budget must be positive");
    return d;
}

std::optional<std::string> bracket_value(const std::string& text, const std::string& field) {
    std::regex re(field + R"(\s*:\s*\[([^\]]*)\])");
    std::smatch m;
    if (!std::regex_search(text, m, re)) return std::nullopt;
    return trim(m[1]);
}

} // namespace

ExplicitDemands parse_bracketed_block(const std::string& text) {
    ExplicitDemands d;
    auto dep_day = bracket_value(text, "Departure Day");
    auto ret_day = bracket_value(text, "Return Day");
    auto dep_time = bracket_value(text, "Departure Time");
    auto ret_time = bracket_value(text, "Return Time");
    auto duration = bracket_value(text, "Duration");
    auto dep_city = bracket_value(text, "Departure City");
    auto dest_city = bracket_value(text, "Destination City");
    auto other = bracket_value(text, "Other Requirements");
    auto budget = bracket_value(text, "Budget");
    auto cuisines = bracket_value(text, "R\\w*staurant Type");  // tolerate the common typo

    if (!dest_city || dest_city->empty() || !dep_city || dep_city->empty())
        throw ExtractionError("extraction reply: missing city fields");
    if (!duration || duration->empty()) throw ExtractionError("extraction reply: missing duration");
    if (!budget || budget->empty()) throw ExtractionError("extraction reply: missing budget");

    d.departure_day = dep_day.value_or("");
    d.return_day = ret_day.value_or("");
    if (dep_time && !dep_time->empty()) d.departure_slot = parse_slot(*dep_time);
    if (ret_time && !ret_time->empty()) d.return_slot = parse_slot(*ret_time);
    try {
        d.duration_days = std::stoi(*duration);
    } catch (...) {
        throw ExtractionError("extraction reply: bad duration value");
    }
    d.origin_city = *dep_city;
    d.dest_city = *dest_city;
    if (other) d.other_requirements = split_list(*other);
    std::string b = *budget;
    b.erase(std::remove_if(b.begin(), b.end(),
                           [](unsigned char c) { return !(std::isdigit(c) || c == '.'); }),
            b.end());
    try {
        d.budget = std::stod(b);
    } catch (...) {
        throw ExtractionError("extraction reply: bad budget value");
    }
    if (cuisines) {
        for (const auto& raw : split_list(*cuisines)) {
            if (auto c = sandbox::resolve_cuisine(raw)) d.cuisine_prefs.push_back(*c);
        }
    }
    if (d.duration_days < 1) throw ExtractionError("extraction reply: duration must be >= 1");
    if (d.budget <= 0) throw ExtractionError("extraction reply: budget must be positive");
    return d;
}

ExplicitDemands extract_demands(const std::string& query, providers::Provider* provider) {
    if (trim(query).empty()) throw std::invalid_argument("extract_demands: empty query");
    if (provider) {
        providers::ChatRequest req;
        req.system_prompt = prompts::demand_extraction_system();
        req.user_prompt = prompts::demand_extraction_user(query);
        req.expects_structured = true;
        return parse_bracketed_block(provider->chat(req));
    }
    return parse_templated_query(query);
}

std::string render_query(const ExplicitDemands& d) {
    std::ostringstream out;
    out << "I am looking for a " << d.duration_days << "-day trip from " << d.origin_city << " to "
        << d.dest_city << ", departing on " << d.departure_day << " "
        << sandbox::to_string(d.departure_slot) << " and returning on " << d.return_day << " "
        << sandbox::to_string(d.return_slot) << ", with a budget of ¥" << format_budget(d.budget)
        << ".";
    if (!d.other_requirements.empty()) {
        out << " I'm interested in exploring " << join_list(d.other_requirements);
        if (!d.cuisine_prefs.empty())
            out << ", along with enjoying diverse cuisines like " << join_list(d.cuisine_prefs)
                << " dishes";
        out << ".";
    } else if (!d.cuisine_prefs.empty()) {
        out << " I'm interested in enjoying diverse cuisines like " << join_list(d.cuisine_prefs)
            << " dishes.";
    }
    out << " The itinerary should be moderate in intensity, balancing guided exploration with some "
           "downtime.";
    return out.str();
}

InferredPrefs infer_preferences(const ExplicitDemands& d, const CityPriceStats& stats) {
    int nights = d.duration_days - 1;
    if (nights < 1) throw std::invalid_argument("infer_preferences: needs duration_days >= 2");
    if (d.budget <= 0) throw std::invalid_argument("infer_preferences: budget must be positive");
    if (stats.hotel_min_price.empty())
        throw StatsMissingError("infer_preferences: no hotel category has a price");

    double per_night = d.budget * 0.55 / nights;
    InferredPrefs prefs;
    const sandbox::HotelCategory priority[] = {
        sandbox::HotelCategory::Luxury, sandbox::HotelCategory::Upscale,
        sandbox::HotelCategory::Midscale, sandbox::HotelCategory::Economy};
    bool chosen = false;
    for (auto cat : priority) {
        auto it = stats.hotel_min_price.find(cat);
        if (it != stats.hotel_min_price.end() && it->second <= per_night) {
            prefs.hotel_category = cat;
            chosen = true;
            break;
        }
    }
    if (!chosen) {
        double best = 0.0;
        for (const auto& [cat, price] : stats.hotel_min_price) {
            if (!chosen || price < best) {
                prefs.hotel_category = cat;
                best = price;
                chosen = true;
            }
        }
    }

    double per_day_meals = d.budget * 0.35 / nights;
    prefs.meal_min = 0.15 * per_day_meals;
    prefs.meal_max = 0.45 * per_day_meals;
    return prefs;
}

namespace {

// Linear-interpolation quantile on a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) return sorted[0];
    double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    size_t lo = static_cast<size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

CityPriceStats city_stats(const sandbox::Sandbox& sb, const std::string& city) {
    if (!sb.has_city(city)) throw UnknownCityError("city_stats: unknown city '" + city + "'");

    CityPriceStats stats;
    for (const auto& h : sb.hotels) {
        if (h.city != city) continue;
        auto it = stats.hotel_min_price.find(h.category);
        if (it == stats.hotel_min_price.end() || h.price_per_night < it->second)
            stats.hotel_min_price[h.category] = h.price_per_night;
    }
    std::vector<double> meal_prices;
    for (const auto& r : sb.restaurants)
        if (r.city == city) meal_prices.push_back(r.avg_price);
    if (stats.hotel_min_price.empty() || meal_prices.empty())
        throw EmptyCategoryError("city_stats: city '" + city + "' needs at least one hotel and restaurant");
    std::sort(meal_prices.begin(), meal_prices.end());
    stats.meal_q25 = quantile(meal_prices, 0.25);
    stats.meal_q50 = quantile(meal_prices, 0.50);
    stats.meal_q75 = quantile(meal_prices, 0.75);

    double lo = 0, hi = 0;
    bool any = false;
    for (const auto& t : sb.transport) {
        if (t.origin_city != city && t.dest_city != city) continue;
        if (!any) {
            lo = hi = t.price;
            any = true;
        } else {
            lo = std::min(lo, t.price);
            hi = std::max(hi, t.price);
        }
    }
    if (any) stats.transport_price_range = std::make_pair(lo, hi);
    return stats;
}

UserProfile build_profile(const std::string& query, const sandbox::Sandbox& sb,
                          providers::Provider* provider) {
    UserProfile p;
    p.raw_query = query;
    p.explicit_demands = extract_demands(query, provider);
    CityPriceStats stats = city_stats(sb, p.explicit_demands.dest_city);
    if (p.explicit_demands.duration_days >= 2) {
        p.inferred = infer_preferences(p.explicit_demands, stats);
    } else {
        // Single-day trips have no nights to budget against; fall back to the
        // cheapest category and a quartile-based meal band.
        double best = 0.0;
        bool chosen = false;
        for (const auto& [cat, price] : stats.hotel_min_price) {
            if (!chosen || price < best) {
                p.inferred.hotel_category = cat;
                best = price;
                chosen = true;
            }
        }
        p.inferred.meal_min = 0.5 * stats.meal_q25;
        p.inferred.meal_max = std::max(1.5 * stats.meal_q75, p.inferred.meal_min * 1.5);
    }
    return p;
}

} // namespace tourplanner::profile
