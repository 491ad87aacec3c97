#include "tourplanner/core/rng.hpp"
#include "tourplanner/sandbox/io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tourplanner::sandbox {

namespace {

const std::vector<std::string> kCityPool = {
    "Jiangcheng", "Yunzhou", "Linhai", "Qingyan", "Shuangqiao", "Pinglan",
    "Heyuanzhen", "Luminggang", "Baishitan", "Xingluo",
};

const std::vector<std::string> kAttractionAdjectives = {
    "Old", "Grand", "Jade", "Golden", "Misty", "Stone", "Red", "Cloud",
    "Phoenix", "Silver", "Lotus", "Azure",
};

const std::vector<std::string> kAttractionNouns = {
    "Temple", "Museum", "Pagoda", "Garden", "Lake Park", "Tower", "Palace",
    "Ancient Street", "Gorge", "Memorial Hall", "Botanical Park", "City Wall",
};

const std::vector<std::string> kFeaturePhrases = {
    "historical sites", "cultural landmarks", "scenic parks", "architectural marvels",
    "natural retreats", "local food streets", "art exhibitions", "ancient relics",
    "riverside views", "mountain trails", "night markets", "folk performances",
};

const std::vector<std::string> kRestaurantFirst = {
    "Lucky", "Harbor", "Uncle Wang's", "Golden Bowl", "Riverside", "Mama Chen's",
    "Bamboo", "Twin Lanterns", "North Gate", "Spring Well", "Iron Pot", "Sunrise",
};

const std::vector<std::string> kRestaurantSecond = {
    "Kitchen", "House", "Restaurant", "Eatery", "Canteen", "Diner",
};

const std::vector<std::string> kHotelFirst = {
    "Comfort", "Regal", "Harmony", "Starway", "Evergreen", "Panorama",
    "Courtyard", "Meridian", "Lakeside", "Imperial",
};

struct DurationChoice {
    double lo, hi;
    int weight;
};

const std::vector<DurationChoice> kDurations = {
    {1.0, 2.0, 4}, {1.0, 3.0, 4}, {2.0, 3.0, 4}, {2.0, 4.0, 3}, {1.5, 3.0, 3}, {5.0, 10.0, 1},
};

double round1(double x) { return std::round(x * 10.0) / 10.0; }
double round2(double x) { return std::round(x * 100.0) / 100.0; }

} // namespace

Sandbox generate_synthetic(uint64_t seed, const SyntheticSpec& spec, int n_clusters_hint) {
    if (spec.cities < 1) throw std::invalid_argument("generate_synthetic: need at least one city");
    if (spec.attractions < 1) throw std::invalid_argument("generate_synthetic: need at least one attraction");
    if (n_clusters_hint < 1) throw std::invalid_argument("generate_synthetic: n_clusters_hint must be >= 1");

    Rng rng(seed);
    Sandbox sb;

    for (int i = 0; i < spec.cities; ++i)
        sb.cities.push_back(kCityPool[static_cast<size_t>(i) % kCityPool.size()] +
                            (i >= static_cast<int>(kCityPool.size()) ? std::to_string(i) : ""));
    const std::string dest = sb.cities.size() > 1 ? sb.cities[1] : sb.cities[0];
    const std::string origin = sb.cities[0];

    // Cluster centers on a coarse grid; ~8.9 km spacing keeps them separate
    // at the default 1 km epsilon while intra-cluster jitter stays ~0.3 km.
    double base_lat = 30.5 + rng.uniform_real(-0.1, 0.1);
    double base_lon = 114.3 + rng.uniform_real(-0.1, 0.1);
    std::vector<std::pair<double, double>> centers;
    for (int k = 0; k < n_clusters_hint; ++k) {
        centers.emplace_back(base_lat + 0.08 * (k / 3), base_lon + 0.08 * (k % 3));
    }

    // Unique attraction names in seeded order.
    std::vector<std::string> attraction_names;
    for (const auto& adj : kAttractionAdjectives)
        for (const auto& noun : kAttractionNouns) attraction_names.push_back(adj + " " + noun);
    rng.shuffle(attraction_names);

    int weight_total = 0;
    for (const auto& d : kDurations) weight_total += d.weight;

    for (int i = 0; i < spec.attractions; ++i) {
        const auto& center = centers[static_cast<size_t>(i) % centers.size()];
        Attraction a;
        a.id = "A" + std::to_string(100 + i);
        a.name = attraction_names[static_cast<size_t>(i) % attraction_names.size()];
        if (i >= static_cast<int>(attraction_names.size()))
            a.name += " " + std::to_string(i / attraction_names.size() + 1);
        a.city = dest;
        a.lat = center.first + rng.uniform_real(-0.003, 0.003);
        a.lon = center.second + rng.uniform_real(-0.003, 0.003);
        int g = static_cast<int>(rng.uniform_int(0, 9));
        a.grade = g < 2 ? Grade::FiveA : g < 5 ? Grade::FourA : g < 7 ? Grade::ThreeA : Grade::None;
        a.popularity = round1(rng.uniform_real(50.0, 100.0));
        a.rating = round1(rng.uniform_real(3.5, 5.0));
        a.entrance_fee = static_cast<double>(rng.uniform_int(0, 6) * 20);
        int open_choice = static_cast<int>(rng.uniform_int(0, 3));
        a.open = std::vector<Minutes>{420, 480, 510, 540}[static_cast<size_t>(open_choice)];
        int close_choice = static_cast<int>(rng.uniform_int(0, 3));
        a.close = std::vector<Minutes>{1050, 1080, 1140, 1320}[static_cast<size_t>(close_choice)];
        int dw = static_cast<int>(rng.uniform_int(0, weight_total - 1));
        for (const auto& d : kDurations) {
            if (dw < d.weight) {
                a.min_hours = d.lo;
                a.max_hours = d.hi;
                break;
            }
            dw -= d.weight;
        }
        // Half-day sites only make sense with early opening.
        if (a.min_hours >= 5.0) a.open = 420;
        if (rng.uniform_int(0, 9) < 3) a.admission_end = a.close - 60;
        int phrase_count = static_cast<int>(rng.uniform_int(2, 3));
        std::string features;
        for (int p = 0; p < phrase_count; ++p) {
            if (p) features += "; ";
            features += kFeaturePhrases[static_cast<size_t>(rng.uniform_int(
                0, static_cast<int64_t>(kFeaturePhrases.size()) - 1))];
        }
        a.feature_text = features;
        sb.attractions.push_back(std::move(a));
    }

    for (int i = 0; i < spec.restaurants; ++i) {
        const auto& center = centers[static_cast<size_t>(i) % centers.size()];
        Restaurant r;
        r.id = "R" + std::to_string(100 + i);
        r.name = kRestaurantFirst[static_cast<size_t>(i) % kRestaurantFirst.size()] + " " +
                 kRestaurantSecond[static_cast<size_t>((i / kRestaurantFirst.size()) + rng.uniform_int(0, 5)) %
                                   kRestaurantSecond.size()];
        if (std::any_of(sb.restaurants.begin(), sb.restaurants.end(), [&](const Restaurant& o) {
                return normalize_name(o.name) == normalize_name(r.name);
            }))
            r.name += " No." + std::to_string(i);
        r.city = dest;
        r.lat = center.first + rng.uniform_real(-0.004, 0.004);
        r.lon = center.second + rng.uniform_real(-0.004, 0.004);
        r.cuisine = cuisine_vocabulary()[static_cast<size_t>(
            rng.uniform_int(0, static_cast<int64_t>(cuisine_vocabulary().size()) - 1))];
        r.avg_price = round1(rng.uniform_real(60.0, 180.0));
        r.rating = round1(rng.uniform_real(3.0, 5.0));
        r.env_rating = round1(rng.uniform_real(5.0, 10.0));
        r.service_rating = round1(rng.uniform_real(5.0, 10.0));
        sb.restaurants.push_back(std::move(r));
    }

    const std::vector<std::pair<HotelCategory, std::pair<double, double>>> hotel_bands = {
        {HotelCategory::Economy, {80.0, 150.0}},
        {HotelCategory::Midscale, {160.0, 300.0}},
        {HotelCategory::Upscale, {310.0, 500.0}},
        {HotelCategory::Luxury, {520.0, 900.0}},
    };
    for (int i = 0; i < spec.hotels; ++i) {
        const auto& center = centers[static_cast<size_t>(i) % centers.size()];
        const auto& band = hotel_bands[static_cast<size_t>(i) % hotel_bands.size()];
        Hotel h;
        h.id = "H" + std::to_string(100 + i);
        h.name = kHotelFirst[static_cast<size_t>(i) % kHotelFirst.size()] + " Hotel";
        if (i >= static_cast<int>(kHotelFirst.size())) h.name += " " + std::to_string(i);
        h.city = dest;
        h.lat = center.first + rng.uniform_real(-0.004, 0.004);
        h.lon = center.second + rng.uniform_real(-0.004, 0.004);
        h.category = band.first;
        h.price_per_night = round2(rng.uniform_real(band.second.first, band.second.second));
        h.rating = round1(rng.uniform_real(3.5, 5.0));
        sb.hotels.push_back(std::move(h));
    }

    if (spec.cities >= 2 && spec.transport_legs > 0) {
        // Ordered so the first four legs in each direction cover all slots.
        const std::vector<Minutes> slot_departs = {450, 580, 780, 1110, 490, 630, 900, 1180};
        int outbound = (spec.transport_legs + 1) / 2;
        for (int i = 0; i < spec.transport_legs; ++i) {
            bool out = i < outbound;
            TransportLeg t;
            bool flight = (i % 2) == 0;
            t.mode = flight ? TransportMode::Flight : TransportMode::Train;
            t.id = (flight ? "CA" : "G") + std::to_string(1000 + static_cast<int>(rng.uniform_int(0, 8999)));
            while (sb.transport_index.count(normalize_name(t.id)) ||
                   std::any_of(sb.transport.begin(), sb.transport.end(),
                               [&](const TransportLeg& o) { return o.id == t.id; }))
                t.id += "X";
            t.origin_city = out ? origin : dest;
            t.dest_city = out ? dest : origin;
            int si = out ? (i % static_cast<int>(slot_departs.size()))
                         : ((i - outbound) % static_cast<int>(slot_departs.size()));
            t.depart = slot_departs[static_cast<size_t>(si)] + static_cast<Minutes>(rng.uniform_int(0, 3) * 5);
            t.arrive = t.depart + 95 + static_cast<Minutes>(rng.uniform_int(0, 8) * 5);
            t.price = round1(rng.uniform_real(180.0, 650.0));
            t.day_slot = slot_of(t.depart);
            sb.transport.push_back(std::move(t));
        }
    }

    sb.rebuild_indexes();
    return sb;
}

} // namespace tourplanner::sandbox
