#include "tourplanner/geo/geo.hpp"

#include "tourplanner/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tourplanner::geo {

namespace {
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
} // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    double lat1 = a.lat * kDegToRad, lat2 = b.lat * kDegToRad;
    double dlat = (b.lat - a.lat) * kDegToRad;
    double dlon = (b.lon - a.lon) * kDegToRad;
    double s1 = std::sin(dlat / 2.0), s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::vector<int> dbscan(const std::vector<GeoPoint>& points, double eps_km, int min_samples) {
    if (eps_km <= 0) throw std::invalid_argument("dbscan: eps must be positive");
    if (min_samples < 1) throw std::invalid_argument("dbscan: min_samples must be >= 1");
    const size_t n = points.size();
    std::vector<std::vector<size_t>> neighbors(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (haversine_km(points[i], points[j]) <= eps_km) neighbors[i].push_back(j);
        }
    }
    std::vector<bool> core(n);
    for (size_t i = 0; i < n; ++i) core[i] = neighbors[i].size() >= static_cast<size_t>(min_samples);

    std::vector<int> labels(n, -1);
    int next_label = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!core[i] || labels[i] != -1) continue;
        int label = next_label++;
        std::vector<size_t> frontier{i};
        labels[i] = label;
        while (!frontier.empty()) {
            size_t p = frontier.back();
            frontier.pop_back();
            for (size_t q : neighbors[p]) {
                if (core[q] && labels[q] == -1) {
                    labels[q] = label;
                    frontier.push_back(q);
                }
            }
        }
    }
    // Border points: nearest core within eps, ties to the lower core index.
    for (size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        double best = std::numeric_limits<double>::infinity();
        int best_label = -1;
        for (size_t q : neighbors[i]) {
            if (!core[q]) continue;
            double d = haversine_km(points[i], points[q]);
            if (d < best) {
                best = d;
                best_label = labels[q];
            }
        }
        labels[i] = best_label;
    }
    return labels;
}

ClusterResult adaptive_cluster(const std::vector<GeoPoint>& points, const ClusterConfig& cfg) {
    if (points.size() < static_cast<size_t>(cfg.min_samples))
        throw InsufficientPointsError("adaptive_cluster: fewer points than min_samples");

    double eps = cfg.eps0_km;
    std::vector<int> labels = dbscan(points, eps, cfg.min_samples);
    auto count_clusters = [](const std::vector<int>& ls) {
        int mx = -1;
        for (int l : ls) mx = std::max(mx, l);
        return mx + 1;
    };
    while (count_clusters(labels) < cfg.min_clusters && eps > cfg.eps_floor_km) {
        eps *= cfg.eps_decay;
        labels = dbscan(points, eps, cfg.min_samples);
    }

    ClusterResult result;
    result.labels = labels;
    result.final_eps_km = eps;
    int k = count_clusters(labels);
    result.centroids.resize(static_cast<size_t>(k));
    std::vector<int> counts(static_cast<size_t>(k), 0);
    for (size_t i = 0; i < points.size(); ++i) {
        int l = labels[i];
        if (l < 0) continue;
        result.centroids[static_cast<size_t>(l)].lat += points[i].lat;
        result.centroids[static_cast<size_t>(l)].lon += points[i].lon;
        counts[static_cast<size_t>(l)]++;
    }
    for (int c = 0; c < k; ++c) {
        result.centroids[static_cast<size_t>(c)].lat /= counts[static_cast<size_t>(c)];
        result.centroids[static_cast<size_t>(c)].lon /= counts[static_cast<size_t>(c)];
    }
    return result;
}

AnchoredView anchor(const ClusterResult& clusters,
                    const std::vector<sandbox::Attraction>& attractions,
                    const std::vector<sandbox::Hotel>& hotels,
                    const std::vector<sandbox::Restaurant>& restaurants) {
    if (clusters.labels.size() != attractions.size())
        throw std::invalid_argument("anchor: clusters were built from a different attraction set");
    if (clusters.centroids.empty()) throw NoClustersError("anchor: all points are noise");

    AnchoredView view;
    view.centroids = clusters.centroids;
    view.attractions = attractions;
    for (size_t i = 0; i < attractions.size(); ++i)
        view.attractions[i].cluster_label = clusters.labels[i];

    auto nearest = [&](double lat, double lon) {
        size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < clusters.centroids.size(); ++c) {
            double d = haversine_km({lat, lon}, clusters.centroids[c]);
            if (d < best_d) {  // strict: ties keep the lower cluster index
                best_d = d;
                best = c;
            }
        }
        return std::make_pair(static_cast<int>(best), best_d);
    };

    view.hotels = hotels;
    view.hotel_centroid_km.reserve(hotels.size());
    for (auto& h : view.hotels) {
        auto [label, dist] = nearest(h.lat, h.lon);
        h.cluster_label = label;
        view.hotel_centroid_km.push_back(dist);
    }
    view.restaurants = restaurants;
    view.restaurant_centroid_km.reserve(restaurants.size());
    for (auto& r : view.restaurants) {
        auto [label, dist] = nearest(r.lat, r.lon);
        r.cluster_label = label;
        view.restaurant_centroid_km.push_back(dist);
    }
    return view;
}

} // namespace tourplanner::geo
