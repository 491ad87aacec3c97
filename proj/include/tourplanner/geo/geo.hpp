#pragma once

#include "tourplanner/sandbox/model.hpp"

#include <vector>

namespace tourplanner::geo {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

struct ClusterConfig {
    int min_samples = 4;
    double eps0_km = 1.0;
    int min_clusters = 1;  // set to trip duration by the pipeline
    double eps_decay = 0.8;
    double eps_floor_km = 0.1;
};

struct ClusterResult {
    std::vector<int> labels;  // -1 = noise
    std::vector<GeoPoint> centroids;
    double final_eps_km = 0.0;
    int cluster_count() const { return static_cast<int>(centroids.size()); }
};

// Great-circle distance, Earth radius 6371 km.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

// Deterministic DBSCAN: clusters are connected components of core points
// under the eps-ball graph, numbered by first core index; border points join
// the cluster of their nearest core point (ties to the lower core index).
std::vector<int> dbscan(const std::vector<GeoPoint>& points, double eps_km, int min_samples);

// Run dbscan at eps0, shrinking eps by eps_decay while the cluster count is
// below min_clusters and eps stays above the floor. Returns the last result.
ClusterResult adaptive_cluster(const std::vector<GeoPoint>& points, const ClusterConfig& cfg);

struct AnchoredView {
    std::vector<sandbox::Attraction> attractions;  // with cluster_label set
    std::vector<sandbox::Restaurant> restaurants;  // label of nearest centroid
    std::vector<sandbox::Hotel> hotels;
    std::vector<double> restaurant_centroid_km;
    std::vector<double> hotel_centroid_km;
    std::vector<GeoPoint> centroids;
};

// Attractions must be the point set the clustering ran on, in the same order.
AnchoredView anchor(const ClusterResult& clusters,
                    const std::vector<sandbox::Attraction>& attractions,
                    const std::vector<sandbox::Hotel>& hotels,
                    const std::vector<sandbox::Restaurant>& restaurants);

} // namespace tourplanner::geo
