#include "tourplanner/geo/geo.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

using namespace tourplanner;
using geo::GeoPoint;

namespace {

// O(n^2) reference: core points, union-find over core-core edges, border
// points to their nearest core. Written independently of geo::dbscan.
std::vector<int> dbscan_reference(const std::vector<GeoPoint>& pts, double eps, int min_samples) {
    const size_t n = pts.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) dist[i][j] = geo::haversine_km(pts[i], pts[j]);

    std::vector<bool> core(n, false);
    for (size_t i = 0; i < n; ++i) {
        int count = 0;
        for (size_t j = 0; j < n; ++j)
            if (dist[i][j] <= eps) count++;
        core[i] = count >= min_samples;
    }
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (core[i] && core[j] && dist[i][j] <= eps) parent[find(i)] = find(j);

    std::vector<int> labels(n, -1);
    std::map<size_t, int> root_label;
    int next = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        size_t root = find(i);
        if (!root_label.count(root)) root_label[root] = next++;
        labels[i] = root_label[root];
    }
    for (size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        double best = 1e18;
        int best_label = -1;
        for (size_t j = 0; j < n; ++j) {
            if (!core[j] || dist[i][j] > eps) continue;
            if (dist[i][j] < best) {
                best = dist[i][j];
                best_label = labels[j];
            }
        }
        labels[i] = best_label;
    }
    return labels;
}

// Partition equality up to relabeling.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> fwd, rev;
    for (size_t i = 0; i < a.size(); ++i) {
        if ((a[i] == -1) != (b[i] == -1)) return false;
        if (a[i] == -1) continue;
        auto f = fwd.find(a[i]);
        if (f == fwd.end()) {
            if (rev.count(b[i])) return false;
            fwd[a[i]] = b[i];
            rev[b[i]] = a[i];
        } else if (f->second != b[i]) {
            return false;
        }
    }
    return true;
}

std::vector<GeoPoint> random_points(Rng& rng, size_t n, double spread_deg) {
    std::vector<GeoPoint> pts;
    for (size_t i = 0; i < n; ++i)
        pts.push_back({30.0 + rng.uniform_real(0.0, spread_deg),
                       114.0 + rng.uniform_real(0.0, spread_deg)});
    return pts;
}

} // namespace

TEST_CASE("haversine identity and the one-degree arc") {
    GeoPoint p{12.5, -33.25};
    CHECK(geo::haversine_km(p, p) == doctest::Approx(0.0));
    // One degree of longitude on the equator: R * pi/180.
    CHECK(geo::haversine_km({0, 0}, {0, 1}) == doctest::Approx(111.194926645).epsilon(1e-6));
}

TEST_CASE("haversine symmetry and triangle inequality on random triples") {
    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        GeoPoint a{rng.uniform_real(-89, 89), rng.uniform_real(-179, 179)};
        GeoPoint b{rng.uniform_real(-89, 89), rng.uniform_real(-179, 179)};
        GeoPoint c{rng.uniform_real(-89, 89), rng.uniform_real(-179, 179)};
        double ab = geo::haversine_km(a, b);
        double ba = geo::haversine_km(b, a);
        CHECK(ab == doctest::Approx(ba));
        CHECK(ab >= 0.0);
        CHECK(ab <= geo::haversine_km(a, c) + geo::haversine_km(c, b) + 1e-6);
    }
}

TEST_CASE("dbscan saturates coincident points and labels isolated noise") {
    std::vector<GeoPoint> pts(5, GeoPoint{30.0, 114.0});
    auto labels = geo::dbscan(pts, 1.0, 4);
    for (int l : labels) CHECK(l == 0);

    pts.push_back({31.0, 114.0});  // ~111 km away
    labels = geo::dbscan(pts, 1.0, 4);
    CHECK(labels.back() == -1);
}

TEST_CASE("dbscan matches the quadratic reference on random instances") {
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        auto pts = random_points(rng, 200, 0.05);
        double eps = rng.uniform_real(0.5, 2.0);
        int min_samples = static_cast<int>(rng.uniform_int(2, 6));
        auto got = geo::dbscan(pts, eps, min_samples);
        auto want = dbscan_reference(pts, eps, min_samples);
        REQUIRE(same_partition(got, want));
    }
}

TEST_CASE("dbscan partition is invariant under input permutation") {
    Rng rng(11);
    auto pts = random_points(rng, 120, 0.04);
    auto base = geo::dbscan(pts, 1.0, 4);
    std::vector<size_t> perm(pts.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<GeoPoint> shuffled(pts.size());
    for (size_t i = 0; i < perm.size(); ++i) shuffled[i] = pts[perm[i]];
    auto permuted = geo::dbscan(shuffled, 1.0, 4);
    std::vector<int> realigned(pts.size());
    for (size_t i = 0; i < perm.size(); ++i) realigned[perm[i]] = permuted[i];
    CHECK(same_partition(base, realigned));
}

TEST_CASE("adaptive clustering keeps separated groups at the initial epsilon") {
    std::vector<GeoPoint> pts;
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < 5; ++i)
            pts.push_back({30.0 + 0.2 * c, 114.0 + 0.001 * i});
    geo::ClusterConfig cfg;
    cfg.min_clusters = 4;
    auto result = geo::adaptive_cluster(pts, cfg);
    CHECK(result.cluster_count() == 4);
    CHECK(result.final_eps_km == doctest::Approx(1.0));
    for (int l : result.labels) CHECK(l >= 0);
}

TEST_CASE("adaptive clustering terminates at the floor on one dense blob") {
    std::vector<GeoPoint> pts;
    Rng rng(3);
    for (int i = 0; i < 30; ++i)
        pts.push_back({30.0 + rng.uniform_real(0, 0.002), 114.0 + rng.uniform_real(0, 0.002)});
    geo::ClusterConfig cfg;
    cfg.min_clusters = 3;
    auto result = geo::adaptive_cluster(pts, cfg);
    CHECK(result.cluster_count() < 3);  // unreachable target, result still returned
    CHECK(result.final_eps_km <= cfg.eps_floor_km);

    int max_iterations =
        static_cast<int>(std::ceil(std::log(cfg.eps_floor_km / cfg.eps0_km) /
                                   std::log(cfg.eps_decay))) +
        1;
    double eps = cfg.eps0_km;
    int steps = 1;
    while (eps > cfg.eps_floor_km) {
        eps *= cfg.eps_decay;
        steps++;
    }
    CHECK(steps <= max_iterations);
    CHECK(result.final_eps_km == doctest::Approx(eps));
}

TEST_CASE("cluster count grows monotonically as epsilon decays on a hierarchical fixture") {
    // Two super-groups 5.5 km apart, each splitting into two tight sub-groups
    // 0.44 km apart: large epsilon sees 2 clusters, small epsilon sees 4.
    Rng rng(19);
    std::vector<GeoPoint> pts;
    for (double super_lat : {30.0, 30.05}) {
        for (double sub_offset : {-0.002, 0.002}) {
            for (int i = 0; i < 8; ++i)
                pts.push_back({super_lat + sub_offset + rng.uniform_real(-0.0002, 0.0002),
                               114.0 + rng.uniform_real(-0.0002, 0.0002)});
        }
    }
    double eps = 1.0;
    int prev = -1;
    for (int i = 0; i < 12; ++i) {
        auto labels = geo::dbscan(pts, eps, 4);
        int count = 0;
        for (int l : labels) count = std::max(count, l + 1);
        if (prev >= 0) CHECK(count >= prev);  // shrinking eps never merges clusters here
        prev = count;
        eps *= 0.8;
    }
    CHECK(prev == 4);
}

TEST_CASE("every non-noise cluster has at least min_samples members") {
    Rng rng(23);
    for (int round = 0; round < 10; ++round) {
        auto pts = random_points(rng, 100, 0.03);
        auto labels = geo::dbscan(pts, 1.0, 4);
        std::map<int, int> sizes;
        for (int l : labels)
            if (l >= 0) sizes[l]++;
        for (const auto& [label, size] : sizes) CHECK(size >= 4);
    }
}

TEST_CASE("anchor assigns venues to their nearest centroid") {
    std::vector<GeoPoint> pts;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 4; ++i) pts.push_back({30.0 + 0.2 * c, 114.0});
    geo::ClusterConfig cfg;
    cfg.min_clusters = 3;
    auto clusters = geo::adaptive_cluster(pts, cfg);
    REQUIRE(clusters.cluster_count() == 3);

    std::vector<sandbox::Attraction> attractions(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        attractions[i].id = "A" + std::to_string(i);
        attractions[i].lat = pts[i].lat;
        attractions[i].lon = pts[i].lon;
    }
    sandbox::Hotel at_centroid;
    at_centroid.id = "H0";
    at_centroid.lat = clusters.centroids[1].lat;
    at_centroid.lon = clusters.centroids[1].lon;

    Rng rng(5);
    std::vector<sandbox::Restaurant> restaurants;
    for (int i = 0; i < 100; ++i) {
        sandbox::Restaurant r;
        r.id = "R" + std::to_string(i);
        r.lat = 30.0 + rng.uniform_real(-0.1, 0.6);
        r.lon = 114.0 + rng.uniform_real(-0.1, 0.1);
        restaurants.push_back(r);
    }
    auto view = geo::anchor(clusters, attractions, {at_centroid}, restaurants);

    CHECK(view.hotels[0].cluster_label == 1);
    CHECK(view.hotel_centroid_km[0] == doctest::Approx(0.0));

    for (size_t i = 0; i < restaurants.size(); ++i) {
        // Exhaustive nearest-centroid oracle.
        int best = -1;
        double best_d = 1e18;
        for (size_t c = 0; c < clusters.centroids.size(); ++c) {
            double d = geo::haversine_km({restaurants[i].lat, restaurants[i].lon},
                                         clusters.centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        CHECK(view.restaurants[i].cluster_label == best);
        CHECK(view.restaurant_centroid_km[i] == doctest::Approx(best_d));
    }
}

TEST_CASE("anchor refuses an all-noise clustering") {
    geo::ClusterResult clusters;
    clusters.labels = {-1, -1};
    std::vector<sandbox::Attraction> attractions(2);
    CHECK_THROWS_AS(geo::anchor(clusters, attractions, {}, {}), NoClustersError);
}

TEST_CASE("adaptive clustering needs at least min_samples points") {
    geo::ClusterConfig cfg;
    std::vector<GeoPoint> three(3, GeoPoint{30, 114});
    CHECK_THROWS_AS(geo::adaptive_cluster(three, cfg), InsufficientPointsError);
}
