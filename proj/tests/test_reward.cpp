#include "tourplanner/reward/reward.hpp"

#include "tourplanner/geo/geo.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace tourplanner;

TEST_CASE("budget score rewards utilization and decays past the budget") {
    CHECK(reward::budget_score(1000.0, 1000.0) == doctest::Approx(1.0));
    CHECK(reward::budget_score(500.0, 1000.0) == doctest::Approx(0.5));
    CHECK(reward::budget_score(1500.0, 1000.0) == doctest::Approx(0.5));
    CHECK(reward::budget_score(2000.0, 1000.0) == doctest::Approx(0.0));
    CHECK(reward::budget_score(3000.0, 1000.0) == doctest::Approx(0.0));
    // Continuity at the boundary: both branches agree at C = B.
    CHECK(reward::budget_score(1000.0 - 1e-9, 1000.0) ==
          doctest::Approx(reward::budget_score(1000.0 + 1e-9, 1000.0)).epsilon(1e-6));
}

TEST_CASE("route score saturates below the 0.8 ratio and decays exponentially") {
    CHECK(reward::route_score(0.8, 1.0) == doctest::Approx(1.0));
    CHECK(reward::route_score(0.5, 1.0) == doctest::Approx(1.0));
    CHECK(reward::route_score(1.8, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(reward::route_score(1.8, 1.0) == doctest::Approx(0.367879441).epsilon(1e-6));
    double prev = 1.0;
    for (double ratio = 0.9; ratio < 4.0; ratio += 0.1) {
        double s = reward::route_score(ratio, 1.0);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("preference score is a scaled tanh with the documented anchors") {
    CHECK(reward::preference_score(0.0) == doctest::Approx(0.0));
    CHECK(reward::preference_score(10.0) == doctest::Approx(std::tanh(10.0 / 6.0)).epsilon(1e-12));
    CHECK(reward::preference_score(10.0) == doctest::Approx(0.9311).epsilon(1e-4));
    CHECK(reward::preference_score(-10.0) == doctest::Approx(-0.9311).epsilon(1e-4));
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform_real(-50.0, 50.0);
        CHECK(reward::preference_score(-x) == doctest::Approx(-reward::preference_score(x)));
    }
}

TEST_CASE("gate hits 0.5 at the threshold and the published end values") {
    reward::GateConfig cfg;  // tau 0.75, k 28
    CHECK(reward::gate(0.75, cfg) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(reward::gate(1.0, cfg) == doctest::Approx(0.99909).epsilon(1e-4));
    CHECK(reward::gate(0.5, cfg) == doctest::Approx(0.000911).epsilon(1e-3));
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        double eta = i / 1000.0;
        double a = reward::gate(eta, cfg);
        CHECK(a > prev);
        CHECK(a > 0.0);
        CHECK(a < 1.0);
        prev = a;
    }
}

TEST_CASE("total reward composes the gate over the soft sum") {
    reward::GateConfig cfg;
    constraints::HardScore perfect;  // all ones by default
    reward::SoftScore soft{1.0, 1.0, 1.0};
    auto full = reward::total_reward(perfect, soft, cfg);
    CHECK(full.total == doctest::Approx(2.0 + reward::gate(1.0, cfg) * 3.0).epsilon(1e-12));
    CHECK(full.total == doctest::Approx(4.9973).epsilon(1e-3));

    constraints::HardScore half;
    half.i_sandbox = 0;
    half.i_rest = 0;
    half.i_attr = 0;
    half.finalize();
    CHECK(half.eta == doctest::Approx(0.5));
    auto masked = reward::total_reward(half, soft, cfg);
    CHECK(masked.total == doctest::Approx(1.0 + 0.000911 * 3.0).epsilon(1e-3));

    reward::SoftScore zero{0.0, 0.0, 0.0};
    for (double eta_case : {0.0, 0.25, 0.75, 1.0}) {
        constraints::HardScore h;
        h.eta = eta_case;  // exercise the formula directly
        h.r_hard = 2.0 * eta_case;
        auto r = reward::total_reward(h, zero, cfg);
        CHECK(r.total == doctest::Approx(h.r_hard));
    }
}

TEST_CASE("total reward is monotone in eta for nonnegative soft reward") {
    reward::GateConfig cfg;
    reward::SoftScore soft{0.5, 0.6, 0.2};
    double prev = -1e9;
    for (int i = 0; i <= 8; ++i) {
        constraints::HardScore h;
        h.eta = i / 8.0;
        h.r_hard = 2.0 * h.eta;
        auto r = reward::total_reward(h, soft, cfg);
        CHECK(r.total > prev);
        prev = r.total;
    }
}

TEST_CASE("route stats average per day then across days") {
    // Three venues per located day, with controlled consecutive distances.
    auto sb = testfx::xian_sandbox();
    // Day 1: museum -> duck restaurant -> crab restaurant. Day 2: wall -> hot pot.
    ccot::Itinerary it;
    it.city = "Xi'an";
    ccot::Proposal d1;
    d1.day_label = "Day 1";
    d1.steps = {
        testfx::make_step("09:00-11:00", "sightseeing", "Shaanxi History Museum"),
        testfx::make_step("11:30-12:30", "meal", "Beijing Zhengyangmen Roast Duck Restaurant"),
        testfx::make_step("18:00-19:00", "meal", "Haocheng Zhen Yangcheng Lake Hairy Crab"),
    };
    ccot::Proposal d2;
    d2.day_label = "Day 2";
    d2.steps = {
        testfx::make_step("09:00-11:00", "sightseeing", "Xi'an City Wall"),
        testfx::make_step("12:00-13:00", "meal", "Pier Story Hot Pot"),
    };
    it.days = {d1, d2};
    it.duration_days = 2;

    auto stats = reward::route_stats(it, sb);
    // Independent second pass over the same sandbox coordinates.
    const auto* a1 = sb.find_attraction("Xi'an", "Shaanxi History Museum");
    const auto* r1 = sb.find_restaurant("Xi'an", "Beijing Zhengyangmen Roast Duck Restaurant");
    const auto* r2 = sb.find_restaurant("Xi'an", "Haocheng Zhen Yangcheng Lake Hairy Crab");
    const auto* a2 = sb.find_attraction("Xi'an", "Xi'an City Wall");
    const auto* r3 = sb.find_restaurant("Xi'an", "Pier Story Hot Pot");
    double s11 = geo::haversine_km({a1->lat, a1->lon}, {r1->lat, r1->lon});
    double s12 = geo::haversine_km({r1->lat, r1->lon}, {r2->lat, r2->lon});
    double s21 = geo::haversine_km({a2->lat, a2->lon}, {r3->lat, r3->lon});
    CHECK(stats.day_avg_km[0] == doctest::Approx((s11 + s12) / 2.0));
    CHECK(stats.day_avg_km[1] == doctest::Approx(s21));
    CHECK(stats.d_avg_km == doctest::Approx(((s11 + s12) / 2.0 + s21) / 2.0));
    CHECK(stats.total_km == doctest::Approx(s11 + s12 + s21));
}

TEST_CASE("route stats ignore days without two located venues") {
    auto sb = testfx::xian_sandbox();
    ccot::Itinerary it;
    it.city = "Xi'an";
    ccot::Proposal d1;
    d1.steps = {testfx::make_step("09:00-11:00", "sightseeing", "Shaanxi History Museum")};
    it.days = {d1};
    CHECK_THROWS_AS(reward::route_stats(it, sb), NoLocatedDaysError);
}

TEST_CASE("group advantages match hand arithmetic with population std") {
    auto a = reward::group_advantages({1.0, 2.0, 3.0});
    CHECK(a[0] == doctest::Approx(-1.224744871).epsilon(1e-8));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(1.224744871).epsilon(1e-8));

    auto zeros = reward::group_advantages({5.0, 5.0, 5.0, 5.0});
    for (double z : zeros) CHECK(z == 0.0);
}

TEST_CASE("group advantages are standardized on random groups") {
    Rng rng(77);
    for (int round = 0; round < 500; ++round) {
        size_t g = static_cast<size_t>(rng.uniform_int(2, 16));
        std::vector<double> rewards;
        for (size_t i = 0; i < g; ++i) rewards.push_back(rng.uniform_real(-5.0, 5.0));
        auto adv = reward::group_advantages(rewards);
        double mean = 0, var = 0;
        for (double x : adv) mean += x;
        mean /= static_cast<double>(adv.size());
        for (double x : adv) var += (x - mean) * (x - mean);
        var /= static_cast<double>(adv.size());
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
    }
}

TEST_CASE("sequence importance ratio normalizes by length") {
    std::vector<double> same{-1.5, -2.0, -0.5};
    CHECK(reward::seq_importance_ratio(same, same) == doctest::Approx(1.0));

    // Every token ratio e: the sequence ratio is e regardless of length.
    std::vector<double> lp_new{1.0, 2.0, 3.0};
    std::vector<double> lp_old{0.0, 1.0, 2.0};
    CHECK(reward::seq_importance_ratio(lp_new, lp_old) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    std::vector<double> doubled_new{1.0, 2.0, 3.0, 1.0, 2.0, 3.0};
    std::vector<double> doubled_old{0.0, 1.0, 2.0, 0.0, 1.0, 2.0};
    CHECK(reward::seq_importance_ratio(doubled_new, doubled_old) ==
          doctest::Approx(reward::seq_importance_ratio(lp_new, lp_old)).epsilon(1e-12));

    CHECK_THROWS_AS(reward::seq_importance_ratio({1.0}, {1.0, 2.0}), LengthMismatchError);
}

TEST_CASE("clipped objective matches scalar clip arithmetic") {
    // One-element batches isolate the per-rollout terms.
    CHECK(reward::gspo_objective({1.5}, {1.0}) == doctest::Approx(1.0004).epsilon(1e-12));
    CHECK(reward::gspo_objective({0.5}, {-1.0}) == doctest::Approx(-0.9997).epsilon(1e-12));

    // Neutral ratios reduce to the mean advantage, zero for standardized groups.
    auto adv = reward::group_advantages({3.0, 1.0, 2.0, 4.0});
    std::vector<double> ones(adv.size(), 1.0);
    CHECK(reward::gspo_objective(ones, adv) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("clipped objective matches an independent scalar reference on random batches") {
    Rng rng(123);
    const double eps_low = 0.0003, eps_high = 0.0004;
    for (int round = 0; round < 200; ++round) {
        size_t g = static_cast<size_t>(rng.uniform_int(2, 12));
        std::vector<double> ratios, adv;
        for (size_t i = 0; i < g; ++i) {
            ratios.push_back(std::exp(rng.uniform_real(-0.01, 0.01)));
            adv.push_back(rng.uniform_real(-2.0, 2.0));
        }
        double expected = 0.0;
        for (size_t i = 0; i < g; ++i) {
            double clipped = ratios[i];
            if (clipped < 1.0 - eps_low) clipped = 1.0 - eps_low;
            if (clipped > 1.0 + eps_high) clipped = 1.0 + eps_high;
            double a = ratios[i] * adv[i];
            double b = clipped * adv[i];
            expected += a < b ? a : b;
        }
        expected /= static_cast<double>(g);
        CHECK(reward::gspo_objective(ratios, adv, eps_low, eps_high) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("objective slope with respect to an unclipped ratio equals its advantage") {
    // Finite differences around a ratio inside the clip band.
    std::vector<double> ratios{1.0, 1.0002};
    std::vector<double> adv{0.7, -0.3};
    double h = 1e-7;
    auto up = ratios, down = ratios;
    up[0] += h;
    down[0] -= h;
    double slope = (reward::gspo_objective(up, adv) - reward::gspo_objective(down, adv)) / (2 * h);
    // Mean over G of min(...) contributes adv[0]/G for the unclipped ratio.
    CHECK(slope == doctest::Approx(adv[0] / 2.0).epsilon(1e-4));
}
