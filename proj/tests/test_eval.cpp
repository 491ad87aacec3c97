#include "tourplanner/eval/metrics.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"
#include "tourplanner/providers/mock_provider.hpp"
#include "tourplanner/reward/reward.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace tourplanner;
using providers::MockProvider;

namespace {

ccot::Itinerary generated_plan() {
    ccot::Itinerary it;
    it.query = testfx::wuhan_xian_query();
    it.origin_city = "Wuhan";
    it.city = "Xi'an";
    it.duration_days = 1;
    it.hotel_name = "Kunyi Hotel";
    it.arrival_leg = "CA8219";
    it.days = {testfx::day_one_plan()};
    return it;
}

// A reference plan over the same sandbox with slightly longer hops.
ccot::Itinerary reference_plan() {
    auto it = generated_plan();
    it.days[0].steps = {
        testfx::make_step("07:45-09:20", "transportation", "CA8219", 340.0, "flight"),
        testfx::make_step("10:15-10:45", "check-in", "Kunyi Hotel", 387.0),
        testfx::make_step("11:05-12:05", "meal", "Pier Story Hot Pot", 120.0),
        testfx::make_step("12:30-17:30", "sightseeing", "Shaanxi History Museum", 0.0),
        testfx::make_step("17:50-19:20", "meal", "Weng Kee Seafood", 124.5),
    };
    return it;
}

eval::PlanCase fixture_case() {
    eval::PlanCase c;
    c.query = testfx::wuhan_xian_query();
    c.generated = generated_plan();
    c.reference = reference_plan();
    return c;
}

} // namespace

TEST_CASE("feasibility flags mirror the hard-score sub-checks plus leg correctness") {
    auto sb = testfx::xian_sandbox();
    auto c = fixture_case();

    auto flags = feasibility(c, sb);
    CHECK(flags.sandbox_ok);
    CHECK(flags.completeness_ok);
    CHECK(flags.departure_ok);
    // The fixture itinerary has no return transportation step.
    CHECK_FALSE(flags.return_ok);

    // Cross-module consistency: the shared flags equal the indicators.
    auto prof = profile::build_profile(c.query, sb);
    auto hard = constraints::hard_score(c.generated, sb, prof);
    CHECK(flags.sandbox_ok == (hard.i_sandbox == 1));
    CHECK(flags.completeness_ok == (hard.i_comp == 1));

    auto bad = c;
    bad.generated.hotel_name = "Nonexistent Palace Hotel";
    CHECK_FALSE(feasibility(bad, sb).sandbox_ok);
}

TEST_CASE("a wrong-direction first leg fails the departure flag") {
    auto sb = testfx::xian_sandbox();
    auto c = fixture_case();
    // Return leg CZ3890 flies Xi'an -> Wuhan; using it to arrive is wrong.
    c.generated.days[0].steps[0] =
        testfx::make_step("07:45-09:20", "transportation", "CZ3890", 500.0, "flight");
    auto flags = feasibility(c, sb);
    CHECK_FALSE(flags.departure_ok);
}

TEST_CASE("rationality covers diversity, prices, windows, and budget") {
    auto sb = testfx::xian_sandbox();
    eval::EvalConfig cfg;
    auto c = fixture_case();

    auto flags = rationality(c, sb, cfg);
    // Museum 12:30-17:30 against opening 09:00-17:30 and a 5-10 h band.
    CHECK(flags.visit_time);
    CHECK(flags.visit_duration);
    CHECK(flags.diverse_restaurants);
    CHECK(flags.diverse_attractions);
    CHECK(flags.reasonable_meal_prices);
    CHECK(flags.budget_limit);

    SUBCASE("a repeated restaurant fails diversity") {
        auto bad = c;
        bad.generated.days[0].steps[4] = testfx::make_step(
            "17:50-19:20", "meal", "Beijing Zhengyangmen Roast Duck Restaurant", 121.5);
        CHECK_FALSE(rationality(bad, sb, cfg).diverse_restaurants);
    }

    SUBCASE("meal prices outside the widened band fail") {
        eval::EvalConfig narrow = cfg;
        narrow.meal_price_widening = -0.8;  // shrink the band to force a miss
        CHECK_FALSE(rationality(c, sb, narrow).reasonable_meal_prices);
    }

    SUBCASE("budget breaches fail the budget flag") {
        eval::EvalConfig strict = cfg;
        strict.budget_multiplier = 0.1;
        CHECK_FALSE(rationality(c, sb, strict).budget_limit);
    }
}

TEST_CASE("micro and macro follow the flag arithmetic") {
    auto [micro, macro] = eval::micro_macro({{true, true}, {true, false}});
    CHECK(micro == doctest::Approx(0.75));
    CHECK(macro == doctest::Approx(0.5));

    auto [m1, M1] = eval::micro_macro({{true, true, true}, {true, true, true}});
    CHECK(m1 == doctest::Approx(1.0));
    CHECK(M1 == doctest::Approx(1.0));

    CHECK_THROWS_AS(eval::micro_macro({}), std::invalid_argument);

    Rng rng(3);
    for (int round = 0; round < 1000; ++round) {
        size_t width = static_cast<size_t>(rng.uniform_int(1, 6));
        std::vector<std::vector<bool>> rows(static_cast<size_t>(rng.uniform_int(1, 8)));
        for (auto& row : rows) {
            row.resize(width);
            for (size_t i = 0; i < width; ++i) row[i] = rng.uniform_int(0, 1) == 1;
        }
        auto [micro_r, macro_r] = eval::micro_macro(rows);
        CHECK(macro_r <= micro_r + 1e-12);
        CHECK(micro_r >= 0.0);
        CHECK(micro_r <= 1.0);
    }
}

TEST_CASE("distance ratio is one against itself and scales linearly") {
    auto sb = testfx::xian_sandbox();
    auto c = fixture_case();
    c.reference = c.generated;
    CHECK(eval::distance_ratio(c, sb) == doctest::Approx(1.0));

    auto scaled = fixture_case();
    double gen = reward::route_stats(scaled.generated, sb).d_avg_km;
    double ref = reward::route_stats(scaled.reference, sb).d_avg_km;
    CHECK(eval::distance_ratio(scaled, sb) == doctest::Approx(gen / ref));
}

TEST_CASE("final pass combines both flag families with the route-length cap") {
    auto sb = testfx::xian_sandbox();
    eval::EvalConfig cfg;

    // Build a case that passes everything: same plan on both sides, with an
    // evening return leg so the departure/return flags hold for the query.
    auto full = fixture_case();
    ccot::Proposal last;
    last.day_label = "Day 2";
    last.daily_cost = 520.0;
    last.steps = {
        testfx::make_step("16:30-17:00", "check-out", "Kunyi Hotel"),
        testfx::make_step("19:00-20:45", "transportation", "CZ9999", 520.0, "flight"),
    };
    full.generated.days.push_back(last);
    full.generated.duration_days = 2;
    full.generated.return_leg = "CZ9999";
    full.reference = full.generated;
    CHECK(eval::final_pass(full, sb, cfg));

    // Identical plans sit exactly at the boundary ratio of 1.0; an inflated
    // limit of 1.0 (cap equal) still passes because the comparison is <=.
    eval::EvalConfig tight = cfg;
    tight.route_ratio_limit = 1.0;
    CHECK(eval::final_pass(full, sb, tight));

    // Nudging the cap below 1.0 flips it.
    tight.route_ratio_limit = 0.99;
    CHECK_FALSE(eval::final_pass(full, sb, tight));
}

TEST_CASE("surpass rate counts ties as matching and skips failed judgements") {
    auto sb = testfx::xian_sandbox();
    std::vector<eval::PlanCase> cases = {fixture_case(), fixture_case()};

    MockProvider judge(5);
    judge.enqueue_judge({4, 3, ""});
    judge.enqueue_judge({3, 3, ""});
    CHECK(eval::surpass_rate(cases, judge) == doctest::Approx(1.0));

    judge.enqueue_judge({2, 5, ""});
    judge.enqueue_judge({1, 5, ""});
    CHECK(eval::surpass_rate(cases, judge) == doctest::Approx(0.0));

    judge.enqueue_judge({4, 3, ""});
    judge.enqueue_judge({9, 1, "invalid"});  // schema error: case skipped
    int judged = 0, skipped = 0;
    CHECK(eval::surpass_rate(cases, judge, &judged, &skipped) == doctest::Approx(1.0));
    CHECK(judged == 1);
    CHECK(skipped == 1);
}

TEST_CASE("the report aggregates cases and embeds the conventions") {
    auto sb = testfx::xian_sandbox();
    eval::EvalConfig cfg;
    std::vector<eval::PlanCase> cases = {fixture_case()};
    MockProvider judge(6);
    auto report = eval::evaluate_cases(cases, sb, cfg, &judge);
    CHECK(report.feasibility_micro <= 1.0);
    CHECK(report.feasibility_macro <= report.feasibility_micro + 1e-12);
    CHECK(report.rationality_macro <= report.rationality_micro + 1e-12);
    CHECK(report.final_surpassing_rate.has_value());
    json doc = report.to_json();
    CHECK(doc.contains("conventions"));
    CHECK(doc["per_case"].size() == 1);

    auto case_doc = eval::case_to_json(cases[0]);
    auto round_trip = eval::case_from_json(case_doc);
    CHECK(round_trip.query == cases[0].query);
    CHECK(round_trip.generated.days.size() == cases[0].generated.days.size());
}
