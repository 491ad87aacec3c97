#include "tourplanner/ccot/planner.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"
#include "tourplanner/providers/mock_provider.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace tourplanner;
using providers::MockProvider;

TEST_CASE("diversity weights are uniform for identical embeddings") {
    std::vector<std::vector<double>> embeddings(4, std::vector<double>{0.3, 0.7, 0.1});
    auto d = ccot::diversity_weights(embeddings);
    for (double w : d.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-12));
    double sum = 0;
    for (double w : d.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the two-identical-one-orthogonal fixture reproduces hand arithmetic") {
    std::vector<std::vector<double>> embeddings = {{1, 0}, {1, 0}, {0, 1}};
    auto d = ccot::diversity_weights(embeddings, 0.01);
    CHECK(d.mean_similarity[0] == doctest::Approx(0.5));
    CHECK(d.mean_similarity[1] == doctest::Approx(0.5));
    CHECK(d.mean_similarity[2] == doctest::Approx(0.0));
    CHECK(d.raw_weights[0] == doctest::Approx(1.9608).epsilon(1e-4));
    CHECK(d.raw_weights[2] == doctest::Approx(100.0));
    CHECK(d.weights[0] == doctest::Approx(0.0189).epsilon(1e-2));
    CHECK(d.weights[1] == doctest::Approx(0.0189).epsilon(1e-2));
    CHECK(d.weights[2] == doctest::Approx(0.9623).epsilon(1e-3));
}

TEST_CASE("permuting the embeddings permutes the weights") {
    std::vector<std::vector<double>> embeddings = {{1, 0, 0}, {0.8, 0.6, 0}, {0, 0, 1}, {0.5, 0.5, 0.7}};
    auto base = ccot::diversity_weights(embeddings);
    std::vector<size_t> perm = {2, 0, 3, 1};
    std::vector<std::vector<double>> permuted;
    for (size_t i : perm) permuted.push_back(embeddings[i]);
    auto moved = ccot::diversity_weights(permuted);
    for (size_t i = 0; i < perm.size(); ++i)
        CHECK(moved.weights[i] == doctest::Approx(base.weights[perm[i]]).epsilon(1e-12));
}

TEST_CASE("weights sum to one across random embedding sets") {
    Rng rng(9);
    for (int round = 0; round < 500; ++round) {
        size_t n = static_cast<size_t>(rng.uniform_int(2, 6));
        std::vector<std::vector<double>> embeddings;
        for (size_t i = 0; i < n; ++i) {
            std::vector<double> v(8);
            for (auto& x : v) x = rng.uniform_real(-1.0, 1.0);
            embeddings.push_back(v);
        }
        auto d = ccot::diversity_weights(embeddings);
        double sum = 0;
        for (double w : d.weights) {
            CHECK(w > 0.0);
            CHECK(w <= 1.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(ccot::diversity_weights({{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ccot::diversity_weights({{1.0, 0.0}, {0.0, 0.0}}), ZeroVectorError);
}

TEST_CASE("consensus scores are the weighted column sums") {
    std::vector<double> w = {0.5, 0.5};
    std::vector<std::vector<int>> s = {{8, 2}, {4, 6}};
    auto scores = ccot::consensus_scores(w, s);
    CHECK(scores[0] == doctest::Approx(6.0));
    CHECK(scores[1] == doctest::Approx(4.0));

    // Uniform weights reduce to column means.
    std::vector<double> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    std::vector<std::vector<int>> m = {{3, 9}, {6, 0}, {0, 3}};
    auto means = ccot::consensus_scores(uniform, m);
    CHECK(means[0] == doctest::Approx(3.0));
    CHECK(means[1] == doctest::Approx(4.0));

    CHECK_THROWS_AS(ccot::consensus_scores({0.5}, s), DimensionMismatchError);
}

TEST_CASE("per-reviewer constant shifts preserve the consensus argmax") {
    Rng rng(13);
    for (int round = 0; round < 1000; ++round) {
        size_t n = static_cast<size_t>(rng.uniform_int(2, 6));
        std::vector<std::vector<int>> scores(n, std::vector<int>(n));
        std::vector<double> raw(n);
        for (auto& x : raw) x = rng.uniform_real(0.01, 1.0);
        double total = 0;
        for (double x : raw) total += x;
        std::vector<double> weights;
        for (double x : raw) weights.push_back(x / total);
        for (auto& row : scores)
            for (auto& cell : row) cell = static_cast<int>(rng.uniform_int(-10, 10));

        auto base = ccot::consensus_scores(weights, scores);
        size_t base_argmax = 0;
        for (size_t j = 1; j < n; ++j)
            if (base[j] > base[base_argmax]) base_argmax = j;

        auto shifted = scores;
        size_t reviewer = static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(n) - 1));
        int shift = static_cast<int>(rng.uniform_int(-5, 5));
        for (auto& cell : shifted[reviewer]) cell += shift;
        auto after = ccot::consensus_scores(weights, shifted);
        size_t after_argmax = 0;
        for (size_t j = 1; j < n; ++j)
            if (after[j] > after[after_argmax]) after_argmax = j;

        // Every consensus value moves by exactly w_i * shift.
        for (size_t j = 0; j < n; ++j)
            CHECK(after[j] - base[j] == doctest::Approx(weights[reviewer] * shift).epsilon(1e-9));
        CHECK(after_argmax == base_argmax);
    }
}

TEST_CASE("top-k selection saturates and breaks ties as stated") {
    std::vector<std::string> ids = {"a", "b", "c", "d"};
    std::vector<double> consensus = {6.0, 4.0, 4.0, 9.0};
    std::vector<std::vector<int>> scores = {{6, 3, 5, 9}, {6, 5, 3, 9}, {6, 4, 4, 9}, {6, 4, 4, 9}};
    auto top = ccot::select_top_k(consensus, scores, ids, 3);
    REQUIRE(top.size() == 3);
    CHECK(ids[top[0]] == "d");
    CHECK(ids[top[1]] == "a");
    CHECK(ids[top[2]] == "b");  // max single review 5 beats c's 4

    auto all = ccot::select_top_k({1.0, 2.0}, {{1, 2}}, {"x", "y"}, 3);
    CHECK(all.size() == 2);

    auto one = ccot::select_top_k(consensus, scores, ids, 1);
    REQUIRE(one.size() == 1);
    CHECK(ids[one[0]] == "d");
}

TEST_CASE("agent instantiation validates team size and uniqueness") {
    MockProvider mock(3);

    SUBCASE("the auto mock yields a well-formed team") {
        auto team = ccot::instantiate_agents(testfx::wuhan_xian_query(), mock);
        CHECK(team.size() >= 4);
        CHECK(team.size() <= 6);
        std::set<std::string> ids;
        for (const auto& a : team) {
            CHECK(ids.insert(a.agent_id).second);
            CHECK_FALSE(a.objective.empty());
        }
    }

    SUBCASE("a three-agent team is too small even after the repair retry") {
        std::string three = R"([
            {"agent_id": "cultural_scholar", "objective": "Maximize cultural hours", "priorities": [], "personality": "curious"},
            {"agent_id": "foodie_explorer", "objective": "Maximize meal quality", "priorities": [], "personality": "social"},
            {"agent_id": "budget_manager", "objective": "Minimize total cost", "priorities": [], "personality": "frugal"}
        ])";
        mock.enqueue_chat(three);
        mock.enqueue_chat(three);
        CHECK_THROWS_AS(ccot::instantiate_agents("any query", mock), TeamSizeError);
    }

    SUBCASE("five unique agents are accepted as-is") {
        json team = json::array();
        for (int i = 0; i < 5; ++i)
            team.push_back(json{{"agent_id", "agent_" + std::to_string(i)},
                                {"objective", "Keep metric " + std::to_string(i) + " above 1"},
                                {"priorities", json::array()},
                                {"personality", "steady"}});
        mock.enqueue_chat(team.dump());
        auto parsed = ccot::instantiate_agents("any query", mock);
        CHECK(parsed.size() == 5);
    }

    SUBCASE("duplicate ids are schema errors naming the id") {
        json team = json::array();
        for (int i = 0; i < 4; ++i)
            team.push_back(json{{"agent_id", "twin"},
                                {"objective", "Objective with a number 5"},
                                {"priorities", json::array()},
                                {"personality", "steady"}});
        mock.enqueue_chat(team.dump());
        mock.enqueue_chat(team.dump());
        CHECK_THROWS_WITH_AS(ccot::instantiate_agents("any query", mock),
                             doctest::Contains("twin"), SchemaError);
    }

    SUBCASE("one repair retry can rescue a bad first reply") {
        mock.enqueue_chat("utter nonsense");
        json team = json::array();
        for (int i = 0; i < 4; ++i)
            team.push_back(json{{"agent_id", "agent_" + std::to_string(i)},
                                {"objective", "Hold budget under 4000 CNY"},
                                {"priorities", json::array()},
                                {"personality", "steady"}});
        mock.enqueue_chat(team.dump());
        auto parsed = ccot::instantiate_agents("any query", mock);
        CHECK(parsed.size() == 4);
    }
}

TEST_CASE("peer review rounds, clamps, and completes the matrix") {
    MockProvider mock(4);
    std::vector<ccot::AgentSpec> agents(3);
    agents[0].agent_id = "a";
    agents[1].agent_id = "b";
    agents[2].agent_id = "c";
    std::vector<ccot::Proposal> proposals(3);
    for (size_t i = 0; i < 3; ++i) {
        proposals[i].agent_id = agents[i].agent_id;
        proposals[i].day_label = "Day 1";
        proposals[i].steps = {testfx::make_step("09:00-10:00", "sightseeing", "Somewhere")};
    }

    // Reviewer a: fractional and out-of-range scores. b and c: plain.
    mock.enqueue_chat(R"({"a": {"score": 9.4, "critique": "self"},
                          "b": {"score": -12, "critique": "harsh"},
                          "c": {"score": 3, "critique": "fine"}})");
    mock.enqueue_chat(R"({"a": {"score": 1}, "b": {"score": 2}, "c": {"score": 3}})");
    mock.enqueue_chat(R"({"a": {"score": 0}, "b": {"score": 0}, "c": {"score": 10}})");

    auto review = ccot::peer_review(agents, proposals, "query", mock);
    CHECK(review.scores[0][0] == 9);    // 9.4 rounds down
    CHECK(review.scores[0][1] == -10);  // -12 clamps
    CHECK(review.scores[0][2] == 3);
    CHECK(review.scores[1][0] == 1);
    CHECK(review.scores[2][2] == 10);
    CHECK(review.warnings.empty());
    int entries = 0;
    for (const auto& row : review.scores) entries += static_cast<int>(row.size());
    CHECK(entries == 9);
}

TEST_CASE("missing review entries default to zero after one retry") {
    MockProvider mock(4);
    std::vector<ccot::AgentSpec> agents(2);
    agents[0].agent_id = "a";
    agents[1].agent_id = "b";
    std::vector<ccot::Proposal> proposals(2);
    proposals[0].agent_id = "a";
    proposals[1].agent_id = "b";

    mock.enqueue_chat(R"({"a": {"score": 5}})");  // b missing
    mock.enqueue_chat(R"({"a": {"score": 5}})");  // retry still missing
    mock.enqueue_chat(R"({"a": {"score": 1}, "b": {"score": 2}})");
    auto review = ccot::peer_review(agents, proposals, "query", mock);
    CHECK(review.scores[0][0] == 5);
    CHECK(review.scores[0][1] == 0);
    REQUIRE(review.warnings.size() == 1);
    CHECK(review.warnings[0].find("b") != std::string::npos);
}

TEST_CASE("canonical step text serializes times and names only") {
    auto plan = testfx::day_one_plan();
    auto text = ccot::canonical_step_text(plan);
    CHECK(text.find("07:45-09:20 CA8219") == 0);
    CHECK(text.find("Shaanxi History Museum") != std::string::npos);
    CHECK(text.find("Travel from") == std::string::npos);  // descriptions excluded
}

TEST_CASE("proposal parsing enforces the day-plan schema") {
    CHECK_THROWS_AS(ccot::proposal_from_json(json{{"day_label", "Day 1"}}), SchemaError);
    json bad_step{{"day_label", "Day 1"},
                  {"daily_cost", 10},
                  {"plan", json::array({json{{"time", "25:00-26:00"},
                                             {"activity type", "meal"},
                                             {"name", "x"}}})}};
    CHECK_THROWS_AS(ccot::proposal_from_json(bad_step), SchemaError);
    json bad_type{{"day_label", "Day 1"},
                  {"daily_cost", 10},
                  {"plan", json::array({json{{"time", "10:00-11:00"},
                                             {"activity type", "nap"},
                                             {"name", "x"}}})}};
    CHECK_THROWS_AS(ccot::proposal_from_json(bad_type), SchemaError);
}

namespace {

ccot::ProviderBundle mock_bundle(uint64_t seed) {
    ccot::ProviderBundle bundle;
    bundle.chat = std::make_shared<MockProvider>(seed ^ fnv1a64("chat"));
    bundle.embed = std::make_shared<MockProvider>(seed ^ fnv1a64("embed"));
    bundle.reward = std::make_shared<MockProvider>(seed ^ fnv1a64("reward"));
    bundle.judge = std::make_shared<MockProvider>(seed ^ fnv1a64("judge"));
    return bundle;
}

std::string synthetic_query(int duration) {
    profile::ExplicitDemands d;
    d.departure_day = "Thursday";
    d.return_day = "Sunday";
    d.departure_slot = sandbox::DaySlot::EarlyMorning;
    d.return_slot = sandbox::DaySlot::Evening;
    d.duration_days = duration;
    d.origin_city = "Jiangcheng";
    d.dest_city = "Yunzhou";
    d.budget = 5200;
    d.other_requirements = {"historical sites", "scenic parks"};
    d.cuisine_prefs = {"Hot Pot", "Seafood"};
    return profile::render_query(d);
}

} // namespace

TEST_CASE("a single-day trip plans end to end with a full record") {
    auto sb = sandbox::generate_synthetic(5, {}, 4);
    auto bundle = mock_bundle(11);
    ccot::CcotConfig cfg;
    auto outcome = ccot::plan_trip(synthetic_query(1), sb, bundle, cfg);
    CHECK(outcome.itinerary.days.size() == 1);
    REQUIRE(outcome.records.size() == 1);
    const auto& record = outcome.records[0];
    size_t n = record.agent_ids.size();
    CHECK(n >= 1);
    if (n >= 2) {
        CHECK(record.review.scores.size() == n);
        for (const auto& row : record.review.scores) CHECK(row.size() == n);
        double sum = 0;
        for (double w : record.diversity.weights) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(record.winners.size() == std::min<size_t>(3, n));
    }
    CHECK(outcome.final_score.eta == doctest::Approx(1.0));
}

TEST_CASE("multi-day trips never repeat venues across days") {
    auto sb = sandbox::generate_synthetic(21, {}, 4);
    auto bundle = mock_bundle(77);
    ccot::CcotConfig cfg;
    auto outcome = ccot::plan_trip(synthetic_query(3), sb, bundle, cfg);
    REQUIRE(outcome.itinerary.days.size() == 3);

    std::set<std::string> attraction_names, restaurant_names;
    for (const auto& day : outcome.itinerary.days) {
        for (const auto& s : day.steps) {
            if (s.type == ccot::ActivityType::Sightseeing)
                CHECK(attraction_names.insert(sandbox::normalize_name(s.name)).second);
            if (s.type == ccot::ActivityType::Meal)
                CHECK(restaurant_names.insert(sandbox::normalize_name(s.name)).second);
        }
    }
    CHECK(outcome.final_score.eta == doctest::Approx(1.0));
    CHECK(outcome.final_score.violations.empty());

    // The emitted consensus days all pass the validator they were screened by.
    auto prof = outcome.profile;
    std::set<std::string> used_a, used_r;
    for (size_t d = 0; d < outcome.itinerary.days.size(); ++d) {
        constraints::DayContext ctx;
        ctx.is_first = d == 0;
        ctx.is_last = d + 1 == outcome.itinerary.days.size();
        ctx.used_attraction_ids = used_a;
        ctx.used_restaurant_ids = used_r;
        auto report = constraints::validate_proposal(outcome.itinerary.days[d], sb, prof, ctx);
        CHECK(report.hard_pass());
        for (const auto& s : outcome.itinerary.days[d].steps) {
            if (const auto* a = sb.find_attraction("Yunzhou", s.name)) used_a.insert(a->id);
            if (const auto* r = sb.find_restaurant("Yunzhou", s.name)) used_r.insert(r->id);
        }
    }
}

TEST_CASE("identical seeds reproduce identical itineraries") {
    auto sb = sandbox::generate_synthetic(9, {}, 4);
    ccot::CcotConfig cfg;
    auto one = ccot::plan_trip(synthetic_query(2), sb, mock_bundle(5), cfg);
    auto two = ccot::plan_trip(synthetic_query(2), sb, mock_bundle(5), cfg);
    CHECK(canon_dump(ccot::itinerary_to_json(one.itinerary)) ==
          canon_dump(ccot::itinerary_to_json(two.itinerary)));
    auto three = ccot::plan_trip(synthetic_query(2), sb, mock_bundle(6), cfg);
    // A different seed is allowed to produce a different plan; determinism is
    // only promised per seed.
    CHECK(one.records.size() == three.records.size());
}

TEST_CASE("synthesis falls back to the top winner when repair fails") {
    auto sb = testfx::xian_sandbox();
    auto prof = testfx::xian_profile();
    MockProvider mock(2);

    ccot::PlanningContext ctx;
    ctx.day_index = 1;
    ctx.duration = 1;
    ctx.is_first = true;
    ctx.is_last = false;
    ctx.day_label = "Day 1";
    ctx.validation.is_first = true;
    for (const auto& a : sb.attractions) ctx.attractions.push_back(a);
    for (const auto& r : sb.restaurants) ctx.restaurants.push_back(r);
    ctx.hotel = sb.hotels[0];
    ctx.arrival_legs = {sb.transport[0]};

    auto winner = testfx::day_one_plan();
    winner.agent_id = "alpha";

    // Arbitration attempts (1 + 1 retry) both unparseable: verbatim fallback.
    mock.enqueue_chat("not a plan");
    mock.enqueue_chat("still not a plan");
    bool fallback = false;
    auto day = ccot::synthesize_day({winner}, {"fine"}, ctx, prof, mock, sb, 1, fallback);
    CHECK(fallback);
    CHECK(day.agent_id.empty());
    CHECK(day.steps.size() == winner.steps.size());

    // A valid scripted synthesis is taken as-is.
    auto scripted = testfx::day_one_plan();
    mock.enqueue_chat(ccot::proposal_to_json(scripted).dump());
    fallback = false;
    auto day2 = ccot::synthesize_day({winner}, {"fine"}, ctx, prof, mock, sb, 1, fallback);
    CHECK_FALSE(fallback);
    CHECK(day2.day_label == "Day 1");
}

TEST_CASE("an invalid synthesis followed by a valid repair is accepted") {
    auto sb = testfx::xian_sandbox();
    auto prof = testfx::xian_profile();
    MockProvider mock(2);

    ccot::PlanningContext ctx;
    ctx.day_index = 1;
    ctx.duration = 1;
    ctx.is_first = true;
    ctx.is_last = false;
    ctx.day_label = "Day 1";
    ctx.validation.is_first = true;
    ctx.hotel = sb.hotels[0];
    for (const auto& a : sb.attractions) ctx.attractions.push_back(a);

    auto winner = testfx::day_one_plan();
    winner.agent_id = "alpha";

    // Parseable but invalid synthesis (overlap), then a valid repair.
    auto broken = testfx::day_one_plan();
    broken.steps[1] = testfx::make_step("08:00-08:30", "check-in", "Kunyi Hotel", 387.0);
    mock.enqueue_chat(ccot::proposal_to_json(broken).dump());
    mock.enqueue_chat(ccot::proposal_to_json(testfx::day_one_plan()).dump());
    bool fallback = false;
    auto day = ccot::synthesize_day({winner}, {""}, ctx, prof, mock, sb, 0, fallback);
    CHECK_FALSE(fallback);
    CHECK(day.steps[1].name == "Kunyi Hotel");
    CHECK(day.steps[1].start == *parse_clock("10:15"));
}
