#include "tourplanner/ccot/planner.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/providers/structured.hpp"

#include <algorithm>

namespace tourplanner::ccot {

namespace {

json attraction_entry(const sandbox::Attraction& a) {
    json j{{"id", a.id},
           {"name", a.name},
           {"cluster", a.cluster_label.value_or(-1)},
           {"lat", a.lat},
           {"lon", a.lon},
           {"grade", sandbox::to_string(a.grade)},
           {"popularity", a.popularity},
           {"rating", a.rating},
           {"entrance_fee", a.entrance_fee},
           {"opening_hours", format_window(a.open, a.close)},
           {"min_hours", a.min_hours},
           {"max_hours", a.max_hours},
           {"features", a.feature_text}};
    if (a.admission_end) j["admission_end"] = format_clock(*a.admission_end);
    return j;
}

json restaurant_entry(const sandbox::Restaurant& r) {
    return json{{"id", r.id},
                {"name", r.name},
                {"cluster", r.cluster_label.value_or(-1)},
                {"cuisine", r.cuisine},
                {"avg_price", r.avg_price},
                {"rating", r.rating},
                {"lat", r.lat},
                {"lon", r.lon}};
}

json leg_entry(const sandbox::TransportLeg& t) {
    return json{{"id", t.id},
                {"mode", sandbox::to_string(t.mode)},
                {"origin_city", t.origin_city},
                {"dest_city", t.dest_city},
                {"depart", format_clock(t.depart)},
                {"arrive", format_clock(t.arrive)},
                {"price", t.price},
                {"day_slot", sandbox::to_string(t.day_slot)}};
}

Proposal parse_day_plan(const std::string& reply) {
    return proposal_from_json(providers::parse_json_payload(reply));
}

std::string first_failure(const constraints::RuleReport& report) {
    if (report.violations.empty()) return "unspecified rule violation";
    const auto& v = report.violations.front();
    return v.rule + ": " + v.entity + " (" + v.detail + ")";
}

} // namespace

json PlanningContext::given_info(const profile::UserProfile& prof) const {
    json attractions_json = json::array();
    for (const auto& a : attractions) attractions_json.push_back(attraction_entry(a));
    json restaurants_json = json::array();
    for (const auto& r : restaurants) restaurants_json.push_back(restaurant_entry(r));

    json info{{"city", prof.explicit_demands.dest_city},
              {"origin_city", prof.explicit_demands.origin_city},
              {"budget", prof.explicit_demands.budget},
              {"duration", duration},
              {"nights", std::max(0, duration - 1)},
              {"meal_range", json::array({prof.inferred.meal_min, prof.inferred.meal_max})},
              {"hotel_category", sandbox::to_string(prof.inferred.hotel_category)},
              {"departure_slot", sandbox::to_string(prof.explicit_demands.departure_slot)},
              {"return_slot", sandbox::to_string(prof.explicit_demands.return_slot)},
              {"day",
               json{{"index", day_index},
                    {"label", day_label},
                    {"is_first", is_first},
                    {"is_last", is_last}}},
              {"attractions", std::move(attractions_json)},
              {"restaurants", std::move(restaurants_json)}};
    if (hotel) {
        info["hotel"] = json{{"id", hotel->id},
                             {"name", hotel->name},
                             {"category", sandbox::to_string(hotel->category)},
                             {"price_per_night", hotel->price_per_night},
                             {"rating", hotel->rating},
                             {"lat", hotel->lat},
                             {"lon", hotel->lon},
                             {"cluster", hotel->cluster_label.value_or(-1)}};
    }
    if (is_first) {
        json legs = json::array();
        for (const auto& t : arrival_legs) legs.push_back(leg_entry(t));
        info["arrival_legs"] = std::move(legs);
    }
    if (is_last) {
        json legs = json::array();
        for (const auto& t : return_legs) legs.push_back(leg_entry(t));
        info["return_legs"] = std::move(legs);
    }
    return info;
}

json PlanningContext::prior_days_json() const {
    json arr = json::array();
    for (const auto& d : prior_days) arr.push_back(proposal_to_json(d));
    return arr;
}

Proposal generate_skeleton(const PlanningContext& ctx, const profile::UserProfile& prof,
                           providers::Provider& chat, const sandbox::Sandbox& sb, int retries) {
    if (ctx.attractions.empty())
        throw std::invalid_argument("generate_skeleton: context has no candidate attractions");

    AgentSpec base;
    base.agent_id = "base";
    base.objective = "Produce a geographically coherent base routing skeleton that satisfies every "
                     "scheduling rule";
    base.priorities = {"Logical sequencing", "Cluster locality", "Rule compliance"};
    base.personality = "Systematic, neutral";

    providers::ChatRequest req;
    req.system_prompt = prompts::day_plan_system(agent_to_json(base).dump(), ctx.day_label);
    req.user_prompt = prompts::day_plan_user(ctx.given_info(prof).dump(),
                                             ctx.prior_days_json().dump(), prof.raw_query);
    Proposal skeleton = providers::chat_structured<Proposal>(
        chat, req, retries, [](const std::string& reply) { return parse_day_plan(reply); });
    skeleton.agent_id = "base";

    auto report = constraints::validate_proposal(skeleton, sb, prof, ctx.validation);
    if (!report.hard_pass())
        throw ValidationError("skeleton failed validation: " + first_failure(report));
    return skeleton;
}

std::optional<Proposal> refine_proposal(const AgentSpec& agent, const Proposal& skeleton,
                                        const PlanningContext& ctx,
                                        const profile::UserProfile& prof,
                                        providers::Provider& chat, const sandbox::Sandbox& sb,
                                        int retries, std::string& reason) {
    providers::ChatRequest req;
    req.system_prompt = prompts::day_plan_system(agent_to_json(agent).dump(), ctx.day_label);
    json user_context = ctx.given_info(prof);
    user_context["base_skeleton"] = proposal_to_json(skeleton);
    req.user_prompt =
        prompts::day_plan_user(user_context.dump(), ctx.prior_days_json().dump(), prof.raw_query);

    Proposal refined;
    try {
        refined = providers::chat_structured<Proposal>(
            chat, req, retries, [](const std::string& reply) { return parse_day_plan(reply); });
    } catch (const Error& e) {
        reason = std::string("unparseable: ") + e.what();
        return std::nullopt;
    }
    refined.agent_id = agent.agent_id;
    refined.day_label = ctx.day_label;

    auto report = constraints::validate_proposal(refined, sb, prof, ctx.validation);
    if (!report.hard_pass()) {
        reason = first_failure(report);
        return std::nullopt;
    }
    return refined;
}

Proposal synthesize_day(const std::vector<Proposal>& winners,
                        const std::vector<std::string>& winner_critiques,
                        const PlanningContext& ctx, const profile::UserProfile& prof,
                        providers::Provider& chat, const sandbox::Sandbox& sb, int retries,
                        bool& used_fallback) {
    if (winners.empty()) throw std::invalid_argument("synthesize_day: no winners");
    used_fallback = false;

    json plans = json::array();
    for (const auto& w : winners) plans.push_back(proposal_to_json(w));
    std::string critique_summary;
    for (size_t i = 0; i < winners.size(); ++i) {
        critique_summary += winners[i].agent_id + ": ";
        critique_summary += i < winner_critiques.size() ? winner_critiques[i] : "";
        critique_summary += "\n";
    }

    providers::ChatRequest req;
    req.system_prompt = prompts::arbitration_system(ctx.day_label);
    req.user_prompt = prompts::arbitration_user(
        critique_summary, ctx.given_info(prof).dump(), plans.dump(), prof.raw_query,
        prof.explicit_demands.budget, ctx.is_first, ctx.is_last, ctx.prior_days_json().dump());

    auto finalize = [&](Proposal day) {
        day.agent_id.clear();
        day.day_label = ctx.day_label;
        return day;
    };

    std::optional<Proposal> candidate;
    try {
        candidate = providers::chat_structured<Proposal>(
            chat, req, retries, [](const std::string& reply) { return parse_day_plan(reply); });
    } catch (const Error&) {
        candidate.reset();
    }
    if (candidate) {
        Proposal day = finalize(*candidate);
        if (constraints::validate_proposal(day, sb, prof, ctx.validation).hard_pass()) return day;

        // One repair round before falling back to the top winner verbatim.
        providers::ChatRequest fix;
        fix.system_prompt = prompts::fixer_system();
        fix.user_prompt = prompts::fixer_user(prof.raw_query, proposal_to_json(day).dump(),
                                              ctx.given_info(prof).dump());
        try {
            Proposal repaired = finalize(providers::chat_structured<Proposal>(
                chat, fix, retries, [](const std::string& reply) { return parse_day_plan(reply); }));
            if (constraints::validate_proposal(repaired, sb, prof, ctx.validation).hard_pass())
                return repaired;
        } catch (const Error&) {
        }
    }
    used_fallback = true;
    return finalize(winners.front());
}

PlanOutcome plan_trip(const std::string& query, const sandbox::Sandbox& sb,
                      const ProviderBundle& providers, const CcotConfig& cfg) {
    PlanOutcome out;
    out.profile = profile::build_profile(
        query, sb, cfg.use_provider_extraction ? providers.chat.get() : nullptr);
    const auto& demands = out.profile.explicit_demands;
    const int duration = demands.duration_days;

    recall::RecallConfig recall_cfg;
    recall_cfg.duration_days = duration;
    out.candidates = recall::run_recall(out.profile, sb, *providers.embed, *providers.chat, recall_cfg);
    if (out.candidates.attractions.empty())
        throw PlanningFailure("plan_trip: recall produced no candidate attractions");

    // Cluster the candidate attractions and anchor venues around them.
    std::vector<sandbox::Attraction> candidate_attractions;
    for (const auto& c : out.candidates.attractions) {
        for (const auto& a : sb.attractions) {
            if (a.id == c.attraction_id) {
                candidate_attractions.push_back(a);
                break;
            }
        }
    }
    std::vector<sandbox::Hotel> city_hotels;
    for (const auto& h : sb.hotels)
        if (h.city == demands.dest_city) city_hotels.push_back(h);
    std::vector<sandbox::Restaurant> city_restaurants;
    for (const auto& r : sb.restaurants)
        if (r.city == demands.dest_city) city_restaurants.push_back(r);

    geo::ClusterConfig cluster_cfg = cfg.cluster;
    cluster_cfg.min_clusters = duration;
    std::vector<sandbox::Attraction> labeled = candidate_attractions;
    std::vector<sandbox::Restaurant> labeled_restaurants = city_restaurants;
    std::vector<sandbox::Hotel> labeled_hotels = city_hotels;
    try {
        std::vector<geo::GeoPoint> points;
        for (const auto& a : candidate_attractions) points.push_back({a.lat, a.lon});
        auto clusters = geo::adaptive_cluster(points, cluster_cfg);
        auto view = geo::anchor(clusters, candidate_attractions, city_hotels, city_restaurants);
        labeled = view.attractions;
        labeled_restaurants = view.restaurants;
        labeled_hotels = view.hotels;
    } catch (const Error&) {
        // Too few or too scattered candidates: plan over the unlabeled pool.
    }

    // Pin the trip hotel: inferred category, cheapest first.
    std::optional<sandbox::Hotel> trip_hotel;
    for (const auto& h : labeled_hotels) {
        if (h.category != out.profile.inferred.hotel_category) continue;
        if (!trip_hotel || h.price_per_night < trip_hotel->price_per_night ||
            (h.price_per_night == trip_hotel->price_per_night && h.id < trip_hotel->id))
            trip_hotel = h;
    }
    if (!trip_hotel && !labeled_hotels.empty()) {
        trip_hotel = labeled_hotels.front();
        for (const auto& h : labeled_hotels)
            if (h.price_per_night < trip_hotel->price_per_night) trip_hotel = h;
    }

    std::vector<sandbox::TransportLeg> arrival_legs, return_legs;
    for (const auto& t : sb.transport) {
        if (t.origin_city == demands.origin_city && t.dest_city == demands.dest_city)
            arrival_legs.push_back(t);
        else if (t.origin_city == demands.dest_city && t.dest_city == demands.origin_city)
            return_legs.push_back(t);
    }

    out.team = instantiate_agents(query, *providers.chat, cfg.team_min, cfg.team_max);

    std::set<std::string> used_attraction_ids, used_restaurant_ids;
    std::vector<Proposal> consensus_days;

    for (int day = 1; day <= duration; ++day) {
        PlanningContext ctx;
        ctx.day_index = day;
        ctx.duration = duration;
        ctx.is_first = day == 1;
        ctx.is_last = day == duration;
        ctx.day_label = "Day " + std::to_string(day);
        for (const auto& a : labeled)
            if (!used_attraction_ids.count(a.id)) ctx.attractions.push_back(a);
        for (const auto& r : labeled_restaurants)
            if (!used_restaurant_ids.count(r.id)) ctx.restaurants.push_back(r);
        ctx.hotel = trip_hotel;
        ctx.arrival_legs = arrival_legs;
        ctx.return_legs = return_legs;
        ctx.prior_days = consensus_days;
        ctx.validation.is_first = ctx.is_first;
        ctx.validation.is_last = ctx.is_last;
        ctx.validation.used_attraction_ids = used_attraction_ids;
        ctx.validation.used_restaurant_ids = used_restaurant_ids;

        Proposal skeleton;
        try {
            skeleton = generate_skeleton(ctx, out.profile, *providers.chat, sb,
                                         cfg.structured_retries);
        } catch (const Error& e) {
            throw PlanningFailure("plan_trip: no usable skeleton for " + ctx.day_label + ": " +
                                  e.what());
        }

        ArbitrationRecord record;
        record.day_label = ctx.day_label;

        std::vector<Proposal> valid;
        std::vector<AgentSpec> valid_agents;
        for (const auto& agent : out.team) {
            std::string reason;
            auto refined = refine_proposal(agent, skeleton, ctx, out.profile, *providers.chat, sb,
                                           cfg.structured_retries, reason);
            if (refined) {
                valid.push_back(std::move(*refined));
                valid_agents.push_back(agent);
            } else {
                record.excluded.emplace_back(agent.agent_id, reason);
            }
        }
        if (valid.empty())
            throw PlanningFailure("plan_trip: no valid proposal for " + ctx.day_label);
        for (const auto& p : valid) record.agent_ids.push_back(p.agent_id);

        std::vector<Proposal> winners;
        std::vector<std::string> winner_critiques;
        if (valid.size() == 1) {
            record.diversity.weights = {1.0};
            record.consensus = {0.0};
            record.winners = {valid[0].agent_id};
            winners = valid;
            winner_critiques = {""};
        } else {
            std::vector<std::string> texts;
            for (const auto& p : valid) texts.push_back(canonical_step_text(p));
            record.embeddings = providers.embed->embed(texts);
            record.diversity = diversity_weights(record.embeddings, cfg.diversity_smoothing);
            record.review = peer_review(valid_agents, valid, out.profile.raw_query, *providers.chat);
            record.consensus = consensus_scores(record.diversity.weights, record.review.scores);
            auto top = select_top_k(record.consensus, record.review.scores, record.agent_ids,
                                    cfg.top_k);
            for (size_t idx : top) {
                winners.push_back(valid[idx]);
                record.winners.push_back(valid[idx].agent_id);
                // The strongest peer critique of this winner, for the arbiter.
                std::string critique;
                int best = -11;
                for (size_t i = 0; i < record.review.scores.size(); ++i) {
                    if (record.review.scores[i][idx] > best) {
                        best = record.review.scores[i][idx];
                        critique = record.review.critiques[i][idx];
                    }
                }
                winner_critiques.push_back(critique);
            }
        }

        Proposal day_plan = synthesize_day(winners, winner_critiques, ctx, out.profile,
                                           *providers.chat, sb, cfg.structured_retries,
                                           record.synthesis_fallback);
        for (const auto& s : day_plan.steps) {
            if (s.type == ActivityType::Sightseeing) {
                if (const auto* a = sb.find_attraction(demands.dest_city, s.name))
                    used_attraction_ids.insert(a->id);
            } else if (s.type == ActivityType::Meal) {
                if (const auto* r = sb.find_restaurant(demands.dest_city, s.name))
                    used_restaurant_ids.insert(r->id);
            }
        }
        consensus_days.push_back(day_plan);
        out.records.push_back(std::move(record));
    }

    out.itinerary.query = query;
    out.itinerary.origin_city = demands.origin_city;
    out.itinerary.city = demands.dest_city;
    out.itinerary.duration_days = duration;
    out.itinerary.days = consensus_days;
    if (trip_hotel) out.itinerary.hotel_name = trip_hotel->name;
    for (const auto& s : consensus_days.front().steps) {
        if (s.type == ActivityType::Transportation) {
            out.itinerary.arrival_leg = s.name;
            break;
        }
    }
    for (auto it = consensus_days.back().steps.rbegin(); it != consensus_days.back().steps.rend();
         ++it) {
        if (it->type == ActivityType::Transportation) {
            out.itinerary.return_leg = it->name;
            break;
        }
    }
    out.itinerary.total_cost = constraints::total_cost(out.itinerary, sb);
    out.final_score = constraints::hard_score(out.itinerary, sb, out.profile);
    return out;
}

} // namespace tourplanner::ccot
