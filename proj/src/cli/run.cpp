#include "tourplanner/cli/run.hpp"

#include "tourplanner/cli/config.hpp"
#include "tourplanner/core/errors.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/reward/reward.hpp"
#include "tourplanner/sandbox/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace tourplanner::cli {

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!content.empty() && (content.back() == '\n' || content.back() == '\r'))
        content.pop_back();
    return content;
}

RunConfig load_config(const std::string& config_path, uint64_t* seed_override) {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_json(load_json_file(config_path));
    if (seed_override) cfg.seed = *seed_override;
    return cfg;
}

void check_sandbox_hash(const std::string& recorded, const std::string& actual,
                        const std::string& what) {
    if (!recorded.empty() && recorded != actual)
        throw Error(what + " was produced against a different sandbox (hash " + recorded +
                    ", current " + actual + ")");
}

profile::UserProfile profile_for(const std::string& query_flag, const std::string& query_file,
                                 const ccot::Itinerary& it, const sandbox::Sandbox& sb) {
    std::string query = query_flag;
    if (query.empty() && !query_file.empty()) query = read_text_file(query_file);
    if (query.empty()) query = it.query;
    if (query.empty()) throw Error("no query available: pass --query/--query-file");
    return profile::build_profile(query, sb);
}

int cmd_sandbox_validate(const std::string& path) {
    auto sb = sandbox::load_sandbox(path);
    json summary{{"cities", sb.cities.size()},
                 {"attractions", sb.attractions.size()},
                 {"restaurants", sb.restaurants.size()},
                 {"hotels", sb.hotels.size()},
                 {"transport", sb.transport.size()},
                 {"sandbox_hash", sandbox::sandbox_hash(sb)}};
    std::cout << canon_dump(summary) << "\n";
    return 0;
}

int cmd_sandbox_gen(uint64_t seed, const sandbox::SyntheticSpec& spec, int clusters,
                    const std::string& out_path) {
    auto sb = sandbox::generate_synthetic(seed, spec, clusters);
    sandbox::save_sandbox(sb, out_path);
    std::cout << "wrote " << out_path << " (hash " << sandbox::sandbox_hash(sb) << ")\n";
    return 0;
}

int cmd_geo_cluster(const std::string& sandbox_path, int duration, const RunConfig& cfg) {
    auto sb = sandbox::load_sandbox(sandbox_path);
    std::vector<geo::GeoPoint> points;
    for (const auto& a : sb.attractions) points.push_back({a.lat, a.lon});
    geo::ClusterConfig cluster_cfg = cfg.cluster;
    cluster_cfg.min_clusters = duration;
    auto result = geo::adaptive_cluster(points, cluster_cfg);
    json centroids = json::array();
    for (const auto& c : result.centroids) centroids.push_back(json{{"lat", c.lat}, {"lon", c.lon}});
    json labels = json::array();
    for (size_t i = 0; i < sb.attractions.size(); ++i)
        labels.push_back(json{{"id", sb.attractions[i].id}, {"label", result.labels[i]}});
    std::cout << canon_dump(json{{"final_eps_km", result.final_eps_km},
                                 {"clusters", result.cluster_count()},
                                 {"centroids", centroids},
                                 {"labels", labels}})
              << "\n";
    return 0;
}

int cmd_recall_report(const std::string& query_flag, const std::string& sandbox_path,
                      const std::string& truth_path, const RunConfig& cfg) {
    auto sb = sandbox::load_sandbox(sandbox_path);
    auto built = build_providers(cfg, "", "");
    auto prof = profile::build_profile(query_flag, sb);

    recall::RecallConfig rc;
    rc.duration_days = prof.explicit_demands.duration_days;
    std::vector<sandbox::Attraction> in_city;
    for (const auto& a : sb.attractions)
        if (a.city == prof.explicit_demands.dest_city) in_city.push_back(a);
    if (in_city.empty()) throw Error("no attractions in the destination city");

    auto semantic = recall::semantic_recall(prof, in_city, *built.bundle.embed, rc.semantic_count());
    auto landmark = recall::landmark_recall(in_city, rc, rc.total_count());
    auto suggested = recall::llm_recall(prof, sb, *built.bundle.chat, rc.total_count());
    auto merged = recall::merge_recall(semantic, landmark, suggested, rc);

    json report{{"semantic_count", semantic.size()},
                {"landmark_count", landmark.size()},
                {"suggested_count", suggested.size()},
                {"merged_count", merged.attractions.size()}};
    json merged_ids = json::array();
    for (const auto& c : merged.attractions)
        merged_ids.push_back(
            json{{"id", c.attraction_id}, {"channel", recall::to_string(c.provenance)}});
    report["merged"] = merged_ids;
    if (!truth_path.empty()) {
        json truth_doc = load_json_file(truth_path);
        std::set<std::string> truth;
        for (const auto& id : truth_doc.value("ids", json::array()))
            truth.insert(id.get<std::string>());
        auto single = [&](const std::vector<recall::Candidate>& channel) {
            recall::CandidateSet s;
            s.attractions = channel;
            return recall::recall_rate(s, truth);
        };
        report["recall_rate"] = recall::recall_rate(merged, truth);
        report["recall_rate_semantic"] = single(semantic);
        report["recall_rate_landmark"] = single(landmark);
        report["recall_rate_suggested"] = single(suggested);
    }
    std::cout << canon_dump(report) << "\n";
    return 0;
}

int cmd_plan(const std::string& query_flag, const std::string& query_file,
             const std::string& sandbox_path, const std::string& out_path,
             const std::string& record_path, const std::string& config_path,
             std::optional<uint64_t> seed, const std::string& transcript_path,
             const std::string& replay_path) {
    uint64_t seed_value = seed.value_or(0);
    RunConfig cfg = load_config(config_path, seed ? &seed_value : nullptr);
    auto sb = sandbox::load_sandbox(sandbox_path);
    std::string sb_hash = sandbox::sandbox_hash(sb);

    if (query_flag.empty() && query_file.empty())
        throw Error("plan needs --query or --query-file");
    std::string query = query_flag.empty() ? read_text_file(query_file) : query_flag;
    std::string transcript = transcript_path;
    if (transcript.empty() && replay_path.empty() && !out_path.empty())
        transcript = (std::filesystem::path(out_path).parent_path() / "transcript.jsonl").string();

    auto built = build_providers(cfg, transcript, replay_path);
    auto outcome = ccot::plan_trip(query, sb, built.bundle, cfg.ccot);

    outcome.itinerary.sandbox_hash = sb_hash;
    outcome.itinerary.config_hash = cfg.config_hash();
    atomic_write(out_path, canon_dump(ccot::itinerary_to_json(outcome.itinerary)) + "\n");

    if (!record_path.empty()) {
        json records = json::array();
        for (const auto& r : outcome.records) records.push_back(r.to_json());
        json record_doc{{"config_hash", cfg.config_hash()},
                        {"sandbox_hash", sb_hash},
                        {"team", json::array()},
                        {"days", records}};
        for (const auto& a : outcome.team) record_doc["team"].push_back(ccot::agent_to_json(a));
        atomic_write(record_path, canon_dump(record_doc) + "\n");
    }
    if (!out_path.empty()) {
        json manifest{{"command", "plan"},
                      {"config", cfg.to_json()},
                      {"config_hash", cfg.config_hash()},
                      {"sandbox_hash", sb_hash},
                      {"seed", cfg.seed},
                      {"transcript", replay_path.empty() ? transcript : replay_path},
                      {"replayed", !replay_path.empty()}};
        auto manifest_path = std::filesystem::path(out_path).parent_path() / "manifest.json";
        atomic_write(manifest_path.string(), canon_dump(manifest) + "\n");
    }

    std::cout << canon_dump(json{{"eta", outcome.final_score.eta},
                                 {"total_cost", outcome.itinerary.total_cost},
                                 {"days", outcome.itinerary.days.size()},
                                 {"itinerary", out_path}})
              << "\n";
    return 0;
}

int cmd_validate(const std::string& itinerary_path, const std::string& sandbox_path,
                 const std::string& query_flag, const std::string& query_file) {
    auto sb = sandbox::load_sandbox(sandbox_path);
    auto it = ccot::itinerary_from_json(load_json_file(itinerary_path));
    check_sandbox_hash(it.sandbox_hash, sandbox::sandbox_hash(sb), "itinerary");
    auto prof = profile_for(query_flag, query_file, it, sb);

    auto hard = constraints::hard_score(it, sb, prof);
    json days = json::array();
    std::set<std::string> used_attractions, used_restaurants;
    for (size_t d = 0; d < it.days.size(); ++d) {
        constraints::DayContext ctx;
        ctx.is_first = d == 0;
        ctx.is_last = d + 1 == it.days.size();
        ctx.used_attraction_ids = used_attractions;
        ctx.used_restaurant_ids = used_restaurants;
        auto report = constraints::validate_proposal(it.days[d], sb, prof, ctx);
        days.push_back(json{{"day_label", it.days[d].day_label}, {"report", report.to_json()}});
        for (const auto& s : it.days[d].steps) {
            if (s.type == ccot::ActivityType::Sightseeing) {
                if (const auto* a = sb.find_attraction(prof.explicit_demands.dest_city, s.name))
                    used_attractions.insert(a->id);
            } else if (s.type == ccot::ActivityType::Meal) {
                if (const auto* r = sb.find_restaurant(prof.explicit_demands.dest_city, s.name))
                    used_restaurants.insert(r->id);
            }
        }
    }
    std::cout << canon_dump(json{{"hard", hard.to_json()}, {"days", days}}) << "\n";
    return hard.eta == 1.0 ? 0 : 1;
}

int cmd_score(const std::string& itinerary_path, const std::string& sandbox_path,
              const std::string& query_flag, const std::string& query_file,
              const std::string& reference_path, const std::string& config_path) {
    RunConfig cfg = load_config(config_path, nullptr);
    auto sb = sandbox::load_sandbox(sandbox_path);
    auto it = ccot::itinerary_from_json(load_json_file(itinerary_path));
    check_sandbox_hash(it.sandbox_hash, sandbox::sandbox_hash(sb), "itinerary");
    auto prof = profile_for(query_flag, query_file, it, sb);
    auto built = build_providers(cfg, "", "");

    auto hard = constraints::hard_score(it, sb, prof);
    reward::SoftScore soft;
    soft.s_budget =
        reward::budget_score(constraints::total_cost(it, sb), prof.explicit_demands.budget);
    double d_ref = cfg.reference_d_avg_km;
    if (!reference_path.empty()) {
        auto ref = ccot::itinerary_from_json(load_json_file(reference_path));
        d_ref = reward::route_stats(ref, sb).d_avg_km;
    }
    soft.s_route = reward::route_score(reward::route_stats(it, sb).d_avg_km, d_ref);
    double raw = built.bundle.reward->score_preference(
        prof.raw_query, canon_dump(ccot::itinerary_to_json(it)));
    soft.s_model = reward::preference_score(raw);

    auto breakdown = reward::total_reward(hard, soft, cfg.gate);
    std::cout << canon_dump(breakdown.to_json()) << "\n";
    return 0;
}

int cmd_gspo_eval(const std::string& batch_path, const std::string& config_path) {
    RunConfig cfg = load_config(config_path, nullptr);
    json batch = load_json_file(batch_path);
    std::vector<double> rewards = batch.at("rewards").get<std::vector<double>>();
    auto advantages = reward::group_advantages(rewards);
    std::vector<double> ratios;
    for (const auto& rollout : batch.value("rollouts", json::array())) {
        auto lp_new = rollout.at("logp_new").get<std::vector<double>>();
        auto lp_old = rollout.at("logp_old").get<std::vector<double>>();
        ratios.push_back(reward::seq_importance_ratio(lp_new, lp_old));
    }
    double eps_low = batch.value("eps_low", cfg.gspo_eps_low);
    double eps_high = batch.value("eps_high", cfg.gspo_eps_high);
    json out{{"advantages", advantages}};
    if (!ratios.empty()) {
        out["ratios"] = ratios;
        out["objective"] = reward::gspo_objective(ratios, advantages, eps_low, eps_high);
    }
    std::cout << canon_dump(out) << "\n";
    return 0;
}

int cmd_evaluate(const std::string& cases_dir, const std::string& sandbox_path,
                 const std::string& out_path, bool use_judge, const std::string& config_path) {
    RunConfig cfg = load_config(config_path, nullptr);
    auto sb = sandbox::load_sandbox(sandbox_path);
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(cases_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<eval::PlanCase> cases;
    for (const auto& f : files) cases.push_back(eval::case_from_json(load_json_file(f)));
    if (cases.empty()) throw Error("no case files in " + cases_dir);

    auto built = build_providers(cfg, "", "");
    auto report = eval::evaluate_cases(cases, sb, cfg.eval,
                                       use_judge ? built.bundle.judge.get() : nullptr);
    json doc = report.to_json();
    doc["config_hash"] = cfg.config_hash();
    doc["sandbox_hash"] = sandbox::sandbox_hash(sb);
    atomic_write(out_path, canon_dump(doc) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"TourPlanner pipeline: recall, clustering, consensus planning, validation, "
                 "reward math, and benchmark evaluation"};
    app.require_subcommand(1);

    // sandbox
    auto* sandbox_cmd = app.add_subcommand("sandbox", "Sandbox file tools");
    sandbox_cmd->require_subcommand(1);
    auto* sb_validate = sandbox_cmd->add_subcommand("validate", "Validate a sandbox file");
    std::string sb_path;
    sb_validate->add_option("path", sb_path, "Sandbox JSON file")->required();
    auto* sb_gen = sandbox_cmd->add_subcommand("gen", "Generate a synthetic sandbox");
    uint64_t gen_seed = 42;
    sandbox::SyntheticSpec spec;
    int gen_clusters = 4;
    std::string gen_out = "sandbox.json";
    sb_gen->add_option("--seed", gen_seed, "Generator seed");
    sb_gen->add_option("--cities", spec.cities, "City count");
    sb_gen->add_option("--attractions", spec.attractions, "Attraction count");
    sb_gen->add_option("--restaurants", spec.restaurants, "Restaurant count");
    sb_gen->add_option("--hotels", spec.hotels, "Hotel count");
    sb_gen->add_option("--transports", spec.transport_legs, "Transport leg count");
    sb_gen->add_option("--clusters", gen_clusters, "Spatial cluster hint");
    sb_gen->add_option("--out", gen_out, "Output path");

    // geo
    auto* geo_cmd = app.add_subcommand("geo", "Spatial tools");
    geo_cmd->require_subcommand(1);
    auto* geo_cluster = geo_cmd->add_subcommand("cluster", "Cluster sandbox attractions");
    std::string geo_sandbox;
    int geo_duration = 1;
    std::string geo_config;
    geo_cluster->add_option("--sandbox", geo_sandbox, "Sandbox file")->required();
    geo_cluster->add_option("--duration", geo_duration, "Trip duration (minimum clusters)")
        ->required();
    geo_cluster->add_option("--config", geo_config, "Config file");

    // recall
    auto* recall_cmd = app.add_subcommand("recall", "Candidate recall tools");
    recall_cmd->require_subcommand(1);
    auto* recall_report = recall_cmd->add_subcommand("report", "Per-channel recall report");
    std::string recall_query, recall_sandbox, recall_truth, recall_config;
    recall_report->add_option("--query", recall_query, "Query text")->required();
    recall_report->add_option("--sandbox", recall_sandbox, "Sandbox file")->required();
    recall_report->add_option("--truth", recall_truth, "Ground-truth ids JSON");
    recall_report->add_option("--config", recall_config, "Config file");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "Plan a trip end to end");
    std::string plan_query, plan_query_file, plan_sandbox, plan_out = "itinerary.json";
    std::string plan_record, plan_config, plan_transcript, plan_replay;
    std::optional<uint64_t> plan_seed;
    plan_cmd->add_option("--query", plan_query, "Query text");
    plan_cmd->add_option("--query-file", plan_query_file, "File holding the query");
    plan_cmd->add_option("--sandbox", plan_sandbox, "Sandbox file")->required();
    plan_cmd->add_option("--out", plan_out, "Itinerary output path");
    plan_cmd->add_option("--record", plan_record, "Arbitration record output path");
    plan_cmd->add_option("--config", plan_config, "Config file");
    plan_cmd->add_option("--seed", plan_seed, "Seed override");
    plan_cmd->add_option("--transcript", plan_transcript, "Transcript output path");
    plan_cmd->add_option("--replay", plan_replay, "Replay a recorded transcript");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Hard-validate an itinerary");
    std::string val_itinerary, val_sandbox, val_query, val_query_file;
    validate_cmd->add_option("--itinerary", val_itinerary, "Itinerary JSON")->required();
    validate_cmd->add_option("--sandbox", val_sandbox, "Sandbox file")->required();
    validate_cmd->add_option("--query", val_query, "Query text");
    validate_cmd->add_option("--query-file", val_query_file, "File holding the query");

    // score
    auto* score_cmd = app.add_subcommand("score", "Reward breakdown for an itinerary");
    std::string score_itinerary, score_sandbox, score_query, score_query_file, score_reference,
        score_config;
    score_cmd->add_option("--itinerary", score_itinerary, "Itinerary JSON")->required();
    score_cmd->add_option("--sandbox", score_sandbox, "Sandbox file")->required();
    score_cmd->add_option("--query", score_query, "Query text");
    score_cmd->add_option("--query-file", score_query_file, "File holding the query");
    score_cmd->add_option("--reference", score_reference, "Reference itinerary for route scoring");
    score_cmd->add_option("--config", score_config, "Config file");

    // gspo
    auto* gspo_cmd = app.add_subcommand("gspo", "Group-sequence policy math");
    gspo_cmd->require_subcommand(1);
    auto* gspo_eval = gspo_cmd->add_subcommand("eval", "Evaluate a rollout batch");
    std::string gspo_batch, gspo_config;
    gspo_eval->add_option("--batch", gspo_batch, "Batch JSON")->required();
    gspo_eval->add_option("--config", gspo_config, "Config file");

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Benchmark metrics over a case set");
    std::string eval_cases, eval_sandbox, eval_out = "report.json", eval_config;
    bool eval_judge = false;
    evaluate_cmd->add_option("--cases", eval_cases, "Directory of case JSON files")->required();
    evaluate_cmd->add_option("--sandbox", eval_sandbox, "Sandbox file")->required();
    evaluate_cmd->add_option("--out", eval_out, "Report output path");
    evaluate_cmd->add_flag("--judge", eval_judge, "Run the pairwise judge");
    evaluate_cmd->add_option("--config", eval_config, "Config file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (sb_validate->parsed()) return cmd_sandbox_validate(sb_path);
        if (sb_gen->parsed()) return cmd_sandbox_gen(gen_seed, spec, gen_clusters, gen_out);
        if (geo_cluster->parsed())
            return cmd_geo_cluster(geo_sandbox, geo_duration, load_config(geo_config, nullptr));
        if (recall_report->parsed())
            return cmd_recall_report(recall_query, recall_sandbox, recall_truth,
                                     load_config(recall_config, nullptr));
        if (plan_cmd->parsed())
            return cmd_plan(plan_query, plan_query_file, plan_sandbox, plan_out, plan_record,
                            plan_config, plan_seed, plan_transcript, plan_replay);
        if (validate_cmd->parsed())
            return cmd_validate(val_itinerary, val_sandbox, val_query, val_query_file);
        if (score_cmd->parsed())
            return cmd_score(score_itinerary, score_sandbox, score_query, score_query_file,
                             score_reference, score_config);
        if (gspo_eval->parsed()) return cmd_gspo_eval(gspo_batch, gspo_config);
        if (evaluate_cmd->parsed())
            return cmd_evaluate(eval_cases, eval_sandbox, eval_out, eval_judge, eval_config);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << canon_dump(json{{"error", "precondition"}, {"message", e.what()}}) << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << canon_dump(json{{"error", "domain"}, {"message", e.what()}}) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << canon_dump(json{{"error", "internal"}, {"message", e.what()}}) << "\n";
        return 1;
    }
}

} // namespace tourplanner::cli
