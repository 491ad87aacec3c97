#include "tourplanner/cli/config.hpp"

#include "tourplanner/core/rng.hpp"
#include "tourplanner/providers/http_provider.hpp"
#include "tourplanner/providers/mock_provider.hpp"

#include <stdexcept>

namespace tourplanner::cli {

namespace {

json provider_to_json(const ProviderChoice& p) {
    return json{{"type", p.type},
                {"endpoint_url", p.http.endpoint_url},
                {"api_key_env", p.http.api_key_env},
                {"model_name", p.http.model_name},
                {"timeout_seconds", p.http.timeout_seconds},
                {"max_retries", p.http.max_retries},
                {"parallelism_limit", p.http.parallelism_limit},
                {"replay_path", p.replay_path}};
}

ProviderChoice provider_from_json(const json& doc, const ProviderChoice& defaults) {
    ProviderChoice p = defaults;
    if (!doc.is_object()) return p;
    p.type = doc.value("type", p.type);
    p.http.endpoint_url = doc.value("endpoint_url", p.http.endpoint_url);
    p.http.api_key_env = doc.value("api_key_env", p.http.api_key_env);
    p.http.model_name = doc.value("model_name", p.http.model_name);
    p.http.timeout_seconds = doc.value("timeout_seconds", p.http.timeout_seconds);
    p.http.max_retries = doc.value("max_retries", p.http.max_retries);
    p.http.parallelism_limit = doc.value("parallelism_limit", p.http.parallelism_limit);
    p.replay_path = doc.value("replay_path", p.replay_path);
    return p;
}

} // namespace

json RunConfig::to_json() const {
    return json{
        {"seed", seed},
        {"cluster",
         json{{"min_samples", cluster.min_samples},
              {"eps0_km", cluster.eps0_km},
              {"eps_decay", cluster.eps_decay},
              {"eps_floor_km", cluster.eps_floor_km}}},
        {"ccot",
         json{{"team_min", ccot.team_min},
              {"team_max", ccot.team_max},
              {"top_k", ccot.top_k},
              {"diversity_smoothing", ccot.diversity_smoothing},
              {"structured_retries", ccot.structured_retries},
              {"use_provider_extraction", ccot.use_provider_extraction}}},
        {"gate", json{{"tau", gate.tau}, {"k", gate.k}}},
        {"gspo", json{{"eps_low", gspo_eps_low}, {"eps_high", gspo_eps_high}}},
        {"reference_d_avg_km", reference_d_avg_km},
        {"eval",
         json{{"meal_price_widening", eval.meal_price_widening},
              {"budget_multiplier", eval.budget_multiplier},
              {"route_ratio_limit", eval.route_ratio_limit}}},
        {"providers",
         json{{"chat", provider_to_json(chat)},
              {"embed", provider_to_json(embed)},
              {"reward", provider_to_json(reward_model)},
              {"judge", provider_to_json(judge)}}}};
}

RunConfig RunConfig::from_json(const json& doc) {
    RunConfig cfg;
    if (!doc.is_object()) return cfg;
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("cluster")) {
        const auto& c = doc["cluster"];
        cfg.cluster.min_samples = c.value("min_samples", cfg.cluster.min_samples);
        cfg.cluster.eps0_km = c.value("eps0_km", cfg.cluster.eps0_km);
        cfg.cluster.eps_decay = c.value("eps_decay", cfg.cluster.eps_decay);
        cfg.cluster.eps_floor_km = c.value("eps_floor_km", cfg.cluster.eps_floor_km);
    }
    if (doc.contains("ccot")) {
        const auto& c = doc["ccot"];
        cfg.ccot.team_min = c.value("team_min", cfg.ccot.team_min);
        cfg.ccot.team_max = c.value("team_max", cfg.ccot.team_max);
        cfg.ccot.top_k = c.value("top_k", cfg.ccot.top_k);
        cfg.ccot.diversity_smoothing = c.value("diversity_smoothing", cfg.ccot.diversity_smoothing);
        cfg.ccot.structured_retries = c.value("structured_retries", cfg.ccot.structured_retries);
        cfg.ccot.use_provider_extraction =
            c.value("use_provider_extraction", cfg.ccot.use_provider_extraction);
    }
    if (doc.contains("gate")) {
        cfg.gate.tau = doc["gate"].value("tau", cfg.gate.tau);
        cfg.gate.k = doc["gate"].value("k", cfg.gate.k);
    }
    if (doc.contains("gspo")) {
        cfg.gspo_eps_low = doc["gspo"].value("eps_low", cfg.gspo_eps_low);
        cfg.gspo_eps_high = doc["gspo"].value("eps_high", cfg.gspo_eps_high);
    }
    cfg.reference_d_avg_km = doc.value("reference_d_avg_km", cfg.reference_d_avg_km);
    if (doc.contains("eval")) {
        const auto& e = doc["eval"];
        cfg.eval.meal_price_widening = e.value("meal_price_widening", cfg.eval.meal_price_widening);
        cfg.eval.budget_multiplier = e.value("budget_multiplier", cfg.eval.budget_multiplier);
        cfg.eval.route_ratio_limit = e.value("route_ratio_limit", cfg.eval.route_ratio_limit);
    }
    if (doc.contains("providers")) {
        const auto& p = doc["providers"];
        if (p.contains("chat")) cfg.chat = provider_from_json(p["chat"], cfg.chat);
        if (p.contains("embed")) cfg.embed = provider_from_json(p["embed"], cfg.embed);
        if (p.contains("reward")) cfg.reward_model = provider_from_json(p["reward"], cfg.reward_model);
        if (p.contains("judge")) cfg.judge = provider_from_json(p["judge"], cfg.judge);
    }
    cfg.cluster.min_clusters = 1;  // pinned per trip duration at plan time
    return cfg;
}

std::string RunConfig::config_hash() const { return hash_hex(json_hash(to_json())); }

BuiltProviders build_providers(const RunConfig& cfg, const std::string& transcript_path,
                               const std::string& replay_path) {
    BuiltProviders built;
    if (!replay_path.empty()) {
        auto replay = std::make_shared<providers::ReplayProvider>(replay_path);
        built.bundle = {replay, replay, replay, replay};
        return built;
    }
    if (!transcript_path.empty())
        built.transcript = std::make_shared<providers::TranscriptWriter>(transcript_path);

    auto make = [&](const ProviderChoice& choice, const char* slot) -> providers::ProviderPtr {
        if (choice.type == "mock") {
            return std::make_shared<providers::MockProvider>(cfg.seed ^ fnv1a64(slot), choice.http,
                                                             built.transcript);
        }
        if (choice.type == "http")
            return std::make_shared<providers::HttpProvider>(choice.http, built.transcript);
        if (choice.type == "replay")
            return std::make_shared<providers::ReplayProvider>(choice.replay_path);
        throw std::invalid_argument(std::string("unknown provider type for ") + slot + ": " +
                                    choice.type);
    };
    built.bundle.chat = make(cfg.chat, "chat");
    built.bundle.embed = make(cfg.embed, "embed");
    built.bundle.reward = make(cfg.reward_model, "reward");
    built.bundle.judge = make(cfg.judge, "judge");
    return built;
}

} // namespace tourplanner::cli
