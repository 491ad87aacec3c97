#pragma once

#include "tourplanner/ccot/planner.hpp"
#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/eval/metrics.hpp"
#include "tourplanner/geo/geo.hpp"
#include "tourplanner/providers/provider.hpp"
#include "tourplanner/providers/transcript.hpp"
#include "tourplanner/reward/reward.hpp"

#include <string>

namespace tourplanner::cli {

struct ProviderChoice {
    std::string type = "mock";  // mock | http | replay
    providers::ProviderConfig http;
    std::string replay_path;
};

// Every tunable in one place; defaults match the published hyperparameters.
struct RunConfig {
    uint64_t seed = 42;
    geo::ClusterConfig cluster;              // min_samples 4, eps 1 km, decay 0.8, floor 0.1
    ccot::CcotConfig ccot;                   // team 4-6, k 3, smoothing 0.01
    reward::GateConfig gate;                 // tau 0.75, k 28
    double gspo_eps_low = 0.0003;
    double gspo_eps_high = 0.0004;
    double reference_d_avg_km = 3.0;         // route-score fallback reference
    eval::EvalConfig eval;
    ProviderChoice chat, embed, reward_model, judge;

    json to_json() const;
    static RunConfig from_json(const json& doc);
    std::string config_hash() const;
};

struct BuiltProviders {
    ccot::ProviderBundle bundle;
    providers::TranscriptWriterPtr transcript;
};

// Instantiate the four provider slots. When transcript_path is non-empty all
// calls are recorded; when replay_path is set every slot replays from it.
BuiltProviders build_providers(const RunConfig& cfg, const std::string& transcript_path,
                               const std::string& replay_path);

} // namespace tourplanner::cli
