#pragma once

#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <string>

namespace tourplanner::sandbox {

inline constexpr int kSchemaVersion = 1;

// Total-or-fail load: every invariant is checked before the sandbox is
// returned. Duration bounds accept numeric hours or a "recommended_duration"
// string ("0.5-1 day" maps to 5-10 hours, "1-2 hours" stays as-is).
Sandbox load_sandbox(const std::string& path);
Sandbox sandbox_from_json(const json& doc);

json sandbox_to_json(const Sandbox& sb);
void save_sandbox(const Sandbox& sb, const std::string& path);

// Hash of the canonical form; embedded in artifacts produced from it.
std::string sandbox_hash(const Sandbox& sb);

// Parse "0.5-1 day" / "2-3 hours" / "1 day" into (min_hours, max_hours).
std::optional<std::pair<double, double>> parse_duration_range(const std::string& text);

struct SyntheticSpec {
    int cities = 2;
    int attractions = 20;
    int restaurants = 16;
    int hotels = 6;
    int transport_legs = 8;
};

// Deterministic world generator. Attractions are planted around
// n_clusters_hint spatial centers in the destination city so the default
// clustering recovers them.
Sandbox generate_synthetic(uint64_t seed, const SyntheticSpec& spec, int n_clusters_hint);

} // namespace tourplanner::sandbox
