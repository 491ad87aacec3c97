#pragma once

#include "tourplanner/core/jsonio.hpp"

#include <cstdint>
#include <string>

namespace tourplanner::providers {

// Greedy, constraint-driven day scheduler backing the mock chat model. It
// consumes the machine-readable context block embedded in planning prompts
// and emits a day-plan JSON document. Choices vary deterministically with
// the variation seed (derived from agent identity and request bytes) so
// competing agents produce distinct but valid proposals.
//
// This is provider-side code: the engine never uses it to validate or score
// anything; plans it produces are checked by the independent rule validator.
json plan_day(const json& given_info, const json& agent_profile, uint64_t variation_seed);

} // namespace tourplanner::providers
