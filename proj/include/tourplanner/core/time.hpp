#pragma once

#include <optional>
#include <string>
#include <utility>

namespace tourplanner {

// Times are minutes since midnight, 0..1440.
using Minutes = int;

// "07:45" -> 465. Returns nullopt for malformed input.
std::optional<Minutes> parse_clock(const std::string& text);

// 465 -> "07:45". Value must be in 0..1440.
std::string format_clock(Minutes m);

// "07:45-09:20" -> (465, 560). Accepts an optional second value; rejects
// start >= end.
std::optional<std::pair<Minutes, Minutes>> parse_window(const std::string& text);

std::string format_window(Minutes start, Minutes end);

inline double minutes_to_hours(Minutes m) { return static_cast<double>(m) / 60.0; }

} // namespace tourplanner
