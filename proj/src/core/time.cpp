#include "tourplanner/core/time.hpp"

#include <cctype>
#include <cstdio>

namespace tourplanner {

std::optional<Minutes> parse_clock(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) return std::nullopt;
    for (size_t i = 0; i < text.size(); ++i) {
        if (i == colon) continue;
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    int h = std::stoi(text.substr(0, colon));
    int m = std::stoi(text.substr(colon + 1));
    if (h < 0 || h > 24 || m < 0 || m > 59) return std::nullopt;
    int total = h * 60 + m;
    if (total > 1440) return std::nullopt;
    return total;
}

std::string format_clock(Minutes m) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", m / 60, m % 60);
    return buf;
}

std::optional<std::pair<Minutes, Minutes>> parse_window(const std::string& text) {
    size_t dash = text.find('-');
    if (dash == std::string::npos) return std::nullopt;
    auto a = parse_clock(text.substr(0, dash));
    auto b = parse_clock(text.substr(dash + 1));
    if (!a || !b || *a >= *b) return std::nullopt;
    return std::make_pair(*a, *b);
}

std::string format_window(Minutes start, Minutes end) {
    return format_clock(start) + "-" + format_clock(end);
}

} // namespace tourplanner
