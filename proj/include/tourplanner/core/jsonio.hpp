#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace tourplanner {

using json = nlohmann::json;

// Canonical dump: 2-space indent, keys sorted (nlohmann objects are ordered
// maps already). All artifacts are serialized through this so replays and
// golden files compare byte-for-byte.
std::string canon_dump(const json& doc);

uint64_t json_hash(const json& doc);
std::string hash_hex(uint64_t h);

json load_json_file(const std::string& path);

// Write via temp file + rename so readers never observe a partial document.
void atomic_write(const std::string& path, const std::string& content);

} // namespace tourplanner
