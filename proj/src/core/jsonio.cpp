#include "tourplanner/core/jsonio.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tourplanner {

std::string canon_dump(const json& doc) {
    return doc.dump(2);
}

uint64_t json_hash(const json& doc) {
    return fnv1a64(doc.dump());
}

std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    auto parent = target.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

} // namespace tourplanner
