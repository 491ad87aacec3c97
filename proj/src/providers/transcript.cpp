#include "tourplanner/providers/transcript.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"

#include <filesystem>
#include <fstream>

namespace tourplanner::providers {

json chat_request_doc(const ChatRequest& req) {
    return json{{"kind", "chat"},
                {"system", req.system_prompt},
                {"user", req.user_prompt},
                {"structured", req.expects_structured}};
}

json embed_request_doc(const std::vector<std::string>& texts) {
    return json{{"kind", "embed"}, {"texts", texts}};
}

json score_request_doc(const std::string& query, const std::string& itinerary_text) {
    return json{{"kind", "score_preference"}, {"query", query}, {"itinerary", itinerary_text}};
}

json judge_request_doc(const std::string& query, const std::string& plan_a,
                       const std::string& plan_b) {
    return json{{"kind", "judge_pair"}, {"query", query}, {"plan_a", plan_a}, {"plan_b", plan_b}};
}

TranscriptWriter::TranscriptWriter(std::string path) : path_(std::move(path)) {
    auto parent = std::filesystem::path(path_).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path_, std::ios::trunc);  // start a fresh transcript
    if (!out) throw Error("cannot open transcript for writing: " + path_);
}

void TranscriptWriter::record(const json& request, const json& response, double latency_ms) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cannot append to transcript: " + path_);
    json line{{"request_hash", hash_hex(json_hash(request))},
              {"request", request},
              {"response", response},
              {"latency_ms", latency_ms}};
    out << line.dump() << "\n";
}

TranscriptReplay::TranscriptReplay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TransportError("cannot open transcript: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("transcript line: " + std::string(e.what()));
        }
        responses_[json_hash(rec.at("request"))].push_back(rec.at("response"));
    }
}

json TranscriptReplay::serve(const json& request) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = responses_.find(json_hash(request));
    if (it == responses_.end() || it->second.empty())
        throw TransportError("transcript has no response for request " +
                             hash_hex(json_hash(request)));
    json response = it->second.front();
    // Repeated identical requests replay in recorded order; the final
    // response stays available so replays of pure functions never starve.
    if (it->second.size() > 1) it->second.pop_front();
    return response;
}

ReplayProvider::ReplayProvider(const std::string& transcript_path) : replay_(transcript_path) {}

std::string ReplayProvider::chat(const ChatRequest& req) {
    if (req.user_prompt.empty()) throw std::invalid_argument("chat: empty user prompt");
    json request = chat_request_doc(req);
    log_call("chat", json_hash(request), 0);
    return replay_.serve(request).get<std::string>();
}

std::vector<std::vector<double>> ReplayProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw std::invalid_argument("embed: texts must be non-empty");
    json request = embed_request_doc(texts);
    log_call("embed", json_hash(request), 0);
    return replay_.serve(request).get<std::vector<std::vector<double>>>();
}

double ReplayProvider::score_preference(const std::string& query, const std::string& itinerary_text) {
    json request = score_request_doc(query, itinerary_text);
    log_call("score_preference", json_hash(request), 0);
    return replay_.serve(request).get<double>();
}

JudgeVerdict ReplayProvider::judge_pair(const std::string& query, const std::string& plan_a,
                                        const std::string& plan_b) {
    json request = judge_request_doc(query, plan_a, plan_b);
    log_call("judge_pair", json_hash(request), 0);
    json r = replay_.serve(request);
    return JudgeVerdict{r.at("score_a").get<int>(), r.at("score_b").get<int>(),
                        r.value("analysis", "")};
}

} // namespace tourplanner::providers
