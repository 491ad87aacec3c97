#pragma once

#include "tourplanner/core/jsonio.hpp"
#include "tourplanner/providers/provider.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace tourplanner::providers {

// Canonical request documents; the request hash keys transcript replay.
json chat_request_doc(const ChatRequest& req);
json embed_request_doc(const std::vector<std::string>& texts);
json score_request_doc(const std::string& query, const std::string& itinerary_text);
json judge_request_doc(const std::string& query, const std::string& plan_a, const std::string& plan_b);

// JSON-lines writer, one record per provider call:
// {request_hash, request, response, latency_ms}
class TranscriptWriter {
public:
    explicit TranscriptWriter(std::string path);
    void record(const json& request, const json& response, double latency_ms);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mutex_;
};

using TranscriptWriterPtr = std::shared_ptr<TranscriptWriter>;

// Serves recorded responses keyed by request hash (FIFO per hash, so
// scripted retry sequences replay in order).
class TranscriptReplay {
public:
    explicit TranscriptReplay(const std::string& path);
    json serve(const json& request);

private:
    std::map<uint64_t, std::deque<json>> responses_;
    std::mutex mutex_;
};

// Provider that replays a recorded transcript byte-for-byte.
class ReplayProvider : public Provider {
public:
    explicit ReplayProvider(const std::string& transcript_path);

    std::string chat(const ChatRequest& req) override;
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    double score_preference(const std::string& query, const std::string& itinerary_text) override;
    JudgeVerdict judge_pair(const std::string& query, const std::string& plan_a,
                            const std::string& plan_b) override;

private:
    TranscriptReplay replay_;
};

} // namespace tourplanner::providers
