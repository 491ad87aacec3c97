#pragma once

#include "tourplanner/providers/provider.hpp"
#include "tourplanner/providers/transcript.hpp"

#include <deque>
#include <optional>

namespace tourplanner::providers {

// Deterministic stand-in for every model service. Auto responses are a pure
// function of (request bytes, seed); tests can also script replies that are
// consumed ahead of auto mode.
class MockProvider : public Provider {
public:
    explicit MockProvider(uint64_t seed, ProviderConfig cfg = {},
                          TranscriptWriterPtr transcript = nullptr);

    // Scripted replies, consumed FIFO before auto behavior kicks in.
    void enqueue_chat(std::string response);
    void enqueue_judge(JudgeVerdict verdict);
    void set_preference_score(double fixed);
    void clear_preference_score();

    std::string chat(const ChatRequest& req) override;
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    double score_preference(const std::string& query, const std::string& itinerary_text) override;
    JudgeVerdict judge_pair(const std::string& query, const std::string& plan_a,
                            const std::string& plan_b) override;

    uint64_t seed() const { return seed_; }

private:
    std::string auto_chat(const ChatRequest& req, uint64_t request_hash);

    uint64_t seed_;
    ProviderConfig cfg_;
    TranscriptWriterPtr transcript_;
    std::mutex mutex_;
    std::deque<std::string> scripted_chat_;
    std::deque<JudgeVerdict> scripted_judge_;
    std::optional<double> fixed_preference_;
};

// The hash-derived embedding used by the mock: a fixed 32-dim unit vector
// generated from (seed, text bytes). Exposed so tests can oracle against it.
std::vector<double> mock_embedding(uint64_t seed, const std::string& text);

inline constexpr size_t kMockEmbeddingDim = 32;

} // namespace tourplanner::providers
