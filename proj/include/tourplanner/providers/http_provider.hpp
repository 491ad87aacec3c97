#pragma once

#include "tourplanner/providers/provider.hpp"
#include "tourplanner/providers/transcript.hpp"

#include <memory>

namespace tourplanner::providers {

// Chat/embedding client for OpenAI-compatible HTTP endpoints. The preference
// and judge services are carried over chat with fixed instruction templates.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(ProviderConfig cfg, TranscriptWriterPtr transcript = nullptr);
    ~HttpProvider() override;

    std::string chat(const ChatRequest& req) override;
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
    double score_preference(const std::string& query, const std::string& itinerary_text) override;
    JudgeVerdict judge_pair(const std::string& query, const std::string& plan_a,
                            const std::string& plan_b) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Parse the verdict block emitted by the judge template. Throws SchemaError
// when scores are absent or outside 1..5.
JudgeVerdict parse_judge_verdict(const std::string& reply);

} // namespace tourplanner::providers
