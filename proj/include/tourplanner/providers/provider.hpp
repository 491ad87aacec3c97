#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace tourplanner::providers {

struct ProviderConfig {
    std::string endpoint_url;
    std::string api_key_env;  // name of the env var holding the key
    std::string model_name;
    double timeout_seconds = 30.0;
    int max_retries = 2;
    int parallelism_limit = 4;

    void validate() const;
};

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    bool expects_structured = false;
};

struct JudgeVerdict {
    int score_a = 0;  // 1..5
    int score_b = 0;
    std::string analysis;
};

struct CallRecord {
    std::string kind;  // chat | embed | score_preference | judge_pair
    uint64_t request_hash = 0;
    int attempt = 0;
};

// Boundary for every stochastic model service. Implementations must be safe
// to share across threads.
class Provider {
public:
    virtual ~Provider() = default;

    virtual std::string chat(const ChatRequest& req) = 0;
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) = 0;
    virtual double score_preference(const std::string& query, const std::string& itinerary_text) = 0;
    virtual JudgeVerdict judge_pair(const std::string& query, const std::string& plan_a,
                                    const std::string& plan_b) = 0;

    std::vector<CallRecord> call_log() const {
        std::lock_guard<std::mutex> lock(log_mutex_);
        return calls_;
    }

protected:
    void log_call(const std::string& kind, uint64_t request_hash, int attempt) {
        std::lock_guard<std::mutex> lock(log_mutex_);
        calls_.push_back({kind, request_hash, attempt});
    }

private:
    mutable std::mutex log_mutex_;
    std::vector<CallRecord> calls_;
};

using ProviderPtr = std::shared_ptr<Provider>;

} // namespace tourplanner::providers
