#include "tourplanner/providers/http_provider.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/providers/structured.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <regex>
#include <semaphore>

namespace tourplanner::providers {

namespace {

struct Endpoint {
    std::string base;  // scheme://host[:port]
    std::string path_prefix;
};

Endpoint split_endpoint(const std::string& url) {
    size_t scheme = url.find("://");
    if (scheme == std::string::npos) throw TransportError("endpoint url missing scheme: " + url);
    size_t path = url.find('/', scheme + 3);
    if (path == std::string::npos) return {url, ""};
    return {url.substr(0, path), url.substr(path)};
}

} // namespace

struct HttpProvider::Impl {
    ProviderConfig cfg;
    Endpoint endpoint;
    std::string api_key;
    TranscriptWriterPtr transcript;
    std::counting_semaphore<1 << 20> slots;

    explicit Impl(ProviderConfig c, TranscriptWriterPtr t)
        : cfg(std::move(c)),
          endpoint(split_endpoint(cfg.endpoint_url)),
          transcript(std::move(t)),
          slots(cfg.parallelism_limit) {
        if (!cfg.api_key_env.empty()) {
            if (const char* key = std::getenv(cfg.api_key_env.c_str())) api_key = key;
        }
    }

    json post(const std::string& path, const json& body) {
        slots.acquire();
        struct Release {
            std::counting_semaphore<1 << 20>& s;
            ~Release() { s.release(); }
        } release{slots};

        httplib::Client client(endpoint.base);
        client.set_connection_timeout(static_cast<time_t>(cfg.timeout_seconds), 0);
        client.set_read_timeout(static_cast<time_t>(cfg.timeout_seconds), 0);
        httplib::Headers headers;
        if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

        auto res = client.Post(endpoint.path_prefix + path, headers, body.dump(),
                               "application/json");
        if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
        if (res->status == 401 || res->status == 403)
            throw AuthError("endpoint rejected credentials (status " +
                            std::to_string(res->status) + ")");
        if (res->status < 200 || res->status >= 300)
            throw TransportError("endpoint returned status " + std::to_string(res->status));
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("response is not JSON: ") + e.what());
        }
    }

    std::string chat_once(const ChatRequest& req, int attempt, Provider& self) {
        json body{{"model", cfg.model_name},
                  {"messages", json::array({json{{"role", "system"}, {"content", req.system_prompt}},
                                            json{{"role", "user"}, {"content", req.user_prompt}}})}};
        auto start = std::chrono::steady_clock::now();
        json reply;
        std::string last_error;
        for (int t = attempt; t <= cfg.max_retries; ++t) {
            try {
                reply = post("/chat/completions", body);
                break;
            } catch (const TransportError& e) {
                last_error = e.what();
                if (t == cfg.max_retries) throw;
            }
        }
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        std::string content;
        try {
            content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw SchemaError(std::string("unexpected chat response shape: ") + e.what());
        }
        if (transcript) transcript->record(chat_request_doc(req), content, elapsed);
        (void)self;
        return content;
    }
};

HttpProvider::HttpProvider(ProviderConfig cfg, TranscriptWriterPtr transcript) {
    cfg.validate();
    impl_ = std::make_unique<Impl>(std::move(cfg), std::move(transcript));
}

HttpProvider::~HttpProvider() = default;

std::string HttpProvider::chat(const ChatRequest& req) {
    if (req.user_prompt.empty() || req.system_prompt.empty())
        throw std::invalid_argument("chat: prompts must be non-empty");
    log_call("chat", json_hash(chat_request_doc(req)), 0);
    return impl_->chat_once(req, 0, *this);
}

std::vector<std::vector<double>> HttpProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw std::invalid_argument("embed: texts must be non-empty");
    json request = embed_request_doc(texts);
    log_call("embed", json_hash(request), 0);
    json body{{"model", impl_->cfg.model_name}, {"input", texts}};
    auto start = std::chrono::steady_clock::now();
    json reply = impl_->post("/embeddings", body);
    auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::vector<std::vector<double>> out;
    try {
        for (const auto& item : reply.at("data"))
            out.push_back(item.at("embedding").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw SchemaError(std::string("unexpected embedding response shape: ") + e.what());
    }
    if (out.size() != texts.size())
        throw SchemaError("embedding response count does not match input count");
    size_t dim = out.empty() ? 0 : out.front().size();
    for (const auto& v : out)
        if (v.size() != dim)
            throw DimensionMismatchError("provider returned embeddings of mixed dimensions");
    if (impl_->transcript) impl_->transcript->record(request, json(out), elapsed);
    return out;
}

double HttpProvider::score_preference(const std::string& query, const std::string& itinerary_text) {
    if (query.empty() || itinerary_text.empty())
        throw std::invalid_argument("score_preference: texts must be non-empty");
    log_call("score_preference", json_hash(score_request_doc(query, itinerary_text)), 0);
    ChatRequest req;
    req.system_prompt =
        "You are a reward model scoring how well a travel itinerary satisfies a query. Reply with a "
        "single real number; use values near +10 for excellent fits and near -10 for poor ones.";
    req.user_prompt = "Query:\n" + query + "\n\nItinerary:\n" + itinerary_text;
    std::string reply = impl_->chat_once(req, 0, *this);
    std::smatch m;
    std::regex number_re(R"(-?\d+(?:\.\d+)?)");
    if (!std::regex_search(reply, m, number_re))
        throw SchemaError("reward reply contains no numeric score");
    return std::stod(m[0]);
}

JudgeVerdict parse_judge_verdict(const std::string& reply) {
    size_t at = reply.find("Scoring Results");
    size_t open = reply.find('{', at == std::string::npos ? 0 : at);
    if (open == std::string::npos) throw SchemaError("judge reply has no scoring block");
    int depth = 0;
    size_t close = open;
    for (size_t i = open; i < reply.size(); ++i) {
        if (reply[i] == '{') depth++;
        if (reply[i] == '}' && --depth == 0) {
            close = i;
            break;
        }
    }
    if (depth != 0) throw SchemaError("judge reply has an unbalanced scoring block");
    json block;
    try {
        block = json::parse(reply.substr(open, close - open + 1));
    } catch (const json::exception& e) {
        throw SchemaError(std::string("judge scoring block is not JSON: ") + e.what());
    }
    json scores;
    if (block.contains("Personalization Evaluation"))
        scores = block["Personalization Evaluation"].value("Scores", json::object());
    else if (block.contains("Scores"))
        scores = block["Scores"];
    else
        scores = block;
    if (!scores.contains("Plan A") || !scores.contains("Plan B"))
        throw SchemaError("judge reply is missing Plan A/Plan B scores");
    JudgeVerdict v;
    v.score_a = scores["Plan A"].get<int>();
    v.score_b = scores["Plan B"].get<int>();
    size_t analysis = reply.find("Comparative Analysis");
    if (analysis != std::string::npos && at != std::string::npos)
        v.analysis = reply.substr(analysis, at - analysis);
    if (v.score_a < 1 || v.score_a > 5 || v.score_b < 1 || v.score_b > 5)
        throw SchemaError("judge scores must be in 1..5");
    return v;
}

JudgeVerdict HttpProvider::judge_pair(const std::string& query, const std::string& plan_a,
                                      const std::string& plan_b) {
    if (query.empty() || plan_a.empty() || plan_b.empty())
        throw std::invalid_argument("judge_pair: texts must be non-empty");
    log_call("judge_pair", json_hash(judge_request_doc(query, plan_a, plan_b)), 0);
    ChatRequest req;
    req.system_prompt = prompts::judge_system();
    req.user_prompt = prompts::judge_user(query, plan_a, plan_b);
    return parse_judge_verdict(impl_->chat_once(req, 0, *this));
}

} // namespace tourplanner::providers
