#include "tourplanner/providers/mock_provider.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/core/rng.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/profile/profile.hpp"
#include "tourplanner/providers/mock_planner.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace tourplanner::providers {

namespace {

std::string slice_between(const std::string& text, const std::string& from, const std::string& to) {
    size_t a = text.find(from);
    if (a == std::string::npos) return "";
    a += from.size();
    size_t b = text.find(to, a);
    if (b == std::string::npos) return text.substr(a);
    return text.substr(a, b - a);
}

struct PersonaTemplate {
    const char* agent_id;
    const char* objective;
    std::vector<const char*> priorities;
    const char* personality;
    std::vector<const char*> triggers;  // query substrings that activate it
};

const std::vector<PersonaTemplate>& persona_pool() {
    static const std::vector<PersonaTemplate> pool = {
        {"cultural_scholar",
         "Maximize daily cultural and historical engagement hours within opening hours",
         {"World Heritage Sites", "Museums over 2 hours", "Historic districts"},
         "Rigorous, inquisitive",
         {"histor", "cultur", "museum", "heritage", "landmark", "relic"}},
        {"foodie_explorer",
         "Maximize average meal quality score while keeping each meal within the inferred price range",
         {"Try regional cuisines", "Avoid chains", "Prefer authentic local spots"},
         "Curious, sociable",
         {"cuisine", "dish", "food", "culinary", "gourmet"}},
        {"nature_wanderer",
         "Maximize hours spent at parks and scenic sites rated 4.0 or above",
         {"Scenic parks", "Natural retreats", "Riverside walks"},
         "Calm, observant",
         {"scenic", "park", "nature", "coastal", "mountain", "retreat"}},
        {"architecture_buff",
         "Maximize count of distinct architectural landmarks visited per day",
         {"Signature buildings", "Ancient structures", "Skyline viewpoints"},
         "Detail-oriented, patient",
         {"architect", "building", "marvel"}},
        {"budget_manager",
         "Keep total trip cost at or below the stated budget in CNY",
         {"Use economical transport", "Choose economy dining options", "Watch entrance fees"},
         "Pragmatic, cost-aware",
         {}},
        {"route_optimizer",
         "Minimize average distance in km between consecutive activities",
         {"Stay within one cluster per day", "Short transfers", "Logical sequencing"},
         "Methodical, efficient",
         {}},
        {"pace_keeper",
         "Keep total active time near 7 hours per full day",
         {"Balanced mornings and afternoons", "No overpacked days", "Time buffers"},
         "Easygoing, structured",
         {"moderate", "downtime", "relax", "balanc"}},
    };
    return pool;
}

json build_agent_team(const std::string& query, uint64_t request_hash, uint64_t seed) {
    std::string lowered = query;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    Rng rng(request_hash ^ seed);
    size_t team_size = 4 + static_cast<size_t>(rng.uniform_int(0, 2));

    std::vector<const PersonaTemplate*> picked;
    for (const auto& p : persona_pool()) {
        bool triggered = p.triggers.empty();
        for (const auto* t : p.triggers)
            if (lowered.find(t) != std::string::npos) triggered = true;
        if (triggered) picked.push_back(&p);
        if (picked.size() == team_size) break;
    }
    for (const auto& p : persona_pool()) {
        if (picked.size() >= team_size) break;
        if (std::find(picked.begin(), picked.end(), &p) == picked.end()) picked.push_back(&p);
    }

    json team = json::array();
    for (const auto* p : picked) {
        json priorities = json::array();
        for (const auto* pr : p->priorities) priorities.push_back(pr);
        team.push_back(json{{"agent_id", p->agent_id},
                            {"objective", p->objective},
                            {"priorities", priorities},
                            {"personality", p->personality}});
    }
    return team;
}

// Mirrors the inference decision rules over the embedded price statistics.
std::string infer_reply(const std::string& user_prompt) {
    std::smatch m;
    std::regex budget_re(R"(Budget: ([0-9.]+))");
    std::regex duration_re(R"((\d+)-day trip)");
    std::string all = user_prompt;
    double budget = 0;
    int duration = 0;
    if (std::regex_search(all, m, budget_re)) budget = std::stod(m[1]);
    if (std::regex_search(all, m, duration_re)) duration = std::stoi(m[1]);
    if (budget <= 0 || duration < 2) return "Hotel Cost: []\nMeal Cost Range: []";

    json hotel_prices;
    try {
        hotel_prices = json::parse(slice_between(user_prompt, "Hotel Prices: ", "\n"));
    } catch (...) {
        return "Hotel Cost: []\nMeal Cost Range: []";
    }
    double per_night = budget * 0.55 / (duration - 1);
    const char* priority[] = {"Luxury", "Upscale", "Midscale", "Economy"};
    std::string chosen;
    for (const char* cat : priority) {
        if (hotel_prices.contains(cat) && hotel_prices[cat].get<double>() <= per_night) {
            chosen = cat;
            break;
        }
    }
    if (chosen.empty()) {
        double best = 0;
        for (auto& [cat, price] : hotel_prices.items()) {
            if (chosen.empty() || price.get<double>() < best) {
                chosen = cat;
                best = price.get<double>();
            }
        }
    }
    double per_day = budget * 0.35 / (duration - 1);
    long lo = static_cast<long>(std::floor(0.15 * per_day));
    long hi = static_cast<long>(std::ceil(0.45 * per_day));
    std::ostringstream out;
    out << "Hotel Cost: [" << chosen << "]\nMeal Cost Range: [" << lo << "," << hi << "]";
    return out.str();
}

std::string review_reply(const std::string& system_prompt, const std::string& user_prompt,
                         uint64_t seed) {
    std::string reviewer = "reviewer";
    try {
        json profile = json::parse(slice_between(system_prompt, "profile: ", "\n"));
        reviewer = profile.value("agent_id", "reviewer");
    } catch (...) {
    }
    json plans;
    try {
        plans = json::parse(slice_between(user_prompt, "--- ALL COMPETING PLANS ---\n", "\x01"));
    } catch (...) {
        return "{}";
    }
    static const std::vector<std::string> critiques = {
        "Good route but thin on my priorities.", "Strong alignment and clean sequencing.",
        "Meals fit the windows; pacing is fair.", "Too costly for the value delivered.",
        "Compact routing, modest variety.",      "Solid coverage of the core motives.",
    };
    json out = json::object();
    for (const auto& plan : plans) {
        std::string target = plan.value("agent_id", "");
        if (target.empty()) continue;
        std::string content = plan.dump();
        uint64_t h = fnv1a64(content, fnv1a64(reviewer, seed));
        int score = -2 + static_cast<int>(h % 11);  // -2..8
        if (target == reviewer) score = std::min(10, score + 1);
        out[target] = json{{"score", score},
                           {"critique", critiques[static_cast<size_t>(h >> 8) % critiques.size()]}};
    }
    return out.dump();
}

std::string suggest_reply(const std::string& user_prompt, uint64_t request_hash, uint64_t seed) {
    json names;
    try {
        names = json::parse(slice_between(user_prompt, "Available attractions:\n", "\n\nSuggest"));
    } catch (...) {
        return "[]";
    }
    int count = 3;
    std::smatch m;
    std::regex count_re(R"(Suggest up to (\d+))");
    std::string text = user_prompt;
    if (std::regex_search(text, m, count_re)) count = std::stoi(m[1]);
    std::vector<std::string> pool = names.get<std::vector<std::string>>();
    Rng rng(request_hash ^ seed);
    rng.shuffle(pool);
    if (static_cast<int>(pool.size()) > count) pool.resize(static_cast<size_t>(count));
    std::sort(pool.begin(), pool.end());
    return json(pool).dump();
}

} // namespace

std::vector<double> mock_embedding(uint64_t seed, const std::string& text) {
    // Seeded hash of the text bytes expanded to a fixed unit vector: equal
    // text gives equal vectors, any byte change gives an unrelated one.
    uint64_t h = fnv1a64(text, fnv1a64("embed", seed));
    Rng rng(h);
    std::vector<double> v(kMockEmbeddingDim);
    double norm = 0.0;
    for (auto& x : v) {
        x = rng.uniform_real(-1.0, 1.0);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
        v[0] = 1.0;
        return v;
    }
    for (auto& x : v) x /= norm;
    return v;
}

MockProvider::MockProvider(uint64_t seed, ProviderConfig cfg, TranscriptWriterPtr transcript)
    : seed_(seed), cfg_(std::move(cfg)), transcript_(std::move(transcript)) {}

void MockProvider::enqueue_chat(std::string response) {
    std::lock_guard<std::mutex> lock(mutex_);
    scripted_chat_.push_back(std::move(response));
}

void MockProvider::enqueue_judge(JudgeVerdict verdict) {
    std::lock_guard<std::mutex> lock(mutex_);
    scripted_judge_.push_back(verdict);
}

void MockProvider::set_preference_score(double fixed) {
    std::lock_guard<std::mutex> lock(mutex_);
    fixed_preference_ = fixed;
}

void MockProvider::clear_preference_score() {
    std::lock_guard<std::mutex> lock(mutex_);
    fixed_preference_.reset();
}

std::string MockProvider::chat(const ChatRequest& req) {
    if (req.user_prompt.empty() || req.system_prompt.empty())
        throw std::invalid_argument("chat: prompts must be non-empty");
    json request = chat_request_doc(req);
    uint64_t h = json_hash(request);
    log_call("chat", h, 0);
    std::string response;
    bool scripted = false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!scripted_chat_.empty()) {
            response = scripted_chat_.front();
            scripted_chat_.pop_front();
            scripted = true;
        }
    }
    if (!scripted) response = auto_chat(req, h);
    if (transcript_) transcript_->record(request, response, 0.0);
    return response;
}

std::string MockProvider::auto_chat(const ChatRequest& req, uint64_t request_hash) {
    const std::string& sys = req.system_prompt;
    auto has = [&](const char* marker) { return sys.find(marker) != std::string::npos; };

    if (has(prompts::kMarkerExtract)) {
        std::string query = req.user_prompt;
        size_t nl = query.find('\n');
        if (nl != std::string::npos) query = query.substr(nl + 1);
        try {
            auto d = profile::extract_demands(query);
            std::ostringstream out;
            out << "Departure Day: [" << d.departure_day << "]\n"
                << "Return Day: [" << d.return_day << "]\n"
                << "Departure Time: [" << sandbox::to_string(d.departure_slot) << "]\n"
                << "Return Time: [" << sandbox::to_string(d.return_slot) << "]\n"
                << "Duration: [" << d.duration_days << "]\n"
                << "Departure City: [" << d.origin_city << "]\n"
                << "Destination City: [" << d.dest_city << "]\n"
                << "Other Requirements: [";
            for (size_t i = 0; i < d.other_requirements.size(); ++i)
                out << (i ? ", " : "") << d.other_requirements[i];
            out << "]\nBudget: [" << d.budget << "]\nRestaurant Type: [";
            for (size_t i = 0; i < d.cuisine_prefs.size(); ++i)
                out << (i ? ", " : "") << d.cuisine_prefs[i];
            out << "]";
            return out.str();
        } catch (const Error&) {
            return "Could not extract the requested fields from this query.";
        }
    }
    if (has(prompts::kMarkerInfer)) return infer_reply(req.user_prompt);
    if (has(prompts::kMarkerAgents)) {
        std::string query = req.user_prompt;
        size_t nl = query.find('\n');
        if (nl != std::string::npos) query = query.substr(nl + 1);
        return build_agent_team(query, request_hash, seed_).dump();
    }
    if (has(prompts::kMarkerDayPlan)) {
        json profile_json, given_info;
        try {
            profile_json = json::parse(slice_between(sys, "profile: ", "\n"));
            given_info = json::parse(
                slice_between(req.user_prompt, "## GIVEN_INFORMATION\n", "\n\n## Previous Days Plan"));
        } catch (const json::exception&) {
            return "{}";
        }
        return plan_day(given_info, profile_json, request_hash ^ seed_).dump();
    }
    if (has(prompts::kMarkerReview)) return review_reply(sys, req.user_prompt, seed_);
    if (has(prompts::kMarkerArbitrate)) {
        try {
            json plans = json::parse(slice_between(req.user_prompt, "Proposals (JSON): ", "\nUser Query:"));
            if (plans.is_array() && !plans.empty()) {
                json day = plans[0];
                day.erase("agent_id");
                return day.dump();
            }
        } catch (const json::exception&) {
        }
        return "{}";
    }
    if (has(prompts::kMarkerFixer)) {
        std::string initial = slice_between(req.user_prompt, "INITIAL_PLAN:\n", "\n\nGIVEN_INFO:");
        try {
            json day = json::parse(initial);
            day.erase("agent_id");
            return day.dump();
        } catch (const json::exception&) {
            return "{}";
        }
    }
    if (has(prompts::kMarkerSuggest)) return suggest_reply(req.user_prompt, request_hash, seed_);

    return "OK " + hash_hex(request_hash ^ (seed_ * 0x9E3779B97F4A7C15ull));
}

std::vector<std::vector<double>> MockProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw std::invalid_argument("embed: texts must be non-empty");
    json request = embed_request_doc(texts);
    log_call("embed", json_hash(request), 0);
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(mock_embedding(seed_, t));
    if (transcript_) transcript_->record(request, json(out), 0.0);
    return out;
}

double MockProvider::score_preference(const std::string& query, const std::string& itinerary_text) {
    if (query.empty() || itinerary_text.empty())
        throw std::invalid_argument("score_preference: texts must be non-empty");
    json request = score_request_doc(query, itinerary_text);
    log_call("score_preference", json_hash(request), 0);
    double score;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (fixed_preference_) {
            score = *fixed_preference_;
        } else {
            Rng rng(json_hash(request) ^ seed_);
            score = rng.uniform_real(-10.0, 10.0);
        }
    }
    if (transcript_) transcript_->record(request, json(score), 0.0);
    return score;
}

JudgeVerdict MockProvider::judge_pair(const std::string& query, const std::string& plan_a,
                                      const std::string& plan_b) {
    if (query.empty() || plan_a.empty() || plan_b.empty())
        throw std::invalid_argument("judge_pair: texts must be non-empty");
    json request = judge_request_doc(query, plan_a, plan_b);
    log_call("judge_pair", json_hash(request), 0);
    JudgeVerdict v;
    bool scripted = false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!scripted_judge_.empty()) {
            v = scripted_judge_.front();
            scripted_judge_.pop_front();
            scripted = true;
        }
    }
    if (!scripted) {
        // Each side scored from its own content so swapped inputs swap scores.
        v.score_a = 1 + static_cast<int>(fnv1a64(plan_a, fnv1a64(query, seed_)) % 5);
        v.score_b = 1 + static_cast<int>(fnv1a64(plan_b, fnv1a64(query, seed_)) % 5);
        v.analysis = "Deterministic mock comparison.";
    }
    if (v.score_a < 1 || v.score_a > 5 || v.score_b < 1 || v.score_b > 5)
        throw SchemaError("judge_pair: scores must be in 1..5");
    if (transcript_)
        transcript_->record(
            request, json{{"score_a", v.score_a}, {"score_b", v.score_b}, {"analysis", v.analysis}},
            0.0);
    return v;
}

} // namespace tourplanner::providers
