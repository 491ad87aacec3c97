#include "tourplanner/ccot/arbitration.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/providers/structured.hpp"

#include <algorithm>
#include <cmath>

namespace tourplanner::ccot {

DiversityWeights diversity_weights(const std::vector<std::vector<double>>& embeddings,
                                   double smoothing) {
    const size_t n = embeddings.size();
    if (n < 2) throw std::invalid_argument("diversity_weights: need at least two embeddings");
    std::vector<double> norms(n);
    for (size_t i = 0; i < n; ++i) {
        double s = 0;
        for (double x : embeddings[i]) s += x * x;
        norms[i] = std::sqrt(s);
        if (norms[i] < 1e-12) throw ZeroVectorError("diversity_weights: zero-norm embedding");
    }

    DiversityWeights out;
    out.similarity.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        if (embeddings[i].size() != embeddings[0].size())
            throw DimensionMismatchError("diversity_weights: embeddings differ in dimension");
        for (size_t j = 0; j < n; ++j) {
            double dot = 0;
            for (size_t d = 0; d < embeddings[i].size(); ++d) dot += embeddings[i][d] * embeddings[j][d];
            out.similarity[i][j] = dot / (norms[i] * norms[j]);
        }
    }
    out.mean_similarity.resize(n);
    out.raw_weights.resize(n);
    out.weights.resize(n);
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (size_t j = 0; j < n; ++j)
            if (j != i) sum += out.similarity[i][j];
        out.mean_similarity[i] = sum / static_cast<double>(n - 1);
        out.raw_weights[i] = 1.0 / (std::max(out.mean_similarity[i], 0.0) + smoothing);
        total += out.raw_weights[i];
    }
    for (size_t i = 0; i < n; ++i) out.weights[i] = out.raw_weights[i] / total;
    return out;
}

ReviewMatrix peer_review(const std::vector<AgentSpec>& agents,
                         const std::vector<Proposal>& proposals, const std::string& query,
                         providers::Provider& provider) {
    if (proposals.size() < 2)
        throw std::invalid_argument("peer_review: need at least two valid proposals");

    json plans = json::array();
    for (const auto& p : proposals) plans.push_back(proposal_to_json(p));
    std::string plans_joined = plans.dump();

    ReviewMatrix out;
    out.scores.assign(agents.size(), std::vector<int>(proposals.size(), 0));
    out.critiques.assign(agents.size(), std::vector<std::string>(proposals.size(), ""));

    for (size_t i = 0; i < agents.size(); ++i) {
        providers::ChatRequest req;
        req.system_prompt = prompts::peer_review_system(agent_to_json(agents[i]).dump());
        req.user_prompt = prompts::peer_review_user(query, plans_joined);
        req.expects_structured = true;

        json verdicts = json::object();
        for (int attempt = 0; attempt < 2; ++attempt) {
            providers::ChatRequest attempt_req = req;
            if (attempt > 0)
                attempt_req.user_prompt +=
                    "\n\nYour previous reply was missing entries or unparseable. Score every plan by "
                    "agent_id as a STRICT JSON object.";
            try {
                json parsed = providers::parse_json_payload(provider.chat(attempt_req));
                if (parsed.is_object()) {
                    verdicts = parsed;
                    bool complete = true;
                    for (const auto& p : proposals)
                        if (!verdicts.contains(p.agent_id)) complete = false;
                    if (complete) break;
                }
            } catch (const Error&) {
            }
        }
        for (size_t j = 0; j < proposals.size(); ++j) {
            const std::string& target = proposals[j].agent_id;
            if (verdicts.contains(target) && verdicts[target].is_object() &&
                verdicts[target].contains("score") && verdicts[target]["score"].is_number()) {
                double raw = verdicts[target]["score"].get<double>();
                int score = static_cast<int>(std::llround(raw));
                out.scores[i][j] = std::clamp(score, -10, 10);
                out.critiques[i][j] = verdicts[target].value("critique", "");
            } else {
                out.scores[i][j] = 0;
                out.warnings.push_back("reviewer " + agents[i].agent_id +
                                       " returned no score for " + target + "; defaulted to 0");
            }
        }
    }
    return out;
}

std::vector<double> consensus_scores(const std::vector<double>& weights,
                                     const std::vector<std::vector<int>>& score_matrix) {
    if (weights.size() != score_matrix.size())
        throw DimensionMismatchError("consensus_scores: weight/matrix row mismatch");
    if (score_matrix.empty()) throw DimensionMismatchError("consensus_scores: empty matrix");
    size_t cols = score_matrix[0].size();
    for (const auto& row : score_matrix)
        if (row.size() != cols)
            throw DimensionMismatchError("consensus_scores: ragged score matrix");
    std::vector<double> scores(cols, 0.0);
    for (size_t i = 0; i < weights.size(); ++i)
        for (size_t j = 0; j < cols; ++j) scores[j] += weights[i] * score_matrix[i][j];
    return scores;
}

std::vector<size_t> select_top_k(const std::vector<double>& consensus,
                                 const std::vector<std::vector<int>>& score_matrix,
                                 const std::vector<std::string>& agent_ids, int k) {
    if (consensus.empty()) throw std::invalid_argument("select_top_k: no proposals");
    std::vector<int> max_review(consensus.size(), -10);
    for (const auto& row : score_matrix)
        for (size_t j = 0; j < row.size() && j < max_review.size(); ++j)
            max_review[j] = std::max(max_review[j], row[j]);

    std::vector<size_t> order(consensus.size());
    for (size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (consensus[a] != consensus[b]) return consensus[a] > consensus[b];
        if (max_review[a] != max_review[b]) return max_review[a] > max_review[b];
        return agent_ids[a] < agent_ids[b];
    });
    if (static_cast<int>(order.size()) > k) order.resize(static_cast<size_t>(k));
    return order;
}

json ArbitrationRecord::to_json() const {
    json scores = json::array();
    for (const auto& row : review.scores) scores.push_back(row);
    json critiques = json::array();
    for (const auto& row : review.critiques) critiques.push_back(row);
    json excluded_list = json::array();
    for (const auto& [agent, reason] : excluded)
        excluded_list.push_back(json{{"agent_id", agent}, {"reason", reason}});
    return json{{"day_label", day_label},
                {"agent_ids", agent_ids},
                {"embeddings", embeddings},
                {"similarity", diversity.similarity},
                {"mean_similarity", diversity.mean_similarity},
                {"raw_weights", diversity.raw_weights},
                {"weights", diversity.weights},
                {"scores", scores},
                {"critiques", critiques},
                {"warnings", review.warnings},
                {"consensus", consensus},
                {"winners", winners},
                {"excluded", excluded_list},
                {"synthesis_fallback", synthesis_fallback}};
}

} // namespace tourplanner::ccot
