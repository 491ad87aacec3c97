#pragma once

#include "tourplanner/ccot/agents.hpp"
#include "tourplanner/ccot/itinerary.hpp"
#include "tourplanner/providers/provider.hpp"

#include <string>
#include <vector>

namespace tourplanner::ccot {

struct DiversityWeights {
    std::vector<std::vector<double>> similarity;  // S, cosines
    std::vector<double> mean_similarity;          // mean of off-diagonal row entries
    std::vector<double> raw_weights;              // 1 / (mean + eps)
    std::vector<double> weights;                  // normalized, sums to 1
};

// Inverse-mean-similarity weighting with smoothing. Mean similarities are
// floored at zero before smoothing so weights stay in (0, 1] even in
// embedding spaces that admit negative cosines. Throws ZeroVectorError for
// zero-norm embeddings; requires at least two.
DiversityWeights diversity_weights(const std::vector<std::vector<double>>& embeddings,
                                   double smoothing = 0.01);

struct ReviewMatrix {
    std::vector<std::vector<int>> scores;             // [reviewer][proposal], -10..10
    std::vector<std::vector<std::string>> critiques;  // same shape
    std::vector<std::string> warnings;                // defaulted entries
};

// Every agent reviews every proposal (its own included). Scores are rounded
// then clamped to [-10, 10]; entries still missing after one retry default
// to 0 with a logged warning.
ReviewMatrix peer_review(const std::vector<AgentSpec>& agents,
                         const std::vector<Proposal>& proposals, const std::string& query,
                         providers::Provider& provider);

// Score(P_j) = sum_i w_i * s_ij.
std::vector<double> consensus_scores(const std::vector<double>& weights,
                                     const std::vector<std::vector<int>>& score_matrix);

// Indices of the k highest consensus scores; ties break by the higher
// maximum single review, then agent_id ascending. Returns fewer when fewer
// proposals exist.
std::vector<size_t> select_top_k(const std::vector<double>& consensus,
                                 const std::vector<std::vector<int>>& score_matrix,
                                 const std::vector<std::string>& agent_ids, int k);

// Everything the arbitration produced for one day, for audit and replay.
struct ArbitrationRecord {
    std::string day_label;
    std::vector<std::string> agent_ids;  // valid entrants, matrix order
    std::vector<std::vector<double>> embeddings;
    DiversityWeights diversity;
    ReviewMatrix review;
    std::vector<double> consensus;
    std::vector<std::string> winners;  // agent ids in rank order
    std::vector<std::pair<std::string, std::string>> excluded;  // (agent_id, reason)
    bool synthesis_fallback = false;
    json to_json() const;
};

} // namespace tourplanner::ccot
