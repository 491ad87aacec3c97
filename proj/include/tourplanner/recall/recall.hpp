#pragma once

#include "tourplanner/profile/profile.hpp"
#include "tourplanner/providers/provider.hpp"
#include "tourplanner/sandbox/model.hpp"

#include <set>
#include <string>
#include <vector>

namespace tourplanner::recall {

struct RecallConfig {
    int duration_days = 1;
    int semantic_count() const { return 3 * duration_days; }
    int total_count() const { return 9 * duration_days; }
    sandbox::Grade landmark_grade_floor = sandbox::Grade::FourA;
};

enum class Channel { Semantic, Landmark, Suggested };

std::string to_string(Channel c);

struct Candidate {
    std::string attraction_id;
    Channel provenance = Channel::Semantic;
    double score = 0.0;  // similarity for semantic, popularity for landmark
};

struct CandidateSet {
    std::vector<Candidate> attractions;  // fill order, no duplicate ids
    bool contains(const std::string& id) const;
};

// Top-n by cosine similarity between the profile's query texts and each
// attraction's feature text. The profile side embeds the joined requirement
// text plus each requirement phrase separately; an attraction scores its
// maximum over those. Ties break by (similarity desc, popularity desc, id asc).
std::vector<Candidate> semantic_recall(const profile::UserProfile& prof,
                                       const std::vector<sandbox::Attraction>& attractions,
                                       providers::Provider& embedder, int n);

// Attractions at or above the grade floor, by (popularity desc, rating desc, id asc).
std::vector<Candidate> landmark_recall(const std::vector<sandbox::Attraction>& attractions,
                                       const RecallConfig& cfg, int n);

// Provider-suggested names resolved against the sandbox; unresolvable names
// are dropped, never invented.
std::vector<Candidate> llm_recall(const profile::UserProfile& prof, const sandbox::Sandbox& sb,
                                  providers::Provider& provider, int n);

// Round-robin by rank across (semantic, landmark, suggested) until the total
// cap; duplicate ids keep the highest-priority channel's provenance.
CandidateSet merge_recall(const std::vector<Candidate>& semantic,
                          const std::vector<Candidate>& landmark,
                          const std::vector<Candidate>& suggested, const RecallConfig& cfg);

double recall_rate(const CandidateSet& candidates, const std::set<std::string>& ground_truth_ids);

// The full three-channel pipeline.
CandidateSet run_recall(const profile::UserProfile& prof, const sandbox::Sandbox& sb,
                        providers::Provider& embedder, providers::Provider& suggester,
                        const RecallConfig& cfg);

} // namespace tourplanner::recall
