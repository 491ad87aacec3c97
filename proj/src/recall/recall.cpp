#include "tourplanner/recall/recall.hpp"

#include "tourplanner/core/errors.hpp"
#include "tourplanner/prompts/templates.hpp"
#include "tourplanner/providers/structured.hpp"

#include <algorithm>
#include <cmath>

namespace tourplanner::recall {

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("cosine: vectors differ in dimension");
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na < 1e-24 || nb < 1e-24) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::string> profile_query_texts(const profile::UserProfile& prof) {
    std::vector<std::string> texts;
    std::string joined;
    for (const auto& r : prof.explicit_demands.other_requirements) {
        if (!joined.empty()) joined += "; ";
        joined += r;
    }
    for (const auto& c : prof.explicit_demands.cuisine_prefs) {
        if (!joined.empty()) joined += "; ";
        joined += c;
    }
    if (joined.empty()) joined = prof.raw_query;
    texts.push_back(joined);
    for (const auto& r : prof.explicit_demands.other_requirements) texts.push_back(r);
    return texts;
}

} // namespace

std::string to_string(Channel c) {
    switch (c) {
        case Channel::Semantic: return "semantic";
        case Channel::Landmark: return "landmark";
        case Channel::Suggested: return "suggested";
    }
    return "semantic";
}

bool CandidateSet::contains(const std::string& id) const {
    return std::any_of(attractions.begin(), attractions.end(),
                       [&](const Candidate& c) { return c.attraction_id == id; });
}

std::vector<Candidate> semantic_recall(const profile::UserProfile& prof,
                                       const std::vector<sandbox::Attraction>& attractions,
                                       providers::Provider& embedder, int n) {
    if (n < 1) throw std::invalid_argument("semantic_recall: n must be >= 1");
    if (attractions.empty()) throw std::invalid_argument("semantic_recall: no attractions");

    std::vector<std::string> queries = profile_query_texts(prof);
    std::vector<std::string> texts = queries;
    for (const auto& a : attractions)
        texts.push_back(a.feature_text.empty() ? a.name : a.feature_text);
    auto vectors = embedder.embed(texts);

    struct Scored {
        size_t index;
        double similarity;
    };
    std::vector<Scored> scored;
    scored.reserve(attractions.size());
    for (size_t i = 0; i < attractions.size(); ++i) {
        const auto& av = vectors[queries.size() + i];
        double best = -1.0;
        for (size_t q = 0; q < queries.size(); ++q)
            best = std::max(best, cosine(vectors[q], av));
        scored.push_back({i, best});
    }
    std::sort(scored.begin(), scored.end(), [&](const Scored& x, const Scored& y) {
        if (x.similarity != y.similarity) return x.similarity > y.similarity;
        if (attractions[x.index].popularity != attractions[y.index].popularity)
            return attractions[x.index].popularity > attractions[y.index].popularity;
        return attractions[x.index].id < attractions[y.index].id;
    });
    std::vector<Candidate> out;
    for (const auto& s : scored) {
        if (static_cast<int>(out.size()) >= n) break;
        out.push_back({attractions[s.index].id, Channel::Semantic, s.similarity});
    }
    return out;
}

std::vector<Candidate> landmark_recall(const std::vector<sandbox::Attraction>& attractions,
                                       const RecallConfig& cfg, int n) {
    std::vector<const sandbox::Attraction*> filtered;
    for (const auto& a : attractions)
        if (static_cast<int>(a.grade) >= static_cast<int>(cfg.landmark_grade_floor))
            filtered.push_back(&a);
    std::sort(filtered.begin(), filtered.end(),
              [](const sandbox::Attraction* x, const sandbox::Attraction* y) {
                  if (x->popularity != y->popularity) return x->popularity > y->popularity;
                  if (x->rating != y->rating) return x->rating > y->rating;
                  return x->id < y->id;
              });
    std::vector<Candidate> out;
    for (const auto* a : filtered) {
        if (static_cast<int>(out.size()) >= n) break;
        out.push_back({a->id, Channel::Landmark, a->popularity});
    }
    return out;
}

std::vector<Candidate> llm_recall(const profile::UserProfile& prof, const sandbox::Sandbox& sb,
                                  providers::Provider& provider, int n) {
    std::string profile_text;
    for (const auto& r : prof.explicit_demands.other_requirements) {
        if (!profile_text.empty()) profile_text += "; ";
        profile_text += r;
    }
    if (profile_text.empty()) profile_text = prof.raw_query;

    json names = json::array();
    for (const auto& a : sb.attractions)
        if (a.city == prof.explicit_demands.dest_city) names.push_back(a.name);

    providers::ChatRequest req;
    req.system_prompt = prompts::suggest_system();
    req.user_prompt = prompts::suggest_user(profile_text, names.dump(), n);
    req.expects_structured = true;
    std::string reply = provider.chat(req);

    std::vector<Candidate> out;
    json parsed;
    try {
        parsed = providers::parse_json_payload(reply);
    } catch (const SchemaError&) {
        return out;  // an empty suggestion set degrades, never aborts
    }
    if (!parsed.is_array()) return out;
    std::set<std::string> seen;
    for (const auto& item : parsed) {
        if (!item.is_string()) continue;
        const auto* a = sb.find_attraction(prof.explicit_demands.dest_city, item.get<std::string>());
        if (!a) continue;  // unresolvable names are dropped
        if (!seen.insert(a->id).second) continue;
        out.push_back({a->id, Channel::Suggested, 0.0});
    }
    return out;
}

CandidateSet merge_recall(const std::vector<Candidate>& semantic,
                          const std::vector<Candidate>& landmark,
                          const std::vector<Candidate>& suggested, const RecallConfig& cfg) {
    CandidateSet set;
    std::set<std::string> seen;
    auto provenance_of = [&](const std::string& id, Channel fill_channel) {
        for (const auto& c : semantic)
            if (c.attraction_id == id) return Channel::Semantic;
        for (const auto& c : landmark)
            if (c.attraction_id == id) return Channel::Landmark;
        for (const auto& c : suggested)
            if (c.attraction_id == id) return Channel::Suggested;
        return fill_channel;
    };
    const std::vector<const std::vector<Candidate>*> channels = {&semantic, &landmark, &suggested};
    size_t rank = 0;
    bool exhausted = false;
    while (!exhausted && static_cast<int>(set.attractions.size()) < cfg.total_count()) {
        exhausted = true;
        for (const auto* channel : channels) {
            if (rank < channel->size()) {
                exhausted = false;
                const Candidate& c = (*channel)[rank];
                if (static_cast<int>(set.attractions.size()) >= cfg.total_count()) break;
                if (seen.insert(c.attraction_id).second) {
                    Candidate kept = c;
                    kept.provenance = provenance_of(c.attraction_id, c.provenance);
                    set.attractions.push_back(kept);
                }
            }
        }
        ++rank;
    }
    return set;
}

double recall_rate(const CandidateSet& candidates, const std::set<std::string>& ground_truth_ids) {
    if (ground_truth_ids.empty()) throw EmptyTruthError("recall_rate: empty ground truth");
    size_t hits = 0;
    for (const auto& id : ground_truth_ids)
        if (candidates.contains(id)) hits++;
    return static_cast<double>(hits) / static_cast<double>(ground_truth_ids.size());
}

CandidateSet run_recall(const profile::UserProfile& prof, const sandbox::Sandbox& sb,
                        providers::Provider& embedder, providers::Provider& suggester,
                        const RecallConfig& cfg) {
    std::vector<sandbox::Attraction> in_city;
    for (const auto& a : sb.attractions)
        if (a.city == prof.explicit_demands.dest_city) in_city.push_back(a);
    if (in_city.empty()) return {};

    auto semantic = semantic_recall(prof, in_city, embedder, cfg.semantic_count());
    auto landmark = landmark_recall(in_city, cfg, cfg.total_count());
    auto suggested = llm_recall(prof, sb, suggester, cfg.total_count());
    return merge_recall(semantic, landmark, suggested, cfg);
}

} // namespace tourplanner::recall
