#include "footfall/transition.hpp"

#include <stdexcept>

namespace footfall {

WeightMatrix build_weight_matrix(const PatternCorpus& corpus) {
    if (corpus.config.n_activities < 1)
        throw std::invalid_argument("build_weight_matrix: corpus has no activities");

    WeightMatrix W;
    W.n = corpus.config.n_activities;
    W.counts.assign(W.n, std::vector<std::int64_t>(W.n, 0));
    for (const auto& pattern : corpus.patterns) {
        for (std::size_t v = 1; v < pattern.size(); ++v) {
            ActivityId from = pattern[v - 1];
            ActivityId to = pattern[v];
            if (from < 0 || from >= W.n || to < 0 || to >= W.n)
                throw std::invalid_argument("build_weight_matrix: activity id out of range");
            ++W.counts[from][to];
        }
    }
    return W;
}

ProbMatrix normalize(const WeightMatrix& W) {
    ProbMatrix P;
    P.n = W.n;
    P.probs.assign(P.n, std::vector<double>(P.n, 0.0));
    for (int col = 0; col < W.n; ++col) {
        std::int64_t column_sum = 0;
        for (int row = 0; row < W.n; ++row)
            column_sum += W.counts[row][col] + 1;
        for (int row = 0; row < W.n; ++row)
            P.probs[row][col] =
                static_cast<double>(W.counts[row][col] + 1) /
                static_cast<double>(column_sum);
    }
    return P;
}

PriorVector build_priors(const PatternCorpus& corpus) {
    int n = corpus.config.n_activities;
    if (n < 1)
        throw std::invalid_argument("build_priors: corpus has no activities");

    std::vector<std::int64_t> visit_count(n, 0);
    std::int64_t total_visits = 0;
    for (const auto& pattern : corpus.patterns) {
        for (ActivityId a : pattern) {
            if (a < 0 || a >= n)
                throw std::invalid_argument("build_priors: activity id out of range");
            ++visit_count[a];
            ++total_visits;
        }
    }
    if (total_visits == 0)
        throw std::invalid_argument("build_priors: corpus contains no visits");

    PriorVector priors;
    priors.n = n;
    priors.priors.resize(n);
    for (int k = 0; k < n; ++k)
        priors.priors[k] = static_cast<double>(visit_count[k] + 1) /
                           static_cast<double>(total_visits + n);
    return priors;
}

TransitionModel train(const PatternCorpus& corpus) {
    TransitionModel model;
    model.W = build_weight_matrix(corpus);
    model.P = normalize(model.W);
    model.priors = build_priors(corpus);
    return model;
}

}  // namespace footfall
