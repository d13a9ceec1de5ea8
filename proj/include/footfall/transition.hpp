#pragma once

#include <cstdint>
#include <vector>

#include "footfall/patterns.hpp"

namespace footfall {

/// Raw transition counts. counts[i][j] = number of observed visits of
/// activity j immediately after activity i.
struct WeightMatrix {
    int n = 0;
    std::vector<std::vector<std::int64_t>> counts;
};

/// Add-one smoothed, column-normalized conditional probabilities.
/// probs[i][k] = P(previous = i | next = k). Columns sum to 1 and every
/// entry is strictly positive.
struct ProbMatrix {
    int n = 0;
    std::vector<std::vector<double>> probs;
};

/// Add-one smoothed marginal visit frequencies, P(next = k).
struct PriorVector {
    int n = 0;
    std::vector<double> priors;
};

struct TransitionModel {
    WeightMatrix W;
    ProbMatrix P;
    PriorVector priors;
};

WeightMatrix build_weight_matrix(const PatternCorpus& corpus);

/// P[i][k] = (W[i][k] + 1) / sum_i (W[i][k] + 1). W is not mutated.
ProbMatrix normalize(const WeightMatrix& W);

/// priors[k] = (visit_count[k] + 1) / (total_visits + n).
PriorVector build_priors(const PatternCorpus& corpus);

TransitionModel train(const PatternCorpus& corpus);

}  // namespace footfall
