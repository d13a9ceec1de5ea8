#pragma once

#include <span>
#include <vector>

#include "footfall/transition.hpp"

namespace footfall {

/// Log2-domain Naive Bayes scores for every candidate next activity given
/// the visit history (oldest first). The most recent visit has weight 1 and
/// each older visit half the weight of its successor; with
/// `recency_weighted` false all weights are 1, matching the plain
/// product-of-conditionals form.
std::vector<double> score(const ProbMatrix& P, const PriorVector& priors,
                          std::span<const ActivityId> history,
                          bool recency_weighted = true);

/// Argmax of score(); ties broken by lowest activity index.
ActivityId recommend(const ProbMatrix& P, const PriorVector& priors,
                     std::span<const ActivityId> history,
                     bool recency_weighted = true);

/// Iterates `cut` recommendations, each conditioning on the last `window`
/// visits of the history extended by the previous recommendations.
std::vector<ActivityId> reconstruct(const ProbMatrix& P,
                                    const PriorVector& priors,
                                    std::span<const ActivityId> history,
                                    int cut, int window,
                                    bool recency_weighted = true);

/// Index-product comparison of an original tail against a recommended one:
/// sum(a_i * b_i) / sum(min(a_i, b_i)^2), always >= 1. Takes 0-based
/// activity ids; the metric itself is defined over 1-based indices and the
/// conversion happens here.
double evaluate(std::span<const ActivityId> original,
                std::span<const ActivityId> recommended);

/// Reciprocal-ordered variant, sum(min^2) / sum(a*b), in (0, 1]; equals 1
/// iff the tails match elementwise.
double evaluate_bounded(std::span<const ActivityId> original,
                        std::span<const ActivityId> recommended);

/// Fraction of positions where the recommendation matches exactly.
double exact_match_rate(std::span<const ActivityId> original,
                        std::span<const ActivityId> recommended);

}  // namespace footfall
