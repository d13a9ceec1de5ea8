#include "footfall/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace footfall {

namespace {

void check_history(int n, std::span<const ActivityId> history) {
    for (ActivityId a : history)
        if (a < 0 || a >= n)
            throw std::invalid_argument("recommender: history activity id out of range");
}

}  // namespace

std::vector<double> score(const ProbMatrix& P, const PriorVector& priors,
                          std::span<const ActivityId> history,
                          bool recency_weighted) {
    if (P.n != priors.n)
        throw std::invalid_argument("recommender: model dimension mismatch");
    check_history(P.n, history);

    std::vector<double> scores(P.n);
    for (int k = 0; k < P.n; ++k) {
        double r = std::log2(priors.priors[k]);
        // history is oldest-first; the most recent visit carries weight 1,
        // each older one half of its successor
        double alpha = 1.0;
        for (std::size_t i = history.size(); i-- > 0;) {
            r += alpha * std::log2(P.probs[history[i]][k]);
            if (recency_weighted) alpha *= 0.5;
        }
        scores[k] = r;
    }
    return scores;
}

ActivityId recommend(const ProbMatrix& P, const PriorVector& priors,
                     std::span<const ActivityId> history,
                     bool recency_weighted) {
    std::vector<double> scores = score(P, priors, history, recency_weighted);
    ActivityId best = 0;
    for (int k = 1; k < P.n; ++k)
        if (scores[k] > scores[best]) best = k;  // ties keep the lowest index
    return best;
}

std::vector<ActivityId> reconstruct(const ProbMatrix& P,
                                    const PriorVector& priors,
                                    std::span<const ActivityId> history,
                                    int cut, int window,
                                    bool recency_weighted) {
    if (cut < 1)
        throw std::invalid_argument("reconstruct: cut must be >= 1");
    if (window < 0)
        throw std::invalid_argument("reconstruct: window must be >= 0");

    std::vector<ActivityId> extended(history.begin(), history.end());
    std::vector<ActivityId> recommendations;
    recommendations.reserve(cut);
    for (int s = 0; s < cut; ++s) {
        std::size_t w = std::min<std::size_t>(window, extended.size());
        std::span<const ActivityId> view(extended.data() + extended.size() - w, w);
        ActivityId rec = recommend(P, priors, view, recency_weighted);
        recommendations.push_back(rec);
        extended.push_back(rec);  // the recommendation joins the history
    }
    return recommendations;
}

namespace {

std::pair<double, double> index_products(std::span<const ActivityId> original,
                                         std::span<const ActivityId> recommended) {
    if (original.empty() || original.size() != recommended.size())
        throw std::invalid_argument("evaluate: tails must be non-empty and of equal length");
    double prod_sum = 0.0;
    double min_sq_sum = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        // the metric is defined over 1-based activity indices
        double a = static_cast<double>(original[i]) + 1.0;
        double b = static_cast<double>(recommended[i]) + 1.0;
        if (a < 1.0 || b < 1.0)
            throw std::invalid_argument("evaluate: negative activity id");
        prod_sum += a * b;
        double m = std::min(a, b);
        min_sq_sum += m * m;
    }
    return {prod_sum, min_sq_sum};
}

}  // namespace

double evaluate(std::span<const ActivityId> original,
                std::span<const ActivityId> recommended) {
    auto [prod_sum, min_sq_sum] = index_products(original, recommended);
    return prod_sum / min_sq_sum;
}

double evaluate_bounded(std::span<const ActivityId> original,
                        std::span<const ActivityId> recommended) {
    auto [prod_sum, min_sq_sum] = index_products(original, recommended);
    return min_sq_sum / prod_sum;
}

double exact_match_rate(std::span<const ActivityId> original,
                        std::span<const ActivityId> recommended) {
    if (original.empty() || original.size() != recommended.size())
        throw std::invalid_argument("exact_match_rate: tails must be non-empty and of equal length");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < original.size(); ++i)
        if (original[i] == recommended[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(original.size());
}

}  // namespace footfall
