#pragma once

#include <cstdint>
#include <vector>

#include "footfall/rng.hpp"

namespace footfall {

using ActivityId = int;

/// Ordered sequence of activity visits for one visitor.
using VisitorPattern = std::vector<ActivityId>;

/// Row-stochastic digraph the synthetic walks are drawn from. Each row has a
/// small number of nonzero out-edges and a zero diagonal (no self-loops).
struct GroundTruthGraph {
    int n_activities = 0;
    std::vector<std::vector<double>> edge_weights;  // rows sum to 1
    std::uint64_t seed = 0;
};

struct CorpusConfig {
    int n_activities = 0;
    int n_visitors = 0;
    int walk_length_min = 4;
    int walk_length_max = 12;
    double noise_factor = 0.0;  // in [0, 1]
    std::uint64_t seed = 0;
};

struct PatternCorpus {
    std::vector<VisitorPattern> patterns;
    CorpusConfig config;
};

struct PatternSplit {
    std::vector<ActivityId> history;  // oldest first
    std::vector<ActivityId> targets;  // the cut tail, in original order
};

/// Builds a row-stochastic graph with `out_degree` random out-edges per row
/// (fewer when n-1 < out_degree), zero diagonal, weights drawn uniform in
/// (0,1], raised to `weight_skew` and normalized. Deterministic per seed.
/// weight_skew = 1 keeps the raw uniform draw; larger values concentrate
/// each row's mass on its heaviest edge.
GroundTruthGraph generate_ground_truth(int n_activities, std::uint64_t seed,
                                       int out_degree = 3,
                                       double weight_skew = 1.0);

/// Weighted random walk of `length` visits starting at `start`, then
/// floor(noise_factor * length) uniformly random activities inserted at
/// uniformly random positions.
VisitorPattern generate_pattern(const GroundTruthGraph& graph, ActivityId start,
                                int length, double noise_factor, Rng& rng);

/// Generates the full corpus from a caller-supplied ground truth. Start
/// activities are assigned round-robin, walk lengths drawn uniformly in
/// [walk_length_min, walk_length_max]. Each visitor uses an RNG stream
/// derived from (config.seed, visitor_index), so the result is identical
/// for any thread count.
PatternCorpus generate_corpus(const GroundTruthGraph& graph,
                              const CorpusConfig& config, int threads = 1);

/// Convenience overload: builds the ground truth from (n_activities, seed)
/// with default generator parameters.
PatternCorpus generate_corpus(const CorpusConfig& config, int threads = 1);

/// targets = last `cut` visits; history = up to `history_size` visits
/// immediately preceding them (fewer if the pattern is short).
PatternSplit split_pattern(const VisitorPattern& pattern, int cut,
                           int history_size);

}  // namespace footfall
