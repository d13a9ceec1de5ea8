#include "footfall/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "footfall/parallel.hpp"

namespace footfall {

GroundTruthGraph generate_ground_truth(int n_activities, std::uint64_t seed,
                                       int out_degree, double weight_skew) {
    if (n_activities < 2)
        throw std::invalid_argument("generate_ground_truth: n_activities must be >= 2");
    if (out_degree < 1)
        throw std::invalid_argument("generate_ground_truth: out_degree must be >= 1");

    GroundTruthGraph graph;
    graph.n_activities = n_activities;
    graph.seed = seed;
    graph.edge_weights.assign(n_activities,
                              std::vector<double>(n_activities, 0.0));

    Rng rng(derive_seed(seed, 0x67726170));  // "grap" stream
    int degree = std::min(out_degree, n_activities - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<int> candidates(n_activities - 1);
    for (int row = 0; row < n_activities; ++row) {
        // successors drawn without replacement, excluding the diagonal
        int idx = 0;
        for (int j = 0; j < n_activities; ++j)
            if (j != row) candidates[idx++] = j;
        for (int k = 0; k < degree; ++k) {
            std::uniform_int_distribution<int> pick(k, n_activities - 2);
            std::swap(candidates[k], candidates[pick(rng)]);
        }
        double total = 0.0;
        for (int k = 0; k < degree; ++k) {
            double w = std::pow(1.0 - unit(rng), weight_skew);  // in (0,1]
            graph.edge_weights[row][candidates[k]] = w;
            total += w;
        }
        for (int k = 0; k < degree; ++k)
            graph.edge_weights[row][candidates[k]] /= total;
    }
    return graph;
}

namespace {

ActivityId step(const GroundTruthGraph& graph, ActivityId from, Rng& rng) {
    const auto& row = graph.edge_weights[from];
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    double acc = 0.0;
    ActivityId last_nonzero = -1;
    for (int j = 0; j < graph.n_activities; ++j) {
        if (row[j] <= 0.0) continue;
        last_nonzero = j;
        acc += row[j];
        if (u < acc) return j;
    }
    // rounding slack: fall back to the heaviest-indexed successor
    if (last_nonzero >= 0) return last_nonzero;
    throw std::logic_error("ground-truth row has no out-edges");
}

}  // namespace

VisitorPattern generate_pattern(const GroundTruthGraph& graph, ActivityId start,
                                int length, double noise_factor, Rng& rng) {
    if (start < 0 || start >= graph.n_activities)
        throw std::invalid_argument("generate_pattern: start out of range");
    if (length < 1)
        throw std::invalid_argument("generate_pattern: length must be >= 1");

    VisitorPattern pattern;
    pattern.reserve(length);
    pattern.push_back(start);
    for (int i = 1; i < length; ++i)
        pattern.push_back(step(graph, pattern.back(), rng));

    int n_noise = static_cast<int>(std::floor(noise_factor * length));
    std::uniform_int_distribution<int> any_activity(0, graph.n_activities - 1);
    for (int k = 0; k < n_noise; ++k) {
        std::uniform_int_distribution<std::size_t> pos(0, pattern.size());
        pattern.insert(pattern.begin() + pos(rng), any_activity(rng));
    }
    return pattern;
}

PatternCorpus generate_corpus(const GroundTruthGraph& graph,
                              const CorpusConfig& config, int threads) {
    if (config.n_activities != graph.n_activities)
        throw std::invalid_argument("generate_corpus: config/graph activity count mismatch");
    if (config.n_activities < 2)
        throw std::invalid_argument("generate_corpus: n_activities must be >= 2");
    if (config.n_visitors < 0)
        throw std::invalid_argument("generate_corpus: n_visitors must be >= 0");
    if (config.walk_length_min < 1 ||
        config.walk_length_min > config.walk_length_max)
        throw std::invalid_argument("generate_corpus: invalid walk length range");
    if (config.noise_factor < 0.0 || config.noise_factor > 1.0)
        throw std::invalid_argument("generate_corpus: noise_factor must be in [0,1]");

    PatternCorpus corpus;
    corpus.config = config;
    corpus.patterns.resize(config.n_visitors);

    parallel_for(corpus.patterns.size(), threads, [&](std::size_t v) {
        Rng rng(derive_seed(config.seed, 0x76697369, v));  // "visi" stream
        ActivityId start = static_cast<ActivityId>(v % config.n_activities);
        std::uniform_int_distribution<int> len(config.walk_length_min,
                                               config.walk_length_max);
        corpus.patterns[v] = generate_pattern(graph, start, len(rng),
                                              config.noise_factor, rng);
    });
    return corpus;
}

PatternCorpus generate_corpus(const CorpusConfig& config, int threads) {
    GroundTruthGraph graph =
        generate_ground_truth(config.n_activities, config.seed);
    return generate_corpus(graph, config, threads);
}

PatternSplit split_pattern(const VisitorPattern& pattern, int cut,
                           int history_size) {
    if (cut < 1)
        throw std::invalid_argument("split_pattern: cut must be >= 1");
    if (history_size < 0)
        throw std::invalid_argument("split_pattern: history_size must be >= 0");
    if (static_cast<std::size_t>(cut) >= pattern.size())
        throw std::invalid_argument("split_pattern: cut must be smaller than the pattern");

    PatternSplit split;
    std::size_t tail_start = pattern.size() - static_cast<std::size_t>(cut);
    std::size_t hist_start =
        tail_start >= static_cast<std::size_t>(history_size)
            ? tail_start - static_cast<std::size_t>(history_size)
            : 0;
    split.history.assign(pattern.begin() + hist_start,
                         pattern.begin() + tail_start);
    split.targets.assign(pattern.begin() + tail_start, pattern.end());
    return split;
}

}  // namespace footfall
