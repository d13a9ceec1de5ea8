#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "footfall/layout_ga.hpp"
#include "footfall/recommender.hpp"

namespace footfall {

/// Matrix of scalar results indexed by two swept parameter axes; each cell
/// aggregates the same number of independent runs.
struct ExperimentGrid {
    std::vector<double> row_labels;
    std::vector<double> col_labels;
    std::vector<std::vector<double>> cells;   // means
    std::vector<std::vector<double>> stddev;  // population stddev
};

struct SweepSpec {
    std::vector<double> crossover_values;  // rows
    std::vector<double> mutation_values;   // columns
    int repeats = 1;
    GAParams base;
    std::uint64_t master_seed = 0;
};

/// Mean final best fitness per (crossover, mutation) cell. Each run is
/// seeded from (master_seed, row, col, repeat), so cells are independent
/// and the grid is identical for any evaluation order or thread count.
ExperimentGrid run_ga_sweep(const WeightMatrix& W, const PositionPool& pool,
                            const SweepSpec& spec, int threads = 1);

/// Paired GA and random-baseline traces. Both sides of a repeat share the
/// same seed lineage and the baseline starts from the best individual of
/// the GA's initial population, so both traces open at the same fitness.
std::vector<std::pair<RunTrace, RunTrace>> run_ga_vs_random(
    const WeightMatrix& W, const PositionPool& pool, const GAParams& params,
    int repeats, int threads = 1);

struct RecommendationGrids {
    ExperimentGrid bounded;      // mean of evaluate_bounded, the headline
    ExperimentGrid as_printed;   // mean of evaluate (>= 1)
    ExperimentGrid exact_match;  // mean exact-match rate
    std::int64_t skipped_patterns = 0;  // too short for some cut value
};

/// For each (cut, window) cell: split every pattern, reconstruct the tail,
/// and average the evaluation metrics over all patterns long enough for
/// that cut. Rows are cut values, columns window values.
RecommendationGrids run_recommendation_grid(const PatternCorpus& corpus,
                                            const ProbMatrix& P,
                                            const PriorVector& priors,
                                            const std::vector<int>& cut_values,
                                            const std::vector<int>& window_values,
                                            int threads = 1);

/// CSV with a header row of column labels and one leading label per row;
/// values printed with 17 significant digits, '.' decimal point.
void export_grid(const ExperimentGrid& grid, const std::string& path);

ExperimentGrid import_grid(const std::string& path);

}  // namespace footfall
