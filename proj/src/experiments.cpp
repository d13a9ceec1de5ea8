#include "footfall/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "footfall/parallel.hpp"

namespace footfall {

namespace {

std::pair<double, double> mean_stddev(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return {mean, std::sqrt(var)};
}

ExperimentGrid empty_grid(const std::vector<double>& rows,
                          const std::vector<double>& cols) {
    ExperimentGrid grid;
    grid.row_labels = rows;
    grid.col_labels = cols;
    grid.cells.assign(rows.size(), std::vector<double>(cols.size(), 0.0));
    grid.stddev.assign(rows.size(), std::vector<double>(cols.size(), 0.0));
    return grid;
}

}  // namespace

ExperimentGrid run_ga_sweep(const WeightMatrix& W, const PositionPool& pool,
                            const SweepSpec& spec, int threads) {
    if (spec.repeats < 1)
        throw std::invalid_argument("run_ga_sweep: repeats must be >= 1");
    std::size_t n_rows = spec.crossover_values.size();
    std::size_t n_cols = spec.mutation_values.size();
    ExperimentGrid grid = empty_grid(spec.crossover_values, spec.mutation_values);

    std::vector<std::vector<double>> results(n_rows * n_cols);
    for (auto& cell : results) cell.resize(spec.repeats);

    parallel_for(n_rows * n_cols * spec.repeats, threads, [&](std::size_t task) {
        std::size_t rep = task % spec.repeats;
        std::size_t cell = task / spec.repeats;
        std::size_t row = cell / n_cols;
        std::size_t col = cell % n_cols;
        GAParams params = spec.base;
        params.crossover_chance = spec.crossover_values[row];
        params.mutation_chance = spec.mutation_values[col];
        params.seed = derive_seed(spec.master_seed, row, col, rep);
        results[cell][rep] = evolve(W, pool, params).best_fitness;
    });

    for (std::size_t row = 0; row < n_rows; ++row) {
        for (std::size_t col = 0; col < n_cols; ++col) {
            auto [mean, sd] = mean_stddev(results[row * n_cols + col]);
            grid.cells[row][col] = mean;
            grid.stddev[row][col] = sd;
        }
    }
    return grid;
}

std::vector<std::pair<RunTrace, RunTrace>> run_ga_vs_random(
    const WeightMatrix& W, const PositionPool& pool, const GAParams& params,
    int repeats, int threads) {
    if (repeats < 1)
        throw std::invalid_argument("run_ga_vs_random: repeats must be >= 1");
    std::vector<std::pair<RunTrace, RunTrace>> pairs(repeats);
    parallel_for(pairs.size(), threads, [&](std::size_t rep) {
        GAParams run_params = params;
        run_params.seed = derive_seed(params.seed, 0x70616972, rep);  // "pair"
        RunTrace ga = evolve(W, pool, run_params);

        // the baseline walks from the best individual of the GA's initial
        // population, so both traces open at the same fitness
        std::vector<Layout> initial = initial_population(W, pool, run_params);
        std::size_t best = 0;
        double best_fit = fitness(initial[0], W);
        for (std::size_t i = 1; i < initial.size(); ++i) {
            double f = fitness(initial[i], W);
            if (f > best_fit) {
                best_fit = f;
                best = i;
            }
        }
        Rng rng(derive_seed(run_params.seed, 0x62617365));  // "base"
        RunTrace random = random_baseline(W, pool, initial[best],
                                          run_params.generations, rng);
        pairs[rep] = {std::move(ga), std::move(random)};
    });
    return pairs;
}

RecommendationGrids run_recommendation_grid(
    const PatternCorpus& corpus, const ProbMatrix& P, const PriorVector& priors,
    const std::vector<int>& cut_values, const std::vector<int>& window_values,
    int threads) {
    std::vector<double> rows(cut_values.begin(), cut_values.end());
    std::vector<double> cols(window_values.begin(), window_values.end());
    RecommendationGrids out;
    out.bounded = empty_grid(rows, cols);
    out.as_printed = empty_grid(rows, cols);
    out.exact_match = empty_grid(rows, cols);

    std::size_t n_cols = window_values.size();
    std::vector<std::int64_t> skipped(cut_values.size() * n_cols, 0);

    parallel_for(cut_values.size() * n_cols, threads, [&](std::size_t cell) {
        std::size_t row = cell / n_cols;
        std::size_t col = cell % n_cols;
        int cut = cut_values[row];
        int window = window_values[col];

        std::vector<double> bounded, printed, exact;
        for (const auto& pattern : corpus.patterns) {
            if (pattern.size() <= static_cast<std::size_t>(cut)) {
                ++skipped[cell];
                continue;
            }
            PatternSplit split = split_pattern(pattern, cut, window);
            std::vector<ActivityId> rec =
                reconstruct(P, priors, split.history, cut, window);
            bounded.push_back(evaluate_bounded(split.targets, rec));
            printed.push_back(evaluate(split.targets, rec));
            exact.push_back(exact_match_rate(split.targets, rec));
        }
        auto [bm, bs] = mean_stddev(bounded);
        out.bounded.cells[row][col] = bm;
        out.bounded.stddev[row][col] = bs;
        auto [pm, ps] = mean_stddev(printed);
        out.as_printed.cells[row][col] = pm;
        out.as_printed.stddev[row][col] = ps;
        auto [em, es] = mean_stddev(exact);
        out.exact_match.cells[row][col] = em;
        out.exact_match.stddev[row][col] = es;
    });

    for (std::int64_t s : skipped) out.skipped_patterns += s;
    return out;
}

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void export_grid(const ExperimentGrid& grid, const std::string& path) {
    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    for (double col : grid.col_labels) csv << ',' << format_value(col);
    csv << '\n';
    for (std::size_t row = 0; row < grid.row_labels.size(); ++row) {
        csv << format_value(grid.row_labels[row]);
        for (std::size_t col = 0; col < grid.col_labels.size(); ++col)
            csv << ',' << format_value(grid.cells[row][col]);
        csv << '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("export_grid: cannot open " + path);
    out << csv.str();
    if (!out) throw std::runtime_error("export_grid: write failed for " + path);
}

ExperimentGrid import_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("import_grid: cannot open " + path);
    ExperimentGrid grid;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("import_grid: missing header in " + path);
    {
        std::istringstream header(line);
        std::string field;
        bool first = true;
        while (std::getline(header, field, ',')) {
            if (first) {
                first = false;  // leading empty label cell
                continue;
            }
            grid.col_labels.push_back(std::stod(field));
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        bool first = true;
        std::vector<double> cells;
        while (std::getline(row, field, ',')) {
            if (first) {
                grid.row_labels.push_back(std::stod(field));
                first = false;
            } else {
                cells.push_back(std::stod(field));
            }
        }
        if (cells.size() != grid.col_labels.size())
            throw std::runtime_error("import_grid: ragged row in " + path);
        grid.cells.push_back(std::move(cells));
    }
    grid.stddev.assign(grid.row_labels.size(),
                       std::vector<double>(grid.col_labels.size(), 0.0));
    return grid;
}

}  // namespace footfall
