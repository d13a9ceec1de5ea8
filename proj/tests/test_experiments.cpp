#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "footfall/experiments.hpp"
#include "footfall/patterns.hpp"
#include "footfall/transition.hpp"

using namespace footfall;
namespace fs = std::filesystem;

namespace {

PatternCorpus small_corpus() {
    CorpusConfig cfg;
    cfg.n_activities = 8;
    cfg.n_visitors = 200;
    cfg.walk_length_min = 4;
    cfg.walk_length_max = 8;
    cfg.seed = 5;
    return generate_corpus(cfg);
}

PatternCorpus chain_corpus(int n, int laps) {
    PatternCorpus corpus;
    corpus.config.n_activities = n;
    for (int lap = 0; lap < laps; ++lap) {
        VisitorPattern p;
        for (int i = 0; i < n; ++i) p.push_back(i);
        corpus.patterns.push_back(p);
    }
    corpus.config.n_visitors = laps;
    return corpus;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("footfall_test_" + name);
}

}  // namespace

TEST_CASE("degenerate 1x1 sweep equals a single evolve call") {
    TransitionModel model = train(small_corpus());
    PositionPool pool = make_grid_pool(model.W.n);

    SweepSpec spec;
    spec.crossover_values = {0.2};
    spec.mutation_values = {0.3};
    spec.repeats = 1;
    spec.base.population_size = 20;
    spec.base.generations = 30;
    spec.master_seed = 9;
    ExperimentGrid grid = run_ga_sweep(model.W, pool, spec);

    GAParams params = spec.base;
    params.crossover_chance = 0.2;
    params.mutation_chance = 0.3;
    params.seed = derive_seed(9, 0, 0, 0);
    CHECK(grid.cells[0][0] == doctest::Approx(evolve(model.W, pool, params).best_fitness));
    CHECK(grid.stddev[0][0] == doctest::Approx(0.0));
}

TEST_CASE("sweep results are identical for any thread count") {
    TransitionModel model = train(small_corpus());
    PositionPool pool = make_grid_pool(model.W.n);
    SweepSpec spec;
    spec.crossover_values = {0.1, 0.4};
    spec.mutation_values = {0.2, 0.5};
    spec.repeats = 2;
    spec.base.population_size = 16;
    spec.base.generations = 20;
    spec.master_seed = 31;
    ExperimentGrid a = run_ga_sweep(model.W, pool, spec, 1);
    ExperimentGrid b = run_ga_sweep(model.W, pool, spec, 4);
    CHECK(a.cells == b.cells);
    CHECK(a.stddev == b.stddev);
}

TEST_CASE("paired GA/random traces share their starting fitness") {
    TransitionModel model = train(small_corpus());
    PositionPool pool = make_grid_pool(model.W.n);
    GAParams params;
    params.population_size = 20;
    params.generations = 40;
    params.seed = 77;
    auto pairs = run_ga_vs_random(model.W, pool, params, 3);
    CHECK(pairs.size() == 3);
    for (const auto& [ga, random] : pairs) {
        CHECK(ga.best_fitness_per_generation.size() == 41);
        CHECK(random.best_fitness_per_generation.size() == 41);
        CHECK(ga.best_fitness_per_generation.front() ==
              doctest::Approx(random.best_fitness_per_generation.front()));
    }
}

TEST_CASE("recommendation grid recovers a deterministic chain exactly") {
    PatternCorpus corpus = chain_corpus(6, 40);
    TransitionModel model = train(corpus);
    RecommendationGrids grids = run_recommendation_grid(
        corpus, model.P, model.priors, {1}, {0, 1});
    CHECK(grids.bounded.cells[0][1] == doctest::Approx(1.0));
    CHECK(grids.exact_match.cells[0][1] == doctest::Approx(1.0));
    // no conditioning at all does strictly worse
    CHECK(grids.bounded.cells[0][0] < grids.bounded.cells[0][1]);
    CHECK(grids.skipped_patterns == 0);
}

TEST_CASE("recommendation grid skips too-short patterns") {
    PatternCorpus corpus = chain_corpus(4, 10);
    corpus.patterns.push_back({0, 1});
    TransitionModel model = train(corpus);
    RecommendationGrids grids = run_recommendation_grid(
        corpus, model.P, model.priors, {1, 3}, {1});
    CHECK(grids.skipped_patterns == 1);  // the short pattern at cut 3
}

TEST_CASE("recommendation grid is thread-invariant") {
    PatternCorpus corpus = small_corpus();
    TransitionModel model = train(corpus);
    RecommendationGrids a = run_recommendation_grid(
        corpus, model.P, model.priors, {1, 2}, {0, 1, 2}, 1);
    RecommendationGrids b = run_recommendation_grid(
        corpus, model.P, model.priors, {1, 2}, {0, 1, 2}, 3);
    CHECK(a.bounded.cells == b.bounded.cells);
    CHECK(a.as_printed.cells == b.as_printed.cells);
    CHECK(a.exact_match.cells == b.exact_match.cells);
}

TEST_CASE("grid export and reimport round-trips bit-exactly") {
    ExperimentGrid grid;
    grid.row_labels = {0.05, 0.1};
    grid.col_labels = {0.2, 0.4};
    grid.cells = {{1.2345678901234567, 2.0}, {1.0 / 3.0, 9.87654321e-12}};
    grid.stddev = {{0.0, 0.0}, {0.0, 0.0}};

    fs::path path = temp_file("grid.csv");
    export_grid(grid, path.string());

    // 3x3 CSV including the label row and column
    std::ifstream in(path);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 3);

    ExperimentGrid back = import_grid(path.string());
    CHECK(back.row_labels == grid.row_labels);
    CHECK(back.col_labels == grid.col_labels);
    CHECK(back.cells == grid.cells);
    fs::remove(path);
}

TEST_CASE("empty grid exports a header-only file") {
    ExperimentGrid grid;
    fs::path path = temp_file("empty_grid.csv");
    export_grid(grid, path.string());
    ExperimentGrid back = import_grid(path.string());
    CHECK(back.row_labels.empty());
    CHECK(back.col_labels.empty());
    CHECK(back.cells.empty());
    fs::remove(path);
}

TEST_CASE("export reports I/O failures with path context") {
    ExperimentGrid grid;
    grid.row_labels = {1.0};
    grid.col_labels = {1.0};
    grid.cells = {{0.0}};
    grid.stddev = {{0.0}};
    CHECK_THROWS_WITH_AS(export_grid(grid, "/nonexistent_dir_xyz/grid.csv"),
                         doctest::Contains("/nonexistent_dir_xyz/grid.csv"),
                         std::runtime_error);
}
