#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "footfall/layout_ga.hpp"
#include "oracles.hpp"

using namespace footfall;

namespace {

WeightMatrix matrix_from(std::vector<std::vector<std::int64_t>> counts) {
    WeightMatrix W;
    W.n = static_cast<int>(counts.size());
    W.counts = std::move(counts);
    return W;
}

WeightMatrix event_graph_matrix() {
    return matrix_from({{0, 27, 0, 13, 0, 0},
                        {0, 0, 23, 0, 0, 0},
                        {0, 0, 0, 15, 0, 5},
                        {0, 0, 0, 0, 21, 0},
                        {0, 8, 0, 0, 0, 11},
                        {9, 0, 0, 0, 0, 0}});
}

PositionPool pool_from(std::vector<GridPos> positions) {
    PositionPool pool;
    pool.positions = std::move(positions);
    pool.grid_side = 0;
    return pool;
}

}  // namespace

TEST_CASE("grid pool geometry") {
    PositionPool pool = make_grid_pool(6);
    CHECK(pool.grid_side == 4);  // ceil(sqrt(12))
    CHECK(pool.positions.size() == 16);
    CHECK(pool.anchor() == GridPos{0, 0});
    std::set<GridPos> distinct(pool.positions.begin(), pool.positions.end());
    CHECK(distinct.size() == pool.positions.size());
}

TEST_CASE("fitness of a single edge") {
    WeightMatrix W = matrix_from({{0, 10}, {0, 0}});
    Layout layout{{{0, 0}, {0, 5}}};
    CHECK(fitness(layout, W) == doctest::Approx(2.0));
}

TEST_CASE("moving flow-connected pairs closer raises fitness") {
    WeightMatrix W = event_graph_matrix();
    Layout far{{{0, 0}, {8, 0}, {16, 0}, {0, 8}, {8, 8}, {16, 8}}};
    Layout near{{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}};
    CHECK(fitness(near, W) > fitness(far, W));
}

TEST_CASE("fitness matches an independent re-summation on a hexagon") {
    WeightMatrix W = event_graph_matrix();
    Layout hexagon{{{0, 0}, {-2, 3}, {0, 6}, {4, 6}, {6, 3}, {4, 0}}};
    CHECK(fitness(hexagon, W) ==
          doctest::Approx(oracles::fitness_by_resummation(hexagon, W)).epsilon(1e-12));
}

TEST_CASE("fitness rejects duplicate positions") {
    WeightMatrix W = matrix_from({{0, 1}, {1, 0}});
    Layout dup{{{1, 1}, {1, 1}}};
    CHECK_THROWS_AS(fitness(dup, W), std::invalid_argument);
}

TEST_CASE("scaling positions by s divides fitness by s") {
    WeightMatrix W = event_graph_matrix();
    Layout base{{{0, 0}, {1, 2}, {3, 1}, {2, 4}, {5, 0}, {4, 3}}};
    Layout scaled = base;
    for (GridPos& g : scaled.genes) { g.x *= 3; g.y *= 3; }
    CHECK(fitness(scaled, W) == doctest::Approx(fitness(base, W) / 3.0).epsilon(1e-12));
}

TEST_CASE("crossover of identical parents returns the parents") {
    PositionPool pool = make_grid_pool(4);
    Rng rng(7);
    Layout parent = random_layout(pool, 4, rng);
    auto [a, b] = crossover(parent, parent, pool, rng);
    CHECK(a.genes == parent.genes);
    CHECK(b.genes == parent.genes);
}

TEST_CASE("equal cut points are the identity") {
    PositionPool pool = make_grid_pool(5);
    Rng rng(8);
    Layout pa = random_layout(pool, 5, rng);
    Layout pb = random_layout(pool, 5, rng);
    auto [a, b] = crossover_at(pa, pb, pool, 2, 2);
    CHECK(a.genes == pa.genes);
    CHECK(b.genes == pb.genes);
}

TEST_CASE("conflicting crossover segment is repaired from pool order") {
    // pool ordered so (6,6) is the first position missing from the
    // conflicted child
    PositionPool pool = pool_from({{5, 0}, {3, 4}, {3, 7}, {0, 2}, {6, 6},
                                   {6, 3}, {1, 3}, {5, 8}, {9, 0}});
    Layout pa{{{5, 0}, {6, 3}, {1, 3}, {3, 7}, {0, 2}}};
    Layout pb{{{6, 6}, {3, 4}, {5, 0}, {5, 8}, {9, 0}}};
    auto [child_a, child_b] = crossover_at(pa, pb, pool, 1, 3);
    // swapping genes 1..2 into parent A introduces a duplicate (5,0)
    CHECK(child_a.genes == std::vector<GridPos>{{5, 0}, {3, 4}, {6, 6}, {3, 7}, {0, 2}});
    // the sibling picks up parent A's segment with no conflict
    CHECK(child_b.genes == std::vector<GridPos>{{6, 6}, {6, 3}, {1, 3}, {5, 8}, {9, 0}});
}

TEST_CASE("crossover always yields valid children") {
    PositionPool pool = make_grid_pool(7);
    Rng rng(99);
    for (int rep = 0; rep < 1000; ++rep) {
        Layout pa = random_layout(pool, 7, rng);
        Layout pb = random_layout(pool, 7, rng);
        auto [a, b] = crossover(pa, pb, pool, rng);
        for (const Layout& child : {a, b}) {
            std::set<GridPos> distinct(child.genes.begin(), child.genes.end());
            CHECK(distinct.size() == 7);
            CHECK(child.genes.front() == pool.anchor());
            for (const GridPos& g : child.genes) {
                bool in_pool = std::find(pool.positions.begin(), pool.positions.end(), g) !=
                               pool.positions.end();
                CHECK(in_pool);
            }
        }
    }
}

TEST_CASE("mutation with zero chance is the identity") {
    PositionPool pool = make_grid_pool(5);
    Rng rng(3);
    Layout layout = random_layout(pool, 5, rng);
    for (int rep = 0; rep < 100; ++rep)
        CHECK(mutate(layout, pool, 0.0, rng).genes == layout.genes);
}

TEST_CASE("mutation rate matches the configured chance") {
    PositionPool pool = make_grid_pool(6);
    Rng rng(17);
    Layout layout = random_layout(pool, 6, rng);
    int mutated = 0;
    for (int rep = 0; rep < 10000; ++rep)
        if (mutate(layout, pool, 0.4, rng).genes != layout.genes) ++mutated;
    // 3-sigma binomial band around 4000
    CHECK(mutated >= 3850);
    CHECK(mutated <= 4150);
}

TEST_CASE("mutation preserves layout validity and the anchor") {
    PositionPool pool = make_grid_pool(6);
    Rng rng(31);
    Layout layout = random_layout(pool, 6, rng);
    for (int rep = 0; rep < 5000; ++rep) {
        layout = mutate(layout, pool, 0.5, rng);
        CHECK(layout_valid(layout, pool, 6));
    }
}

TEST_CASE("mutation falls back to swapping when the pool is saturated") {
    PositionPool pool = pool_from({{0, 0}, {1, 0}, {0, 1}});
    Layout layout{{{0, 0}, {1, 0}, {0, 1}}};
    Rng rng(12);
    for (int rep = 0; rep < 2000; ++rep) {
        Layout next = mutate(layout, pool, 0.5, rng);
        CHECK(layout_valid(next, pool, 3));
        // replacement is impossible, so the gene multiset never changes
        std::multiset<GridPos> before(layout.genes.begin(), layout.genes.end());
        std::multiset<GridPos> after(next.genes.begin(), next.genes.end());
        CHECK(before == after);
    }
}

TEST_CASE("mutation rejects chances above one half") {
    PositionPool pool = make_grid_pool(4);
    Rng rng(1);
    Layout layout = random_layout(pool, 4, rng);
    CHECK_THROWS_AS(mutate(layout, pool, 0.6, rng), std::invalid_argument);
}

TEST_CASE("exhaustive tournament returns the global best") {
    PositionPool pool = make_grid_pool(4);
    Rng rng(5);
    std::vector<Layout> population;
    std::vector<double> fits;
    for (int i = 0; i < 8; ++i) {
        population.push_back(random_layout(pool, 4, rng));
        fits.push_back(static_cast<double>(i));
    }
    for (int rep = 0; rep < 50; ++rep) {
        const Layout& winner = select(population, fits, 8 * 4, rng);
        CHECK(winner.genes == population.back().genes);
    }
}

TEST_CASE("singleton population always wins") {
    PositionPool pool = make_grid_pool(3);
    Rng rng(2);
    std::vector<Layout> population{random_layout(pool, 3, rng)};
    std::vector<double> fits{1.0};
    CHECK(select(population, fits, 3, rng).genes == population[0].genes);
}

TEST_CASE("selection over uniform fitness is close to uniform") {
    PositionPool pool = make_grid_pool(4);
    Rng rng(77);
    std::vector<Layout> population;
    std::vector<double> fits(10, 1.0);
    for (int i = 0; i < 10; ++i)
        population.push_back(random_layout(pool, 4, rng));
    std::vector<int> hits(10, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        const Layout& w = select(population, fits, 3, rng);
        for (int i = 0; i < 10; ++i)
            if (&w == &population[i]) { ++hits[i]; break; }
    }
    // chi-squared against uniform(10): 3.3e-5 critical value is ~35 at 9 dof
    double chi2 = 0.0;
    for (int h : hits) chi2 += (h - 1000.0) * (h - 1000.0) / 1000.0;
    CHECK(chi2 < 35.0);
}

TEST_CASE("zero generations returns the best of the initial population") {
    WeightMatrix W = event_graph_matrix();
    PositionPool pool = make_grid_pool(6);
    GAParams params;
    params.population_size = 20;
    params.generations = 0;
    params.seed = 42;
    RunTrace trace = evolve(W, pool, params);
    CHECK(trace.best_fitness_per_generation.size() == 1);

    std::vector<Layout> initial = initial_population(W, pool, params);
    double best = fitness(initial[0], W);
    for (const Layout& l : initial) best = std::max(best, fitness(l, W));
    CHECK(trace.best_fitness == doctest::Approx(best));
}

TEST_CASE("toy instance reaches the exhaustive optimum") {
    WeightMatrix W = matrix_from({{0, 9, 2}, {0, 0, 7}, {4, 0, 0}});
    PositionPool pool = pool_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    double optimum = oracles::exhaustive_layout_optimum(W, pool);

    GAParams params;
    params.population_size = 50;
    params.generations = 200;
    params.seed = 9;
    RunTrace trace = evolve(W, pool, params);
    CHECK(trace.best_fitness == doctest::Approx(optimum).epsilon(1e-12));
}

TEST_CASE("evolve is deterministic per seed") {
    WeightMatrix W = event_graph_matrix();
    PositionPool pool = make_grid_pool(6);
    GAParams params;
    params.population_size = 30;
    params.generations = 50;
    params.seed = 1234;
    RunTrace a = evolve(W, pool, params);
    RunTrace b = evolve(W, pool, params);
    CHECK(a.best_fitness_per_generation == b.best_fitness_per_generation);
    CHECK(a.best_layout.genes == b.best_layout.genes);
}

TEST_CASE("elitist traces never decrease") {
    WeightMatrix W = event_graph_matrix();
    PositionPool pool = make_grid_pool(6);
    GAParams params;
    params.population_size = 40;
    params.generations = 100;
    params.seed = 5;
    RunTrace trace = evolve(W, pool, params);
    CHECK(trace.best_fitness_per_generation.size() == 101);
    for (std::size_t g = 1; g < trace.best_fitness_per_generation.size(); ++g)
        CHECK(trace.best_fitness_per_generation[g] >=
              trace.best_fitness_per_generation[g - 1]);
    CHECK(layout_valid(trace.best_layout, pool, 6));
}

TEST_CASE("random baseline walks and records a running maximum") {
    WeightMatrix W = event_graph_matrix();
    PositionPool pool = make_grid_pool(6);
    Rng init_rng(88);
    Layout initial = random_layout(pool, 6, init_rng);

    Rng rng(13);
    RunTrace none = random_baseline(W, pool, initial, 0, rng);
    CHECK(none.best_fitness_per_generation ==
          std::vector<double>{fitness(initial, W)});

    RunTrace trace = random_baseline(W, pool, initial, 500, rng);
    CHECK(trace.best_fitness_per_generation.size() == 501);
    for (std::size_t g = 1; g < trace.best_fitness_per_generation.size(); ++g)
        CHECK(trace.best_fitness_per_generation[g] >=
              trace.best_fitness_per_generation[g - 1]);
    CHECK(layout_valid(trace.best_layout, pool, 6));
}

TEST_CASE("parameter validation") {
    WeightMatrix W = event_graph_matrix();
    PositionPool pool = make_grid_pool(6);
    GAParams params;
    params.elite_count = params.population_size;
    CHECK_THROWS_AS(evolve(W, pool, params), std::invalid_argument);

    params = GAParams{};
    params.mutation_chance = 0.7;
    CHECK_THROWS_AS(evolve(W, pool, params), std::invalid_argument);

    params = GAParams{};
    PositionPool tiny = pool_from({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(evolve(W, tiny, params), std::invalid_argument);
}
