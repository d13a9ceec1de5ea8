#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "footfall/rng.hpp"
#include "footfall/transition.hpp"

namespace footfall {

struct GridPos {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const GridPos&, const GridPos&) = default;
};

/// Candidate grid positions. positions[0] is the anchor every layout's
/// first gene is pinned to; repair and mutation scan `positions` in order.
struct PositionPool {
    std::vector<GridPos> positions;
    int grid_side = 0;

    const GridPos& anchor() const { return positions.front(); }
};

/// Square grid of side ceil(sqrt(2 * n_activities)), row-major, anchored at
/// (0,0). Strictly more cells than activities, so an unused position always
/// exists for mutation.
PositionPool make_grid_pool(int n_activities);

/// GA chromosome: genes[k] is the grid position of activity k. Genes are
/// pairwise distinct and drawn from the pool.
struct Layout {
    std::vector<GridPos> genes;
};

bool layout_valid(const Layout& layout, const PositionPool& pool,
                  int n_activities);

struct GAParams {
    int population_size = 100;
    int generations = 1000;
    double crossover_chance = 0.1;
    double mutation_chance = 0.4;  // <= 0.5
    int elite_count = 2;
    int tournament_size = 3;
    std::uint64_t seed = 0;
};

struct RunTrace {
    std::vector<double> best_fitness_per_generation;  // index 0 = initial
    Layout best_layout;
    double best_fitness = 0.0;
};

/// Sum over ordered pairs (i,j), i != j, W[i][j] > 0, of
/// W[i][j] / euclidean_distance(genes[i], genes[j]).
double fitness(const Layout& layout, const WeightMatrix& W);

/// 2-point crossover over the segment [c1, c2), cut points sampled in
/// [1, n] so gene 0 is never touched; duplicates introduced by the swap are
/// repaired with the first pool position absent from the child.
std::pair<Layout, Layout> crossover(const Layout& parent_a,
                                    const Layout& parent_b,
                                    const PositionPool& pool, Rng& rng);

/// Crossover with explicit cut points (segment [c1, c2), 1 <= c1 <= c2 <= n).
std::pair<Layout, Layout> crossover_at(const Layout& parent_a,
                                       const Layout& parent_b,
                                       const PositionPool& pool,
                                       std::size_t c1, std::size_t c2);

/// With probability `mutation_chance`, applies one of two operators chosen
/// uniformly: swap two genes at indices >= 1, or replace a gene at index
/// >= 1 with a random unused pool position (falls back to the swap when the
/// pool has no unused position).
Layout mutate(const Layout& layout, const PositionPool& pool,
              double mutation_chance, Rng& rng);

/// Tournament selection: samples `tournament_size` individuals uniformly
/// with replacement and returns the fittest.
const Layout& select(std::span<const Layout> population,
                     std::span<const double> fitnesses, int tournament_size,
                     Rng& rng);

/// Uniform random distinct-position assignment with gene 0 anchored.
Layout random_layout(const PositionPool& pool, int n_activities, Rng& rng);

/// The initial population evolve() starts from, reproducible from the
/// params seed alone.
std::vector<Layout> initial_population(const WeightMatrix& W,
                                       const PositionPool& pool,
                                       const GAParams& params);

/// Generational GA with elitism; returns the best layout ever seen and the
/// per-generation best fitness (non-decreasing). Deterministic per seed.
RunTrace evolve(const WeightMatrix& W, const PositionPool& pool,
                const GAParams& params);

/// Baseline random walk: each generation unconditionally swaps two gene
/// indices >= 1 of the current layout; the trace records the running best.
RunTrace random_baseline(const WeightMatrix& W, const PositionPool& pool,
                         const Layout& initial, int generations, Rng& rng);

}  // namespace footfall
