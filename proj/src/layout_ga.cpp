#include "footfall/layout_ga.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace footfall {

PositionPool make_grid_pool(int n_activities) {
    if (n_activities < 1)
        throw std::invalid_argument("make_grid_pool: n_activities must be >= 1");
    int side = static_cast<int>(std::ceil(std::sqrt(2.0 * n_activities)));
    PositionPool pool;
    pool.grid_side = side;
    pool.positions.reserve(static_cast<std::size_t>(side) * side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            pool.positions.push_back({x, y});
    return pool;
}

bool layout_valid(const Layout& layout, const PositionPool& pool,
                  int n_activities) {
    if (layout.genes.size() != static_cast<std::size_t>(n_activities))
        return false;
    if (layout.genes.empty() || !(layout.genes.front() == pool.anchor()))
        return false;
    std::set<GridPos> in_pool(pool.positions.begin(), pool.positions.end());
    std::set<GridPos> seen;
    for (const GridPos& g : layout.genes) {
        if (!in_pool.count(g)) return false;
        if (!seen.insert(g).second) return false;
    }
    return true;
}

double fitness(const Layout& layout, const WeightMatrix& W) {
    int n = W.n;
    if (layout.genes.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("fitness: layout size does not match W");
    std::set<GridPos> seen(layout.genes.begin(), layout.genes.end());
    if (seen.size() != layout.genes.size())
        throw std::invalid_argument("fitness: layout has duplicate positions");

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || W.counts[i][j] <= 0) continue;
            double dx = layout.genes[i].x - layout.genes[j].x;
            double dy = layout.genes[i].y - layout.genes[j].y;
            total += static_cast<double>(W.counts[i][j]) /
                     std::sqrt(dx * dx + dy * dy);
        }
    }
    return total;
}

namespace {

// Replaces every repeated occurrence (keeping the first) with the first
// pool position absent from the child.
void repair(Layout& child, const PositionPool& pool) {
    std::map<GridPos, int> count;
    for (const GridPos& g : child.genes) ++count[g];
    std::set<GridPos> seen;
    for (GridPos& g : child.genes) {
        if (seen.insert(g).second) continue;
        // repeated occurrence: take the first pool position absent from
        // the child; the first occurrence (and so the anchor) is kept
        for (const GridPos& candidate : pool.positions) {
            auto it = count.find(candidate);
            if (it != count.end() && it->second > 0) continue;
            --count[g];
            g = candidate;
            ++count[g];
            seen.insert(g);
            break;
        }
    }
}

Layout cross_one(const Layout& keep, const Layout& donor,
                 const PositionPool& pool, std::size_t c1, std::size_t c2) {
    Layout child = keep;
    for (std::size_t i = c1; i < c2; ++i) child.genes[i] = donor.genes[i];
    repair(child, pool);
    return child;
}

}  // namespace

std::pair<Layout, Layout> crossover_at(const Layout& parent_a,
                                       const Layout& parent_b,
                                       const PositionPool& pool,
                                       std::size_t c1, std::size_t c2) {
    std::size_t n = parent_a.genes.size();
    if (parent_b.genes.size() != n)
        throw std::invalid_argument("crossover: parent size mismatch");
    if (c1 < 1 || c1 > c2 || c2 > n)
        throw std::invalid_argument("crossover: cut points out of range");
    return {cross_one(parent_a, parent_b, pool, c1, c2),
            cross_one(parent_b, parent_a, pool, c1, c2)};
}

std::pair<Layout, Layout> crossover(const Layout& parent_a,
                                    const Layout& parent_b,
                                    const PositionPool& pool, Rng& rng) {
    std::size_t n = parent_a.genes.size();
    if (n < 2) return {parent_a, parent_b};
    // gene 0 is anchored, so cuts start at 1
    std::uniform_int_distribution<std::size_t> first(1, n - 1);
    std::size_t c1 = first(rng);
    std::uniform_int_distribution<std::size_t> second(c1, n);
    std::size_t c2 = second(rng);
    return crossover_at(parent_a, parent_b, pool, c1, c2);
}

Layout mutate(const Layout& layout, const PositionPool& pool,
              double mutation_chance, Rng& rng) {
    if (mutation_chance < 0.0 || mutation_chance > 0.5)
        throw std::invalid_argument("mutate: mutation_chance must be in [0, 0.5]");
    std::size_t n = layout.genes.size();
    Layout result = layout;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) >= mutation_chance || n < 2) return result;

    bool swap_op = unit(rng) < 0.5;
    if (!swap_op) {
        // replacement needs a pool position no gene currently uses
        std::set<GridPos> used(result.genes.begin(), result.genes.end());
        std::vector<GridPos> unused;
        for (const GridPos& p : pool.positions)
            if (!used.count(p)) unused.push_back(p);
        if (unused.empty()) {
            swap_op = true;
        } else {
            std::uniform_int_distribution<std::size_t> gene(1, n - 1);
            std::uniform_int_distribution<std::size_t> pos(0, unused.size() - 1);
            result.genes[gene(rng)] = unused[pos(rng)];
            return result;
        }
    }
    if (swap_op && n >= 3) {
        std::uniform_int_distribution<std::size_t> gene(1, n - 1);
        std::size_t i = gene(rng);
        std::size_t j = gene(rng);
        while (j == i) j = gene(rng);
        std::swap(result.genes[i], result.genes[j]);
    }
    return result;
}

const Layout& select(std::span<const Layout> population,
                     std::span<const double> fitnesses, int tournament_size,
                     Rng& rng) {
    if (population.empty() || population.size() != fitnesses.size())
        throw std::invalid_argument("select: empty population or size mismatch");
    if (tournament_size < 1)
        throw std::invalid_argument("select: tournament_size must be >= 1");
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    std::size_t best = pick(rng);
    for (int t = 1; t < tournament_size; ++t) {
        std::size_t candidate = pick(rng);
        if (fitnesses[candidate] > fitnesses[best]) best = candidate;
    }
    return population[best];
}

Layout random_layout(const PositionPool& pool, int n_activities, Rng& rng) {
    if (pool.positions.size() < static_cast<std::size_t>(n_activities))
        throw std::invalid_argument("random_layout: pool smaller than activity count");
    Layout layout;
    layout.genes.reserve(n_activities);
    layout.genes.push_back(pool.anchor());
    // partial Fisher-Yates over the non-anchor positions
    std::vector<std::size_t> idx(pool.positions.size() - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i + 1;
    for (int k = 1; k < n_activities; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k - 1, idx.size() - 1);
        std::swap(idx[k - 1], idx[pick(rng)]);
        layout.genes.push_back(pool.positions[idx[k - 1]]);
    }
    return layout;
}

namespace {

void check_params(const WeightMatrix& W, const PositionPool& pool,
                  const GAParams& params) {
    if (params.population_size < 1)
        throw std::invalid_argument("evolve: population_size must be >= 1");
    if (params.elite_count < 0 || params.elite_count >= params.population_size)
        throw std::invalid_argument("evolve: elite_count must be < population_size");
    if (params.crossover_chance < 0.0 || params.crossover_chance > 1.0)
        throw std::invalid_argument("evolve: crossover_chance must be in [0,1]");
    if (params.mutation_chance < 0.0 || params.mutation_chance > 0.5)
        throw std::invalid_argument("evolve: mutation_chance must be in [0,0.5]");
    if (params.tournament_size < 1)
        throw std::invalid_argument("evolve: tournament_size must be >= 1");
    if (params.generations < 0)
        throw std::invalid_argument("evolve: generations must be >= 0");
    if (pool.positions.size() < static_cast<std::size_t>(W.n))
        throw std::invalid_argument("evolve: pool smaller than activity count");
}

}  // namespace

std::vector<Layout> initial_population(const WeightMatrix& W,
                                       const PositionPool& pool,
                                       const GAParams& params) {
    check_params(W, pool, params);
    Rng rng(derive_seed(params.seed, 0x696e6974));  // "init" stream
    std::vector<Layout> population;
    population.reserve(params.population_size);
    for (int i = 0; i < params.population_size; ++i)
        population.push_back(random_layout(pool, W.n, rng));
    return population;
}

RunTrace evolve(const WeightMatrix& W, const PositionPool& pool,
                const GAParams& params) {
    check_params(W, pool, params);
    std::vector<Layout> population = initial_population(W, pool, params);
    Rng rng(derive_seed(params.seed, 0x65766f6c));  // "evol" stream
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> fits(population.size());
    auto evaluate_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i)
            fits[i] = fitness(population[i], W);
    };
    evaluate_all();

    RunTrace trace;
    auto record = [&] {
        std::size_t best = 0;
        for (std::size_t i = 1; i < fits.size(); ++i)
            if (fits[i] > fits[best]) best = i;
        if (trace.best_fitness_per_generation.empty() ||
            fits[best] > trace.best_fitness) {
            trace.best_fitness = fits[best];
            trace.best_layout = population[best];
        }
        trace.best_fitness_per_generation.push_back(fits[best]);
    };
    record();

    std::vector<std::size_t> order(population.size());
    for (int gen = 0; gen < params.generations; ++gen) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fits[a] > fits[b];
        });

        std::vector<Layout> next;
        next.reserve(population.size());
        for (int e = 0; e < params.elite_count; ++e)
            next.push_back(population[order[e]]);
        while (next.size() < population.size()) {
            const Layout& pa = select(population, fits, params.tournament_size, rng);
            const Layout& pb = select(population, fits, params.tournament_size, rng);
            Layout ca = pa;
            Layout cb = pb;
            if (unit(rng) < params.crossover_chance)
                std::tie(ca, cb) = crossover(pa, pb, pool, rng);
            next.push_back(mutate(ca, pool, params.mutation_chance, rng));
            if (next.size() < population.size())
                next.push_back(mutate(cb, pool, params.mutation_chance, rng));
        }
        population = std::move(next);
        evaluate_all();
        record();
    }
    return trace;
}

RunTrace random_baseline(const WeightMatrix& W, const PositionPool& pool,
                         const Layout& initial, int generations, Rng& rng) {
    if (!layout_valid(initial, pool, W.n))
        throw std::invalid_argument("random_baseline: invalid initial layout");
    Layout current = initial;
    RunTrace trace;
    trace.best_fitness = fitness(current, W);
    trace.best_layout = current;
    trace.best_fitness_per_generation.push_back(trace.best_fitness);

    std::size_t n = current.genes.size();
    for (int gen = 0; gen < generations; ++gen) {
        if (n >= 3) {
            std::uniform_int_distribution<std::size_t> gene(1, n - 1);
            std::size_t i = gene(rng);
            std::size_t j = gene(rng);
            while (j == i) j = gene(rng);
            std::swap(current.genes[i], current.genes[j]);
        }
        double f = fitness(current, W);
        if (f > trace.best_fitness) {
            trace.best_fitness = f;
            trace.best_layout = current;
        }
        trace.best_fitness_per_generation.push_back(trace.best_fitness);
    }
    return trace;
}

}  // namespace footfall
