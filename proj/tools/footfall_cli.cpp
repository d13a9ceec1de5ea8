#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "footfall/experiments.hpp"
#include "footfall/io.hpp"
#include "footfall/layout_ga.hpp"
#include "footfall/parallel.hpp"
#include "footfall/patterns.hpp"
#include "footfall/recommender.hpp"
#include "footfall/transition.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace footfall;

namespace {

std::vector<ActivityId> parse_id_list(const std::string& text) {
    std::vector<ActivityId> ids;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field.empty()) continue;
        ids.push_back(std::stoi(field));
    }
    return ids;
}

GAParams ga_params_from_json(const json& j) {
    GAParams p;
    p.population_size = j.value("population_size", p.population_size);
    p.generations = j.value("generations", p.generations);
    p.crossover_chance = j.value("crossover_chance", p.crossover_chance);
    p.mutation_chance = j.value("mutation_chance", p.mutation_chance);
    p.elite_count = j.value("elite_count", p.elite_count);
    p.tournament_size = j.value("tournament_size", p.tournament_size);
    p.seed = j.value("seed", p.seed);
    return p;
}

json load_config(const std::string& path) {
    json j = json::parse(read_text(path));
    if (!j.is_object()) throw std::runtime_error(path + ": config must be a JSON object");
    return j;
}

void write_json(const json& j, const std::string& path) {
    atomic_write_text(path, j.dump(2) + "\n");
}

struct GlobalOpts {
    int threads = 0;  // 0 = auto
    bool no_timestamp = false;

    int resolved_threads() const {
        return threads >= 1 ? threads : default_threads();
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"footfall: visitor-flow modeling, next-activity "
                 "recommendation and grid-layout optimization"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--threads", global.threads,
                   "Worker threads (default: FOOTFALL_THREADS or hardware)");
    app.add_flag("--no-timestamp", global.no_timestamp,
                 "Omit the generated_at field from output files");

    int exit_code = 0;
    auto guard = [&](auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            exit_code = 1;
        }
    };

    // generate
    {
        auto* cmd = app.add_subcommand("generate", "Synthesize a visitor-pattern corpus");
        auto opts = std::make_shared<CorpusConfig>();
        auto out = std::make_shared<std::string>();
        auto out_degree = std::make_shared<int>(3);
        auto skew = std::make_shared<double>(1.0);
        cmd->add_option("--activities", opts->n_activities, "Number of activities")->required();
        cmd->add_option("--visitors", opts->n_visitors, "Number of visitor patterns")->required();
        cmd->add_option("--noise", opts->noise_factor, "Noise factor in [0,1]");
        cmd->add_option("--walk-min", opts->walk_length_min, "Minimum walk length");
        cmd->add_option("--walk-max", opts->walk_length_max, "Maximum walk length");
        cmd->add_option("--seed", opts->seed, "RNG seed");
        cmd->add_option("--out-degree", *out_degree, "Out-edges per activity in the ground truth");
        cmd->add_option("--skew", *skew, "Ground-truth edge-weight skew exponent");
        cmd->add_option("--out", *out, "Output corpus JSON")->required();
        cmd->callback([&, opts, out, out_degree, skew] {
            guard([&] {
                GroundTruthGraph graph = generate_ground_truth(
                    opts->n_activities, opts->seed, *out_degree, *skew);
                PatternCorpus corpus =
                    generate_corpus(graph, *opts, global.resolved_threads());
                save_corpus(corpus, *out, !global.no_timestamp);
            });
        });
    }

    // train
    {
        auto* cmd = app.add_subcommand("train", "Train the transition model from a corpus");
        auto corpus_path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--corpus", *corpus_path, "Corpus JSON")->required();
        cmd->add_option("--out", *out, "Output model JSON")->required();
        cmd->callback([&, corpus_path, out] {
            guard([&] {
                TransitionModel model = train(load_corpus(*corpus_path));
                save_model(model, *out, !global.no_timestamp);
            });
        });
    }

    // optimize
    {
        auto* cmd = app.add_subcommand("optimize", "Optimize activity placement with the GA");
        auto model_path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto trace_path = std::make_shared<std::string>();
        auto params = std::make_shared<GAParams>();
        cmd->add_option("--model", *model_path, "Model JSON")->required();
        cmd->add_option("--pop", params->population_size, "Population size");
        cmd->add_option("--gens", params->generations, "Generations");
        cmd->add_option("--crossover", params->crossover_chance, "Crossover chance [0,1]");
        cmd->add_option("--mutation", params->mutation_chance, "Mutation chance [0,0.5]");
        cmd->add_option("--elite", params->elite_count, "Elite count");
        cmd->add_option("--tournament", params->tournament_size, "Tournament size");
        cmd->add_option("--seed", params->seed, "RNG seed");
        cmd->add_option("--out", *out, "Output layout JSON")->required();
        cmd->add_option("--trace", *trace_path, "Output trace CSV");
        cmd->callback([&, model_path, out, trace_path, params] {
            guard([&] {
                TransitionModel model = load_model(*model_path);
                PositionPool pool = make_grid_pool(model.W.n);
                RunTrace trace = evolve(model.W, pool, *params);
                save_layout(trace.best_layout, pool.grid_side,
                            trace.best_fitness, *out, !global.no_timestamp);
                if (!trace_path->empty()) save_trace(trace, *trace_path);
            });
        });
    }

    // recommend
    {
        auto* cmd = app.add_subcommand("recommend", "Recommend the next activities");
        auto model_path = std::make_shared<std::string>();
        auto history_text = std::make_shared<std::string>();
        auto cut = std::make_shared<int>(1);
        auto window = std::make_shared<int>(3);
        auto unweighted = std::make_shared<bool>(false);
        cmd->add_option("--model", *model_path, "Model JSON")->required();
        cmd->add_option("--history", *history_text,
                        "Comma-separated visited activity ids, oldest first");
        cmd->add_option("--cut", *cut, "Number of activities to recommend");
        cmd->add_option("--window", *window, "History window per step");
        cmd->add_flag("--unweighted", *unweighted, "Disable recency weighting");
        cmd->callback([&, model_path, history_text, cut, window, unweighted] {
            guard([&] {
                if (*cut < 1) throw std::runtime_error("--cut must be >= 1");
                if (*window < 0) throw std::runtime_error("--window must be >= 0");
                TransitionModel model = load_model(*model_path);
                std::vector<ActivityId> history = parse_id_list(*history_text);
                std::vector<ActivityId> extended = history;
                json scores = json::array();
                json recs = json::array();
                for (int s = 0; s < *cut; ++s) {
                    std::size_t w = std::min<std::size_t>(*window, extended.size());
                    std::span<const ActivityId> view(
                        extended.data() + extended.size() - w, w);
                    std::vector<double> sv =
                        score(model.P, model.priors, view, !*unweighted);
                    ActivityId rec =
                        recommend(model.P, model.priors, view, !*unweighted);
                    recs.push_back(rec);
                    scores.push_back(sv[rec]);
                    extended.push_back(rec);
                }
                json out = {{"recommendations", recs}, {"scores", scores}};
                std::cout << out.dump() << "\n";
            });
        });
    }

    // evaluate
    {
        auto* cmd = app.add_subcommand("evaluate", "Compare an original tail against recommendations");
        auto original_text = std::make_shared<std::string>();
        auto recommended_text = std::make_shared<std::string>();
        auto one_based = std::make_shared<bool>(false);
        cmd->add_option("--original", *original_text, "Comma-separated original activity ids")->required();
        cmd->add_option("--recommended", *recommended_text, "Comma-separated recommended activity ids")->required();
        cmd->add_flag("--one-based", *one_based, "Interpret ids as 1-based activity numbers");
        cmd->callback([&, original_text, recommended_text, one_based] {
            guard([&] {
                std::vector<ActivityId> a = parse_id_list(*original_text);
                std::vector<ActivityId> b = parse_id_list(*recommended_text);
                if (*one_based) {
                    for (ActivityId& x : a) --x;
                    for (ActivityId& x : b) --x;
                }
                json out = {{"evaluation", evaluate(a, b)},
                            {"evaluation_bounded", evaluate_bounded(a, b)},
                            {"exact_match_rate", exact_match_rate(a, b)}};
                std::cout << out.dump() << "\n";
            });
        });
    }

    // sweep-ga
    {
        auto* cmd = app.add_subcommand("sweep-ga", "GA crossover/mutation parameter sweep");
        auto config_path = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>(".");
        cmd->add_option("--config", *config_path, "Sweep config JSON")->required();
        cmd->add_option("--out-dir", *out_dir, "Output directory");
        cmd->callback([&, config_path, out_dir] {
            guard([&] {
                json cfg = load_config(*config_path);
                TransitionModel model = train(load_corpus(cfg.at("corpus").get<std::string>()));
                PositionPool pool = make_grid_pool(model.W.n);
                SweepSpec spec;
                spec.crossover_values = cfg.at("crossover_values").get<std::vector<double>>();
                spec.mutation_values = cfg.at("mutation_values").get<std::vector<double>>();
                spec.repeats = cfg.value("repeats", 1);
                spec.base = ga_params_from_json(cfg.value("ga", json::object()));
                spec.master_seed = cfg.value("seed", std::uint64_t{0});
                ExperimentGrid grid =
                    run_ga_sweep(model.W, pool, spec, global.resolved_threads());

                fs::create_directories(*out_dir);
                export_grid(grid, (fs::path(*out_dir) / "ga_sweep_mean.csv").string());
                ExperimentGrid sd = grid;
                sd.cells = grid.stddev;
                export_grid(sd, (fs::path(*out_dir) / "ga_sweep_stddev.csv").string());

                std::size_t br = 0, bc = 0;
                for (std::size_t r = 0; r < grid.cells.size(); ++r)
                    for (std::size_t c = 0; c < grid.cells[r].size(); ++c)
                        if (grid.cells[r][c] > grid.cells[br][bc]) { br = r; bc = c; }
                json summary = {
                    {"best_crossover", grid.row_labels[br]},
                    {"best_mutation", grid.col_labels[bc]},
                    {"best_mean_fitness", grid.cells[br][bc]},
                    {"means", grid.cells},
                    {"stddevs", grid.stddev}};
                write_json(summary, (fs::path(*out_dir) / "ga_sweep_summary.json").string());
            });
        });
    }

    // compare-random
    {
        auto* cmd = app.add_subcommand("compare-random", "GA vs random-swap baseline");
        auto config_path = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>(".");
        cmd->add_option("--config", *config_path, "Comparison config JSON")->required();
        cmd->add_option("--out-dir", *out_dir, "Output directory");
        cmd->callback([&, config_path, out_dir] {
            guard([&] {
                json cfg = load_config(*config_path);
                TransitionModel model = train(load_corpus(cfg.at("corpus").get<std::string>()));
                PositionPool pool = make_grid_pool(model.W.n);
                GAParams params = ga_params_from_json(cfg.value("ga", json::object()));
                params.seed = cfg.value("seed", params.seed);
                int repeats = cfg.value("repeats", 1);
                auto pairs = run_ga_vs_random(model.W, pool, params, repeats,
                                              global.resolved_threads());

                fs::create_directories(*out_dir);
                int ga_wins = 0;
                json finals = json::array();
                for (int r = 0; r < repeats; ++r) {
                    const auto& [ga, random] = pairs[r];
                    save_trace(ga, (fs::path(*out_dir) /
                                    ("ga_trace_" + std::to_string(r) + ".csv")).string());
                    save_trace(random, (fs::path(*out_dir) /
                                        ("random_trace_" + std::to_string(r) + ".csv")).string());
                    if (ga.best_fitness > random.best_fitness) ++ga_wins;
                    finals.push_back({{"ga", ga.best_fitness},
                                      {"random", random.best_fitness}});
                }
                json summary = {{"repeats", repeats},
                                {"ga_wins", ga_wins},
                                {"finals", finals}};
                write_json(summary, (fs::path(*out_dir) / "compare_summary.json").string());
            });
        });
    }

    // sweep-recommend
    {
        auto* cmd = app.add_subcommand("sweep-recommend", "Recommendation cut/window sweep");
        auto config_path = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>(".");
        cmd->add_option("--config", *config_path, "Sweep config JSON")->required();
        cmd->add_option("--out-dir", *out_dir, "Output directory");
        cmd->callback([&, config_path, out_dir] {
            guard([&] {
                json cfg = load_config(*config_path);
                PatternCorpus corpus = load_corpus(cfg.at("corpus").get<std::string>());
                TransitionModel model = train(corpus);
                std::vector<int> cuts = cfg.at("cut_values").get<std::vector<int>>();
                std::vector<int> windows = cfg.at("window_values").get<std::vector<int>>();
                RecommendationGrids grids = run_recommendation_grid(
                    corpus, model.P, model.priors, cuts, windows,
                    global.resolved_threads());

                fs::create_directories(*out_dir);
                export_grid(grids.bounded, (fs::path(*out_dir) / "recommend_bounded.csv").string());
                export_grid(grids.as_printed, (fs::path(*out_dir) / "recommend_as_printed.csv").string());
                export_grid(grids.exact_match, (fs::path(*out_dir) / "recommend_exact.csv").string());
                ExperimentGrid sd = grids.bounded;
                sd.cells = grids.bounded.stddev;
                export_grid(sd, (fs::path(*out_dir) / "recommend_bounded_stddev.csv").string());

                json summary = {{"cut_values", cuts},
                                {"window_values", windows},
                                {"bounded_means", grids.bounded.cells},
                                {"as_printed_means", grids.as_printed.cells},
                                {"exact_match_means", grids.exact_match.cells},
                                {"skipped_patterns", grids.skipped_patterns}};
                write_json(summary, (fs::path(*out_dir) / "recommend_summary.json").string());
            });
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return exit_code;
}
