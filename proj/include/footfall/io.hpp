#pragma once

#include <string>

#include "footfall/layout_ga.hpp"
#include "footfall/patterns.hpp"
#include "footfall/transition.hpp"

namespace footfall {

/// Writes to a temporary file in the target directory and renames it over
/// `path`, so interrupted runs never leave truncated artifacts.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Corpus JSON: {"format_version":1,"config":{...},"patterns":[[int,...],...]}
/// with an optional "generated_at" field when `timestamp` is set.
void save_corpus(const PatternCorpus& corpus, const std::string& path,
                 bool timestamp = false);
PatternCorpus load_corpus(const std::string& path);

/// Model JSON: {"format_version":1,"n":int,"W":[[int,...]],"P":[[float,...]],
/// "priors":[float,...]}
void save_model(const TransitionModel& model, const std::string& path,
                bool timestamp = false);
TransitionModel load_model(const std::string& path);

/// Layout JSON: {"format_version":1,"grid_side":int,"fitness":float,
/// "positions":[[x,y],...]}
void save_layout(const Layout& layout, int grid_side, double fitness_value,
                 const std::string& path, bool timestamp = false);
Layout load_layout(const std::string& path);

/// trace CSV: header "generation,best_fitness", one row per generation.
void save_trace(const RunTrace& trace, const std::string& path);

}  // namespace footfall
