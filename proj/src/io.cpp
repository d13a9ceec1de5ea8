#include "footfall/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace footfall {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%FT%TZ", &tm);
    return buf;
}

json parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void check_version(const json& j, const std::string& path) {
    if (!j.contains("format_version") || j["format_version"] != kFormatVersion)
        throw std::runtime_error(path + ": unsupported or missing format_version");
}

}  // namespace

void atomic_write_text(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw std::runtime_error("rename failed for " + path + ": " + ec.message());
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_corpus(const PatternCorpus& corpus, const std::string& path,
                 bool timestamp) {
    json j;
    j["format_version"] = kFormatVersion;
    j["config"] = {{"n_activities", corpus.config.n_activities},
                   {"n_visitors", corpus.config.n_visitors},
                   {"walk_length_min", corpus.config.walk_length_min},
                   {"walk_length_max", corpus.config.walk_length_max},
                   {"noise_factor", corpus.config.noise_factor},
                   {"seed", corpus.config.seed}};
    j["patterns"] = corpus.patterns;
    if (timestamp) j["generated_at"] = iso8601_now();
    atomic_write_text(path, j.dump(2) + "\n");
}

PatternCorpus load_corpus(const std::string& path) {
    json j = parse_file(path);
    check_version(j, path);
    PatternCorpus corpus;
    const json& cfg = j.at("config");
    corpus.config.n_activities = cfg.at("n_activities").get<int>();
    corpus.config.n_visitors = cfg.at("n_visitors").get<int>();
    corpus.config.walk_length_min = cfg.at("walk_length_min").get<int>();
    corpus.config.walk_length_max = cfg.at("walk_length_max").get<int>();
    corpus.config.noise_factor = cfg.at("noise_factor").get<double>();
    corpus.config.seed = cfg.at("seed").get<std::uint64_t>();
    corpus.patterns = j.at("patterns").get<std::vector<VisitorPattern>>();
    for (const auto& pattern : corpus.patterns) {
        if (pattern.empty())
            throw std::runtime_error(path + ": empty visitor pattern");
        for (ActivityId a : pattern)
            if (a < 0 || a >= corpus.config.n_activities)
                throw std::runtime_error(path + ": activity id out of range");
    }
    return corpus;
}

void save_model(const TransitionModel& model, const std::string& path,
                bool timestamp) {
    json j;
    j["format_version"] = kFormatVersion;
    j["n"] = model.W.n;
    j["W"] = model.W.counts;
    j["P"] = model.P.probs;
    j["priors"] = model.priors.priors;
    if (timestamp) j["generated_at"] = iso8601_now();
    atomic_write_text(path, j.dump(2) + "\n");
}

TransitionModel load_model(const std::string& path) {
    json j = parse_file(path);
    check_version(j, path);
    TransitionModel model;
    int n = j.at("n").get<int>();
    model.W.n = n;
    model.W.counts = j.at("W").get<std::vector<std::vector<std::int64_t>>>();
    model.P.n = n;
    model.P.probs = j.at("P").get<std::vector<std::vector<double>>>();
    model.priors.n = n;
    model.priors.priors = j.at("priors").get<std::vector<double>>();
    auto square = [&](const auto& m) {
        if (m.size() != static_cast<std::size_t>(n)) return false;
        for (const auto& row : m)
            if (row.size() != static_cast<std::size_t>(n)) return false;
        return true;
    };
    if (!square(model.W.counts) || !square(model.P.probs) ||
        model.priors.priors.size() != static_cast<std::size_t>(n))
        throw std::runtime_error(path + ": inconsistent model dimensions");
    return model;
}

void save_layout(const Layout& layout, int grid_side, double fitness_value,
                 const std::string& path, bool timestamp) {
    json j;
    j["format_version"] = kFormatVersion;
    j["grid_side"] = grid_side;
    j["fitness"] = fitness_value;
    json positions = json::array();
    for (const GridPos& g : layout.genes)
        positions.push_back({g.x, g.y});
    j["positions"] = positions;
    if (timestamp) j["generated_at"] = iso8601_now();
    atomic_write_text(path, j.dump(2) + "\n");
}

Layout load_layout(const std::string& path) {
    json j = parse_file(path);
    check_version(j, path);
    Layout layout;
    for (const auto& p : j.at("positions"))
        layout.genes.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    return layout;
}

void save_trace(const RunTrace& trace, const std::string& path) {
    std::ostringstream csv;
    csv << "generation,best_fitness\n";
    for (std::size_t g = 0; g < trace.best_fitness_per_generation.size(); ++g) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g",
                      trace.best_fitness_per_generation[g]);
        csv << g << ',' << buf << '\n';
    }
    atomic_write_text(path, csv.str());
}

}  // namespace footfall
