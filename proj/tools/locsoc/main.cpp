// locsoc: location sociality toolkit.
//
// One binary with the pipeline subcommands:
//   solve       fixed-point sociality/influence scores
//   metrics     entropy, category, regression, histogram and heatmap exports
//   friendship  common-location features and link-prediction evaluation
//   recommend   random-walk-with-restart evaluation over temporal windows
//   synth       planted-model synthetic dataset generator

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp> // vendored nlohmann/json

#include "locsoc/csv.hpp"
#include "locsoc/exports.hpp"
#include "locsoc/friendship.hpp"
#include "locsoc/ingest.hpp"
#include "locsoc/metrics.hpp"
#include "locsoc/recommend.hpp"
#include "locsoc/solver.hpp"
#include "locsoc/synthetic.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace locsoc;

namespace {

constexpr const char* kVersion = "0.1.0";

class MissingInputError : public InputError {
public:
    explicit MissingInputError(const std::string& path)
        : InputError("input file not found: " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + path.string());
    out << text;
}

// All pipeline options; each subcommand reads the slice it needs.
struct Options {
    std::string checkins_path;
    std::string follows_path;
    std::string locations_path;
    std::string out_dir = "out";

    double alpha = 0.5;
    double tolerance = 1e-5;
    double restart_prob = 0.15;
    std::uint64_t seed = 0;
    std::uint32_t bins = 20;
    double cell_size = 0.01;
    std::string mode = "sociality";
    std::vector<std::string> weightings;
    std::uint32_t min_user_checkins = 20;
    std::uint32_t min_location_checkins = 10;
    double trim_fraction = 0.05;

    bool user_set_min_user = false;
    bool user_set_min_location = false;
    bool user_set_trim = false;

    // synth-only
    std::uint32_t synth_users = 100;
    std::uint32_t synth_venues = 50;
    std::uint32_t synth_hubs = 10;
    std::uint32_t synth_social_venues = 5;
    double synth_multiplier = 8.0;
    std::uint32_t synth_visits = 30;
    double synth_adoption = 0.0;
    std::uint32_t synth_span_days = 60;
};

struct LoadedInputs {
    ParseResult<CheckIn> checkins;
    ParseResult<FollowEdge> follows;
    ParseResult<LocationMeta> locations;
    ordered_json input_manifest = ordered_json::object();
};

void load_one(const std::string& path, const char* name, LoadedInputs& loaded,
              const std::function<void(std::istream&)>& parse) {
    const std::string bytes = read_file(path);
    std::istringstream in(bytes);
    parse(in);
    loaded.input_manifest[name] = {{"path", path}, {"fnv1a64", hex64(fnv1a64(bytes))}};
}

LoadedInputs load_inputs(const Options& opts, bool need_locations) {
    LoadedInputs loaded;
    if (opts.checkins_path.empty()) throw InputError("--checkins is required");
    if (opts.follows_path.empty()) throw InputError("--follows is required");
    load_one(opts.checkins_path, "checkins", loaded,
             [&](std::istream& in) { loaded.checkins = parse_checkins(in); });
    load_one(opts.follows_path, "follows", loaded,
             [&](std::istream& in) { loaded.follows = parse_follows(in); });
    if (need_locations) {
        if (opts.locations_path.empty()) throw InputError("--locations is required");
        load_one(opts.locations_path, "locations", loaded,
                 [&](std::istream& in) { loaded.locations = parse_locations(in); });
    }
    for (const std::string& diag : loaded.checkins.diagnostics) {
        std::cerr << "checkins: " << diag << '\n';
    }
    for (const std::string& diag : loaded.follows.diagnostics) {
        std::cerr << "follows: " << diag << '\n';
    }
    for (const std::string& diag : loaded.locations.diagnostics) {
        std::cerr << "locations: " << diag << '\n';
    }
    return loaded;
}

FilterConfig filter_config(const Options& opts) {
    return {opts.min_user_checkins, opts.min_location_checkins, opts.trim_fraction};
}

ordered_json config_echo(const Options& opts, const char* command) {
    ordered_json j;
    j["command"] = command;
    j["checkins"] = opts.checkins_path;
    j["follows"] = opts.follows_path;
    j["locations"] = opts.locations_path;
    j["out"] = opts.out_dir;
    j["alpha"] = opts.alpha;
    j["tolerance"] = opts.tolerance;
    j["restart_prob"] = opts.restart_prob;
    j["seed"] = opts.seed;
    j["bins"] = opts.bins;
    j["cell_size"] = opts.cell_size;
    j["mode"] = opts.mode;
    j["weightings"] = opts.weightings;
    j["min_user_checkins"] = opts.min_user_checkins;
    j["min_location_checkins"] = opts.min_location_checkins;
    j["trim_fraction"] = opts.trim_fraction;
    return j;
}

struct ManifestWriter {
    ordered_json manifest = ordered_json::object();
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    ManifestWriter(const Options& opts, const char* command) {
        manifest["command"] = command;
        manifest["version"] = kVersion;
        manifest["timestamp_utc"] = utc_now();
        manifest["config"] = config_echo(opts, command);
        manifest["config_fnv1a64"] = hex64(fnv1a64(manifest["config"].dump()));
    }

    void finish(const fs::path& out_dir) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        manifest["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        std::ostringstream text;
        text << manifest.dump(2) << '\n';
        write_text(out_dir / "run.json", text.str());
    }
};

SolverConfig solver_config(const Options& opts) {
    SolverConfig config;
    config.alpha = opts.alpha;
    config.tolerance = opts.tolerance;
    return config;
}

int cmd_solve(const Options& opts) {
    ManifestWriter manifest(opts, "solve");
    auto loaded = load_inputs(opts, false);
    fs::create_directories(opts.out_dir);

    auto nets = build_networks(loaded.checkins.records, loaded.follows.records,
                               filter_config(opts));
    const auto ops = normalize(nets.social, nets.user_location, ZeroColumnPolicy::Uniform);
    const SolveResult result = solve(ops, solver_config(opts));

    std::ostringstream sociality, influence;
    write_sociality_csv(sociality, nets.user_location.locations, result.sociality.values);
    write_influence_csv(influence, nets.user_location.users, result.influence.values);
    write_text(fs::path(opts.out_dir) / "sociality.csv", sociality.str());
    write_text(fs::path(opts.out_dir) / "influence.csv", influence.str());

    manifest.manifest["inputs"] = loaded.input_manifest;
    manifest.manifest["parse"] = {{"checkins_skipped", loaded.checkins.skipped},
                                  {"follows_skipped", loaded.follows.skipped}};
    manifest.manifest["network"] = {{"users", nets.social.user_count()},
                                    {"locations", nets.user_location.location_count()},
                                    {"edges", nets.social.edge_count()}};
    manifest.manifest["solver"] = {
        {"iterations", result.sociality.iterations_used},
        {"converged", result.sociality.converged},
        {"final_kappa_max_diff", result.trace.kappa_max_diff.empty()
                                     ? 0.0
                                     : result.trace.kappa_max_diff.back()},
        {"mass_conserving_policy", result.trace.mass_conserving_policy}};
    manifest.finish(opts.out_dir);
    return 0;
}

std::vector<double> sociality_for(const Options& opts, const Networks& nets,
                                  ordered_json& diagnostics) {
    const fs::path cached = fs::path(opts.out_dir) / "sociality.csv";
    if (fs::exists(cached)) {
        const std::string bytes = read_file(cached.string());
        std::istringstream in(bytes);
        csv::Reader reader(in);
        std::vector<std::string> row;
        if (!reader.next(row) || row.size() != 2 || row[0] != "location_id") {
            throw InputError("malformed sociality.csv header in " + cached.string());
        }
        std::map<std::string, double> by_id;
        while (reader.next(row)) {
            if (row.size() != 2) {
                throw InputError("malformed sociality.csv row in " + cached.string());
            }
            by_id[row[0]] = std::stod(row[1]);
        }
        std::vector<double> scores;
        scores.reserve(nets.user_location.location_count());
        for (const std::string& loc : nets.user_location.locations) {
            auto it = by_id.find(loc);
            if (it == by_id.end()) {
                throw InputError("sociality.csv is missing location '" + loc +
                                 "'; delete it to recompute");
            }
            scores.push_back(it->second);
        }
        diagnostics["sociality_source"] = "file";
        return scores;
    }
    const auto ops = normalize(nets.social, nets.user_location, ZeroColumnPolicy::Uniform);
    const SolveResult result = solve(ops, solver_config(opts));
    diagnostics["sociality_source"] = "computed";
    diagnostics["solver"] = {{"iterations", result.sociality.iterations_used},
                             {"converged", result.sociality.converged}};
    return result.sociality.values;
}

int cmd_metrics(const Options& opts) {
    ManifestWriter manifest(opts, "metrics");
    auto loaded = load_inputs(opts, true);
    fs::create_directories(opts.out_dir);

    auto nets = build_networks(loaded.checkins.records, loaded.follows.records,
                               filter_config(opts));
    const auto& ul = nets.user_location;
    ordered_json diagnostics;
    const std::vector<double> scores = sociality_for(opts, nets, diagnostics);

    const std::vector<double> entropy = location_entropy(ul);
    std::ostringstream entropy_csv;
    write_entropy_csv(entropy_csv, ul.locations, entropy);
    write_text(fs::path(opts.out_dir) / "entropy.csv", entropy_csv.str());

    auto categories = category_summary(scores, ul.locations, loaded.locations.records);
    std::ostringstream categories_csv;
    write_categories_csv(categories_csv, categories);
    write_text(fs::path(opts.out_dir) / "categories.csv", categories_csv.str());

    std::ostringstream regression_json;
    try {
        const RegressionResult regression =
            rating_regression(scores, ul.locations, loaded.locations.records);
        write_regression_json(regression_json, &regression);
        diagnostics["regression"] = "ok";
    } catch (const InputError& e) {
        write_regression_json(regression_json, nullptr, e.what());
        diagnostics["regression"] = e.what();
    }
    write_text(fs::path(opts.out_dir) / "regression.json", regression_json.str());

    auto bins = histogram(scores, opts.bins, true, ul.locations);
    std::ostringstream histogram_csv;
    write_histogram_csv(histogram_csv, bins);
    write_text(fs::path(opts.out_dir) / "histogram.csv", histogram_csv.str());

    auto grid = grid_heatmap(scores, ul.locations, loaded.locations.records, opts.cell_size);
    std::ostringstream heatmap;
    write_heatmap_geojson(heatmap, grid);
    write_text(fs::path(opts.out_dir) / "heatmap.geojson", heatmap.str());

    manifest.manifest["inputs"] = loaded.input_manifest;
    diagnostics["heatmap_located"] = grid.located_count;
    manifest.manifest["diagnostics"] = diagnostics;
    manifest.finish(opts.out_dir);
    return 0;
}

FeatureMode parse_mode(const std::string& mode) {
    if (mode == "sociality") return FeatureMode::Sociality;
    if (mode == "entropy") return FeatureMode::Entropy;
    if (mode == "combined") return FeatureMode::Combined;
    throw InputError("unknown --mode '" + mode + "' (sociality, entropy, combined)");
}

int cmd_friendship(const Options& opts) {
    ManifestWriter manifest(opts, "friendship");
    auto loaded = load_inputs(opts, false);
    fs::create_directories(opts.out_dir);

    auto nets = build_networks(loaded.checkins.records, loaded.follows.records,
                               filter_config(opts));
    const auto ops = normalize(nets.social, nets.user_location, ZeroColumnPolicy::Uniform);
    const SolveResult solved = solve(ops, solver_config(opts));
    const std::vector<double> entropy = location_entropy(nets.user_location);

    const auto pairs = build_pairs(nets.social, nets.user_location, opts.seed);

    std::ostringstream features;
    write_features_csv(features, nets.user_location, pairs, solved.sociality.values,
                       entropy);
    write_text(fs::path(opts.out_dir) / "features.csv", features.str());

    EvalConfig config;
    config.mode = parse_mode(opts.mode);
    config.seed = opts.seed;
    const EvalReport report =
        evaluate(pairs, solved.sociality.values, entropy, config);
    const double baseline_auc = baseline_common_count(pairs).auc;

    std::ostringstream eval_json;
    write_eval_json(eval_json, report, baseline_auc, opts.seed);
    write_text(fs::path(opts.out_dir) / "eval.json", eval_json.str());

    manifest.manifest["inputs"] = loaded.input_manifest;
    manifest.manifest["diagnostics"] = {
        {"pairs", pairs.size()},
        {"positives", pairs.size() / 2},
        {"mean_auc", report.mean_auc},
        {"baseline_common_count_auc", baseline_auc},
        {"solver_iterations", solved.sociality.iterations_used}};
    manifest.finish(opts.out_dir);
    return 0;
}

int cmd_recommend(const Options& opts) {
    ManifestWriter manifest(opts, "recommend");
    auto loaded = load_inputs(opts, false);
    fs::create_directories(opts.out_dir);

    RecEvalConfig config;
    // 30-day slices are sparse; the window thresholds default lower than the
    // corpus-level ones and the celebrity trim is off unless asked for.
    config.window_filter.min_user_checkins =
        opts.user_set_min_user ? opts.min_user_checkins : 5;
    config.window_filter.min_location_checkins =
        opts.user_set_min_location ? opts.min_location_checkins : 3;
    config.window_filter.follower_trim_fraction =
        opts.user_set_trim ? opts.trim_fraction : 0.0;
    config.solver = solver_config(opts);
    config.rwr.restart_probability = opts.restart_prob;
    config.weightings.clear();
    for (const std::string& name : opts.weightings) {
        if (name == "plain") config.weightings.push_back(RwrWeighting::Plain);
        else if (name == "sociality") config.weightings.push_back(RwrWeighting::Sociality);
        else throw InputError("unknown --weighting '" + name + "' (plain, sociality)");
    }
    if (config.weightings.empty()) {
        config.weightings = {RwrWeighting::Plain, RwrWeighting::Sociality};
    }
    config.collect_recommendations = true;
    config.export_weighting = config.weightings.back();

    const RecReport report =
        evaluate_windows(loaded.checkins.records, loaded.follows.records, config);

    std::ostringstream recommendations;
    write_recommendations_csv(recommendations, report.recommendations);
    write_text(fs::path(opts.out_dir) / "recommendations.csv", recommendations.str());

    std::ostringstream rec_eval;
    write_rec_eval_json(rec_eval, report, config);
    write_text(fs::path(opts.out_dir) / "rec_eval.json", rec_eval.str());

    std::size_t evaluated = 0;
    for (const WindowReport& w : report.windows) evaluated += w.evaluable_users;
    manifest.manifest["inputs"] = loaded.input_manifest;
    manifest.manifest["diagnostics"] = {
        {"windows", report.windows.size()},
        {"evaluable_users_total", evaluated},
        {"recommendations_weighting", weighting_name(config.export_weighting)}};
    manifest.finish(opts.out_dir);
    return 0;
}

int cmd_synth(const Options& opts) {
    ManifestWriter manifest(opts, "synth");
    fs::create_directories(opts.out_dir);

    SyntheticSpec spec;
    spec.num_users = opts.synth_users;
    spec.num_locations = opts.synth_venues;
    spec.num_hub_users = opts.synth_hubs;
    spec.num_social_venues = opts.synth_social_venues;
    spec.hub_social_multiplier = opts.synth_multiplier;
    spec.visits_per_user = opts.synth_visits;
    spec.hub_adoption_fraction = opts.synth_adoption;
    spec.span_days = opts.synth_span_days;

    const SyntheticData data = generate_synthetic(spec, opts.seed);
    std::ostringstream checkins, follows, locations;
    write_checkins_csv(checkins, data.checkins);
    write_follows_csv(follows, data.follows);
    write_locations_csv(locations, data.locations);
    write_text(fs::path(opts.out_dir) / "checkins.csv", checkins.str());
    write_text(fs::path(opts.out_dir) / "follows.csv", follows.str());
    write_text(fs::path(opts.out_dir) / "locations.csv", locations.str());

    manifest.manifest["diagnostics"] = {{"checkins", data.checkins.size()},
                                        {"follows", data.follows.size()},
                                        {"locations", data.locations.size()}};
    manifest.finish(opts.out_dir);
    return 0;
}

void print_error_json(int exit_code, const char* type, const std::string& message,
                      const std::string& path = {}) {
    ordered_json j;
    j["error"] = {{"exit_code", exit_code}, {"type", type}, {"message", message}};
    if (!path.empty()) j["error"]["path"] = path;
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"locsoc: quantify location sociality from check-ins and friendships"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value config file; flags take precedence");
    app.require_subcommand(1);

    Options opts;
    app.add_option("--checkins", opts.checkins_path, "check-ins CSV");
    app.add_option("--follows", opts.follows_path, "follow-edges CSV");
    app.add_option("--locations", opts.locations_path, "location metadata CSV");
    app.add_option("--out", opts.out_dir, "output directory");
    app.add_option("--alpha", opts.alpha, "social-network weight of the influence update");
    app.add_option("--tolerance", opts.tolerance, "solver convergence tolerance");
    app.add_option("--restart-prob", opts.restart_prob, "walk restart probability");
    app.add_option("--seed", opts.seed, "seed for every random choice");
    app.add_option("--bins", opts.bins, "histogram bin count");
    app.add_option("--cell-size", opts.cell_size, "heatmap cell size in degrees");
    app.add_option("--mode", opts.mode, "feature mode: sociality, entropy, combined");
    app.add_option("--weighting", opts.weightings,
                   "walk weighting (repeatable): plain, sociality");
    auto* min_user = app.add_option("--min-user-checkins", opts.min_user_checkins,
                                    "active-user check-in threshold");
    auto* min_location = app.add_option("--min-location-checkins", opts.min_location_checkins,
                                        "location check-in threshold");
    auto* trim = app.add_option("--trim-fraction", opts.trim_fraction,
                                "fraction of most-followed users to remove");

    auto* solve_cmd = app.add_subcommand("solve", "compute sociality and influence scores");
    auto* metrics_cmd = app.add_subcommand("metrics", "descriptive analytics exports");
    auto* friendship_cmd =
        app.add_subcommand("friendship", "friendship prediction case study");
    auto* recommend_cmd =
        app.add_subcommand("recommend", "new-location recommendation case study");
    auto* synth_cmd = app.add_subcommand("synth", "generate a planted synthetic city");
    synth_cmd->add_option("--users", opts.synth_users, "user count");
    synth_cmd->add_option("--venues", opts.synth_venues, "location count");
    synth_cmd->add_option("--hubs", opts.synth_hubs, "hub-user count");
    synth_cmd->add_option("--social-venues", opts.synth_social_venues, "social venue count");
    synth_cmd->add_option("--multiplier", opts.synth_multiplier,
                          "hub visit-rate multiplier toward social venues");
    synth_cmd->add_option("--visits", opts.synth_visits, "visits per user");
    synth_cmd->add_option("--adoption", opts.synth_adoption,
                          "fraction of social venues hubs adopt late");
    synth_cmd->add_option("--span-days", opts.synth_span_days, "time span in days");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error_json(2, "usage", e.what());
        return 2;
    }

    opts.user_set_min_user = min_user->count() > 0;
    opts.user_set_min_location = min_location->count() > 0;
    opts.user_set_trim = trim->count() > 0;

    try {
        if (solve_cmd->parsed()) return cmd_solve(opts);
        if (metrics_cmd->parsed()) return cmd_metrics(opts);
        if (friendship_cmd->parsed()) return cmd_friendship(opts);
        if (recommend_cmd->parsed()) return cmd_recommend(opts);
        if (synth_cmd->parsed()) return cmd_synth(opts);
        print_error_json(2, "usage", "no subcommand given");
        return 2;
    } catch (const MissingInputError& e) {
        print_error_json(2, "input", e.what(), e.path());
        return 2;
    } catch (const InputError& e) {
        print_error_json(2, "input", e.what());
        return 2;
    } catch (const NumericError& e) {
        print_error_json(1, "numeric", e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error_json(1, "internal", e.what());
        return 1;
    }
}
