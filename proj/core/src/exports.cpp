#include "locsoc/exports.hpp"

#include <cstdio>

#include <json.hpp> // vendored nlohmann/json

#include "locsoc/csv.hpp"

namespace locsoc {

using ordered_json = nlohmann::ordered_json;

std::string format_score(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

namespace {

void write_score_table(std::ostream& out, const char* key_header, const char* value_header,
                       std::span<const std::string> keys, std::span<const double> values) {
    csv::write_row(out, std::vector<std::string>{key_header, value_header});
    for (std::size_t i = 0; i < keys.size(); ++i) {
        csv::write_row(out, std::vector<std::string>{keys[i], format_score(values[i])});
    }
}

} // namespace

void write_sociality_csv(std::ostream& out, std::span<const std::string> locations,
                         std::span<const double> scores) {
    write_score_table(out, "location_id", "sociality", locations, scores);
}

void write_influence_csv(std::ostream& out, std::span<const std::string> users,
                         std::span<const double> scores) {
    write_score_table(out, "user_id", "influence", users, scores);
}

void write_entropy_csv(std::ostream& out, std::span<const std::string> locations,
                       std::span<const double> entropy) {
    write_score_table(out, "location_id", "entropy", locations, entropy);
}

void write_categories_csv(std::ostream& out, std::span<const CategoryRow> rows) {
    csv::write_row(out, std::vector<std::string>{"category", "mean_sociality", "count"});
    for (const CategoryRow& row : rows) {
        csv::write_row(out, std::vector<std::string>{row.category,
                                                     format_score(row.mean_sociality),
                                                     std::to_string(row.count)});
    }
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
    csv::write_row(out, std::vector<std::string>{"bin_low", "bin_high", "count"});
    for (const HistogramBin& bin : bins) {
        csv::write_row(out,
                       std::vector<std::string>{format_score(bin.low), format_score(bin.high),
                                                std::to_string(bin.count)});
    }
}

void write_regression_json(std::ostream& out, const RegressionResult* result,
                           const std::string& error) {
    ordered_json j;
    if (result == nullptr) {
        j["insufficient_data"] = true;
        j["error"] = error;
    } else {
        j["coefficients"] = {{"rating", result->rating_coef},
                             {"tips", result->tips_coef},
                             {"likes", result->likes_coef}};
        j["intercept"] = result->intercept;
        j["r_squared"] = result->r_squared;
        j["n_rows"] = result->n_rows;
        j["degenerate"] = result->degenerate;
    }
    out << j.dump(2) << '\n';
}

void write_heatmap_geojson(std::ostream& out, const GridHeatmap& grid) {
    ordered_json features = ordered_json::array();
    for (std::uint32_t row = 0; row < grid.n_rows; ++row) {
        for (std::uint32_t col = 0; col < grid.n_cols; ++col) {
            const double value = grid.at(row, col);
            if (value == 0.0) continue;
            const double lat = grid.min_latitude + grid.cell_size * row;
            const double lon = grid.min_longitude + grid.cell_size * col;
            ordered_json ring = ordered_json::array(
                {{lon, lat},
                 {lon + grid.cell_size, lat},
                 {lon + grid.cell_size, lat + grid.cell_size},
                 {lon, lat + grid.cell_size},
                 {lon, lat}});
            ordered_json feature;
            feature["type"] = "Feature";
            feature["geometry"] = {{"type", "Polygon"},
                                   {"coordinates", ordered_json::array({ring})}};
            feature["properties"] = {{"value", value}, {"row", row}, {"col", col}};
            features.push_back(std::move(feature));
        }
    }
    ordered_json j;
    j["type"] = "FeatureCollection";
    j["features"] = std::move(features);
    out << j.dump(2) << '\n';
}

void write_features_csv(std::ostream& out, const UserLocationNetwork& ul,
                        std::span<const PairExample> pairs,
                        std::span<const double> sociality,
                        std::span<const double> entropy) {
    csv::write_row(out, std::vector<std::string>{"user_a", "user_b", "label", "common_count",
                                                 "soc_avg", "soc_max", "soc_min", "soc_std",
                                                 "ent_avg", "ent_max", "ent_min", "ent_std"});
    for (const PairExample& pair : pairs) {
        const FeatureVector f = extract_features(pair, sociality, entropy);
        csv::write_row(
            out, std::vector<std::string>{
                     ul.users[pair.user_a], ul.users[pair.user_b],
                     pair.is_friend ? "1" : "0", std::to_string(f.common_count),
                     format_score(f.soc_avg), format_score(f.soc_max),
                     format_score(f.soc_min), format_score(f.soc_std),
                     format_score(f.ent_avg), format_score(f.ent_max),
                     format_score(f.ent_min), format_score(f.ent_std)});
    }
}

const char* feature_mode_name(FeatureMode mode) {
    switch (mode) {
    case FeatureMode::Sociality: return "sociality";
    case FeatureMode::Entropy: return "entropy";
    case FeatureMode::Combined: return "combined";
    }
    return "?";
}

const char* weighting_name(RwrWeighting weighting) {
    return weighting == RwrWeighting::Plain ? "plain" : "sociality";
}

void write_eval_json(std::ostream& out, const EvalReport& report, double baseline_auc,
                     std::uint64_t seed) {
    ordered_json reps = ordered_json::array();
    for (const RepetitionMetrics& r : report.repetitions) {
        reps.push_back({{"auc", r.auc},
                        {"accuracy", r.accuracy},
                        {"f1", r.f1},
                        {"redraws", r.redraws}});
    }
    ordered_json j;
    j["mode"] = feature_mode_name(report.mode);
    j["split_fraction"] = report.split_fraction;
    j["seed"] = seed;
    j["repetitions"] = std::move(reps);
    j["mean"] = {{"auc", report.mean_auc},
                 {"accuracy", report.mean_accuracy},
                 {"f1", report.mean_f1}};
    j["baseline_common_count_auc"] = baseline_auc;
    out << j.dump(2) << '\n';
}

void write_recommendations_csv(std::ostream& out, std::span<const RecommendationRow> rows) {
    csv::write_row(out, std::vector<std::string>{"window_start", "user_id", "rank",
                                                 "location_id", "relevance"});
    for (const RecommendationRow& row : rows) {
        csv::write_row(out, std::vector<std::string>{std::to_string(row.window_start),
                                                     row.user_id, std::to_string(row.rank),
                                                     row.location_id,
                                                     format_score(row.relevance)});
    }
}

void write_rec_eval_json(std::ostream& out, const RecReport& report,
                         const RecEvalConfig& config) {
    ordered_json windows = ordered_json::array();
    for (const WindowReport& w : report.windows) {
        ordered_json results = ordered_json::array();
        for (const WeightingMetrics& m : w.results) {
            results.push_back({{"weighting", weighting_name(m.weighting)},
                               {"precision_at_k", m.precision_at_k},
                               {"recall_at_k", m.recall_at_k}});
        }
        ordered_json wj;
        wj["window_start"] = w.start;
        wj["window_mid"] = w.mid;
        wj["window_end"] = w.end;
        wj["skipped"] = w.skipped;
        if (w.skipped) wj["skip_reason"] = w.skip_reason;
        wj["evaluable_users"] = w.evaluable_users;
        wj["skipped_users"] = w.skipped_users;
        wj["results"] = std::move(results);
        windows.push_back(std::move(wj));
    }
    ordered_json j;
    j["window_days"] = config.window_days;
    j["top_k"] = config.top_k;
    j["restart_probability"] = config.rwr.restart_probability;
    j["precision_denominator"] = config.precision_denominator_is_k ? "k" : "list_length";
    j["window_filter"] = {{"min_user_checkins", config.window_filter.min_user_checkins},
                          {"min_location_checkins",
                           config.window_filter.min_location_checkins},
                          {"follower_trim_fraction",
                           config.window_filter.follower_trim_fraction}};
    j["windows"] = std::move(windows);
    out << j.dump(2) << '\n';
}

void write_checkins_csv(std::ostream& out, std::span<const CheckIn> checkins) {
    csv::write_row(out,
                   std::vector<std::string>{"user_id", "location_id", "timestamp", "lat",
                                            "lon"});
    for (const CheckIn& c : checkins) {
        csv::write_row(out, std::vector<std::string>{c.user_id, c.location_id,
                                                     std::to_string(c.timestamp),
                                                     format_score(c.latitude),
                                                     format_score(c.longitude)});
    }
}

void write_follows_csv(std::ostream& out, std::span<const FollowEdge> follows) {
    csv::write_row(out, std::vector<std::string>{"follower", "followee"});
    for (const FollowEdge& e : follows) {
        csv::write_row(out, std::vector<std::string>{e.follower, e.followee});
    }
}

void write_locations_csv(std::ostream& out, std::span<const LocationMeta> locations) {
    csv::write_row(out, std::vector<std::string>{"location_id", "name", "category", "rating",
                                                 "tips", "likes", "lat", "lon"});
    for (const LocationMeta& m : locations) {
        csv::write_row(
            out, std::vector<std::string>{
                     m.location_id, m.name, m.category,
                     m.rating ? format_score(*m.rating) : "",
                     m.tips ? std::to_string(*m.tips) : "",
                     m.likes ? std::to_string(*m.likes) : "",
                     format_score(m.latitude), format_score(m.longitude)});
    }
}

} // namespace locsoc
