#include "locsoc/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "locsoc/ingest.hpp"

namespace locsoc {

void RwrConfig::validate() const {
    if (restart_probability <= 0.0 || restart_probability >= 1.0) {
        throw InputError("restart_probability must lie in (0, 1), got " +
                         std::to_string(restart_probability));
    }
    if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
    if (max_iterations == 0) throw InputError("max_iterations must be at least 1");
}

BipartiteWalkGraph build_walk_graph(const UserLocationNetwork& ul,
                                    const std::vector<double>* sociality,
                                    const RwrConfig& config) {
    config.validate();
    const auto n_users = static_cast<std::uint32_t>(ul.user_count());
    const auto n_locations = static_cast<std::uint32_t>(ul.location_count());

    BipartiteWalkGraph graph;
    graph.users = ul.users;
    graph.locations = ul.locations;

    // Per-location factor of Eq-weighted counts: 1 / (-ln s(l)).
    std::vector<double> factor(n_locations, 1.0);
    if (config.weighting == RwrWeighting::Sociality) {
        if (sociality == nullptr || sociality->size() != n_locations) {
            throw InputError("sociality weighting requires a score per location");
        }
        for (std::uint32_t j = 0; j < n_locations; ++j) {
            double s = (*sociality)[j];
            if (s <= 0.0) {
                throw InputError("sociality score for location '" + ul.locations[j] +
                                 "' is not positive; its log weight is undefined");
            }
            if (s >= 1.0) {
                s = 1.0 - 1e-12;
                ++graph.clamped_scores;
            }
            factor[j] = 1.0 / (-std::log(s));
        }
    }

    const std::uint32_t n = n_users + n_locations;
    std::vector<ColumnStochasticMatrix::Column> columns(n);
    for (std::uint32_t i = 0; i < n_users; ++i) {
        for (auto [loc, count] : ul.user_visits[i]) {
            columns[i].emplace_back(n_users + loc,
                                    static_cast<double>(count) * factor[loc]);
        }
    }
    for (std::uint32_t j = 0; j < n_locations; ++j) {
        for (auto [user, count] : ul.location_visits[j]) {
            columns[n_users + j].emplace_back(user,
                                              static_cast<double>(count) * factor[j]);
        }
    }
    graph.transition = ColumnStochasticMatrix::from_columns(n, std::move(columns),
                                                            ZeroColumnPolicy::Uniform);
    return graph;
}

std::vector<double> personalize_and_walk(const BipartiteWalkGraph& graph,
                                         std::string_view user, const RwrConfig& config) {
    config.validate();
    auto target = find_token(graph.users, user);
    if (!target) {
        throw InputError("personalize_and_walk: unknown user '" + std::string(user) + "'");
    }
    const std::size_t n = graph.node_count();
    const double c = config.restart_probability;

    std::vector<double> relevance(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    double residual = 0.0;
    for (std::uint32_t iter = 0; iter < config.max_iterations; ++iter) {
        graph.transition.multiply(relevance, next);
        for (double& v : next) v *= 1.0 - c;
        next[*target] += c;

        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(next[i] - relevance[i]));
        }
        relevance.swap(next);
        if (!std::isfinite(residual)) {
            throw NumericError("personalize_and_walk: non-finite residual at iteration " +
                               std::to_string(iter + 1));
        }
        if (residual < config.tolerance) return relevance;
    }
    throw NumericError("personalize_and_walk: no convergence within " +
                       std::to_string(config.max_iterations) +
                       " iterations; residual " + std::to_string(residual));
}

std::vector<std::pair<std::string, double>> recommend_new(
    const BipartiteWalkGraph& graph, std::string_view user,
    std::span<const std::string> train_history, std::size_t k, const RwrConfig& config) {
    const std::vector<double> relevance = personalize_and_walk(graph, user, config);
    const std::size_t n_users = graph.users.size();

    std::unordered_set<std::string_view> visited(train_history.begin(),
                                                 train_history.end());
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t j = 0; j < graph.locations.size(); ++j) {
        if (visited.count(graph.locations[j])) continue;
        out.emplace_back(graph.locations[j], relevance[n_users + j]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (k < out.size()) out.resize(k);
    return out;
}

std::vector<TemporalSplit> make_windows(std::span<const CheckIn> checkins,
                                        std::int64_t window_days) {
    if (checkins.empty()) throw InputError("make_windows: no check-ins");
    if (window_days <= 0 || window_days % 2 != 0) {
        throw InputError("make_windows: window length must be a positive even day count");
    }
    std::int64_t min_ts = checkins[0].timestamp, max_ts = checkins[0].timestamp;
    for (const CheckIn& c : checkins) {
        min_ts = std::min(min_ts, c.timestamp);
        max_ts = std::max(max_ts, c.timestamp);
    }
    const std::int64_t window_len = window_days * std::int64_t{86400};

    std::vector<TemporalSplit> windows;
    for (std::int64_t start = min_ts; start + window_len <= max_ts + 1;
         start += window_len) {
        TemporalSplit split;
        split.start = start;
        split.mid = start + window_len / 2;
        split.end = start + window_len;
        windows.push_back(std::move(split));
    }
    if (windows.empty()) {
        throw InputError("make_windows: data spans less than one " +
                         std::to_string(window_days) + "-day window");
    }
    for (const CheckIn& c : checkins) {
        for (TemporalSplit& w : windows) {
            if (c.timestamp >= w.start && c.timestamp < w.end) {
                (c.timestamp < w.mid ? w.train : w.test).push_back(c);
                break;
            }
        }
    }
    return windows;
}

RecReport evaluate_windows(std::span<const CheckIn> checkins,
                           std::span<const FollowEdge> follows,
                           const RecEvalConfig& config) {
    config.rwr.validate();
    if (config.top_k == 0) throw InputError("evaluate_windows: top_k must be at least 1");

    RecReport report;
    for (TemporalSplit& window : make_windows(checkins, config.window_days)) {
        WindowReport wr;
        wr.start = window.start;
        wr.mid = window.mid;
        wr.end = window.end;

        Networks nets;
        try {
            nets = build_networks(window.train, follows, config.window_filter);
        } catch (const InputError& e) {
            wr.skipped = true;
            wr.skip_reason = e.what();
            report.windows.push_back(std::move(wr));
            continue;
        }
        const UserLocationNetwork& ul = nets.user_location;

        // Ground truth: distinct test-half locations the user has not
        // visited in the train half.
        std::map<std::string, std::set<std::string>> test_locations;
        for (const CheckIn& c : window.test) test_locations[c.user_id].insert(c.location_id);

        std::set<std::string> universe;
        for (const std::string& user : ul.users) universe.insert(user);
        for (const auto& [user, locs] : test_locations) universe.insert(user);

        struct Evaluable {
            std::uint32_t user_index;
            std::vector<std::string> train_history;
            std::set<std::string> ground_truth;
        };
        std::vector<Evaluable> evaluable;
        for (const std::string& user : universe) {
            auto ui = find_token(ul.users, user);
            if (!ui) {
                ++wr.skipped_users;
                continue;
            }
            std::vector<std::string> history;
            for (auto [loc, count] : ul.user_visits[*ui]) {
                history.push_back(ul.locations[loc]);
            }
            std::set<std::string> truth;
            auto it = test_locations.find(user);
            if (it != test_locations.end()) {
                for (const std::string& loc : it->second) {
                    if (std::find(history.begin(), history.end(), loc) == history.end()) {
                        truth.insert(loc);
                    }
                }
            }
            if (truth.empty()) {
                ++wr.skipped_users;
                continue;
            }
            evaluable.push_back({*ui, std::move(history), std::move(truth)});
        }
        if (evaluable.empty()) {
            wr.skipped = true;
            wr.skip_reason = "no evaluable users";
            report.windows.push_back(std::move(wr));
            continue;
        }
        wr.evaluable_users = evaluable.size();

        // Sociality is recomputed from this window's train half only.
        std::vector<double> kappa;
        const bool needs_sociality =
            std::find(config.weightings.begin(), config.weightings.end(),
                      RwrWeighting::Sociality) != config.weightings.end();
        if (needs_sociality) {
            const StochasticOperators ops =
                normalize(nets.social, ul, config.solver.zero_column_policy);
            kappa = solve(ops, config.solver).sociality.values;
        }

        for (RwrWeighting weighting : config.weightings) {
            RwrConfig rwr = config.rwr;
            rwr.weighting = weighting;
            const BipartiteWalkGraph graph = build_walk_graph(
                ul, weighting == RwrWeighting::Sociality ? &kappa : nullptr, rwr);

            double precision_sum = 0.0, recall_sum = 0.0;
            for (const Evaluable& user : evaluable) {
                const auto recs = recommend_new(graph, ul.users[user.user_index],
                                                user.train_history, config.top_k, rwr);
                std::size_t hits = 0;
                for (const auto& [loc, rel] : recs) hits += user.ground_truth.count(loc);

                const double denom = config.precision_denominator_is_k
                                         ? static_cast<double>(config.top_k)
                                         : static_cast<double>(recs.size());
                precision_sum += denom == 0.0 ? 0.0 : static_cast<double>(hits) / denom;
                recall_sum += static_cast<double>(hits) /
                              static_cast<double>(user.ground_truth.size());

                if (config.collect_recommendations &&
                    weighting == config.export_weighting) {
                    for (std::size_t r = 0; r < recs.size(); ++r) {
                        report.recommendations.push_back({window.start,
                                                          ul.users[user.user_index], r + 1,
                                                          recs[r].first, recs[r].second});
                    }
                }
            }
            const auto n_eval = static_cast<double>(evaluable.size());
            wr.results.push_back({weighting, precision_sum / n_eval, recall_sum / n_eval});
        }
        report.windows.push_back(std::move(wr));
    }
    return report;
}

} // namespace locsoc
