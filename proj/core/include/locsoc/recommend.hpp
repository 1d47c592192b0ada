#ifndef LOCSOC_RECOMMEND_HPP_
#define LOCSOC_RECOMMEND_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locsoc/network.hpp"
#include "locsoc/solver.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

enum class RwrWeighting { Plain, Sociality };

struct RwrConfig {
    double restart_probability = 0.15; // c
    double tolerance = 1e-8;           // max-norm residual
    std::uint32_t max_iterations = 1000;
    RwrWeighting weighting = RwrWeighting::Plain;

    void validate() const;
};

/// Column-stochastic walk graph over user+location nodes: users occupy
/// indices [0, |U|), locations [|U|, |U|+|L|). Plain weighting uses raw
/// visit counts; sociality weighting rescales each location column block by
/// 1 / (-ln s(l)). The restart mass is added during the walk.
struct BipartiteWalkGraph {
    std::vector<std::string> users;
    std::vector<std::string> locations;
    ColumnStochasticMatrix transition;
    std::size_t clamped_scores = 0; // sociality scores clamped below 1

    std::size_t node_count() const { return users.size() + locations.size(); }
};

/// `sociality` must be non-null for the sociality weighting, aligned to
/// ul.locations, every score in (0, 1); scores >= 1 are clamped to 1 - 1e-12
/// and counted, scores <= 0 are an error.
BipartiteWalkGraph build_walk_graph(const UserLocationNetwork& ul,
                                    const std::vector<double>* sociality,
                                    const RwrConfig& config);

/// Power iteration of r <- (1 - c) * Qbar * r + c * e_target from the
/// uniform vector until the max-norm difference drops below the tolerance.
/// The result sums to 1. Non-convergence raises NumericError carrying the
/// residual.
std::vector<double> personalize_and_walk(const BipartiteWalkGraph& graph,
                                         std::string_view user, const RwrConfig& config);

/// Top-k locations by relevance with the training history removed; ties are
/// broken by token order.
std::vector<std::pair<std::string, double>> recommend_new(
    const BipartiteWalkGraph& graph, std::string_view user,
    std::span<const std::string> train_history, std::size_t k, const RwrConfig& config);

/// One 60-day window: train covers the first half, test the second.
struct TemporalSplit {
    std::int64_t start = 0;
    std::int64_t mid = 0;
    std::int64_t end = 0;
    std::vector<CheckIn> train;
    std::vector<CheckIn> test;
};

/// Consecutive fixed-length windows from the earliest check-in; only fully
/// covered windows are returned. Data spanning less than one window is an
/// error.
std::vector<TemporalSplit> make_windows(std::span<const CheckIn> checkins,
                                        std::int64_t window_days);

struct RecEvalConfig {
    FilterConfig window_filter{.min_user_checkins = 5,
                               .min_location_checkins = 3,
                               .follower_trim_fraction = 0.0};
    SolverConfig solver;
    RwrConfig rwr;
    std::vector<RwrWeighting> weightings{RwrWeighting::Plain, RwrWeighting::Sociality};
    std::int64_t window_days = 60;
    std::size_t top_k = 10;
    /// true: precision divides by k; false: by the recommendation list length.
    bool precision_denominator_is_k = true;
    /// Collect per-user recommendation rows for this weighting.
    bool collect_recommendations = false;
    RwrWeighting export_weighting = RwrWeighting::Sociality;
};

struct WeightingMetrics {
    RwrWeighting weighting = RwrWeighting::Plain;
    double precision_at_k = 0.0;
    double recall_at_k = 0.0;
};

struct RecommendationRow {
    std::int64_t window_start = 0;
    std::string user_id;
    std::size_t rank = 0;
    std::string location_id;
    double relevance = 0.0;
};

struct WindowReport {
    std::int64_t start = 0;
    std::int64_t mid = 0;
    std::int64_t end = 0;
    bool skipped = false;
    std::string skip_reason;
    std::size_t evaluable_users = 0;
    std::size_t skipped_users = 0;
    std::vector<WeightingMetrics> results;
};

struct RecReport {
    std::vector<WindowReport> windows;
    std::vector<RecommendationRow> recommendations;
};

/// Temporal evaluation: per window, networks and (for sociality weighting)
/// kappa are rebuilt from the train half only; ground truth per user is the
/// set of distinct test-half locations the user did not visit in training.
/// Users absent from the train graph or with empty ground truth are skipped
/// and counted.
RecReport evaluate_windows(std::span<const CheckIn> checkins,
                           std::span<const FollowEdge> follows,
                           const RecEvalConfig& config);

} // namespace locsoc

#endif // LOCSOC_RECOMMEND_HPP_
