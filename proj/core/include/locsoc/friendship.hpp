#ifndef LOCSOC_FRIENDSHIP_HPP_
#define LOCSOC_FRIENDSHIP_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locsoc/network.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

/// A labeled user pair with its common-location set (>= 2 by construction).
struct PairExample {
    std::uint32_t user_a = 0;
    std::uint32_t user_b = 0;
    std::vector<std::uint32_t> common_locations; // sorted
    bool is_friend = false;
};

/// Positives: every friend pair with at least two common locations.
/// Negatives: a seeded uniform sample, without replacement, of equally many
/// non-friend pairs that also share at least two locations.
std::vector<PairExample> build_pairs(const SocialNetwork& social,
                                     const UserLocationNetwork& ul, std::uint64_t seed);

enum class FeatureMode { Sociality, Entropy, Combined };

/// Statistics over the pair's common-location sociality and entropy values.
/// std is the population standard deviation.
struct FeatureVector {
    double soc_avg = 0.0, soc_max = 0.0, soc_min = 0.0, soc_std = 0.0;
    double ent_avg = 0.0, ent_max = 0.0, ent_min = 0.0, ent_std = 0.0;
    std::size_t common_count = 0;
};

FeatureVector extract_features(const PairExample& pair, std::span<const double> sociality,
                               std::span<const double> entropy);

/// Model feature order: Sociality = [soc_avg, soc_max, soc_min, soc_std];
/// Entropy = [ent_avg, ent_max, ent_min, ent_std]; Combined = Sociality
/// followed by Entropy.
std::vector<double> model_features(const FeatureVector& features, FeatureMode mode);

struct LogisticConfig {
    double learning_rate = 0.5;
    std::uint32_t max_epochs = 500;
    double l2 = 1e-4;              // not applied to the bias
    double gradient_tolerance = 1e-7; // stop when max-abs gradient falls below
};

/// Logistic regression over z-scored features; the standardization
/// statistics are learned from the training data and stored with the model.
struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> feature_mean;
    std::vector<double> feature_std;
    std::uint32_t epochs_run = 0;

    double predict_probability(std::span<const double> features) const;
};

/// Full-batch gradient descent on L2-regularized log-loss; deterministic for
/// fixed configuration and data order. Throws InputError on single-class
/// input.
LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const LogisticConfig& config);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// ROC swept over the distinct score values (ties grouped), area by
/// trapezoid. Requires both classes present.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);

struct ClassificationMetrics {
    double auc = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
};

/// AUC, accuracy at probability threshold 0.5, and F1 of the positive class.
ClassificationMetrics classification_metrics(std::span<const double> scores,
                                             std::span<const int> labels);

struct EvalConfig {
    FeatureMode mode = FeatureMode::Sociality;
    double split_fraction = 0.7;
    std::uint32_t repetitions = 10;
    std::uint64_t seed = 0;
    LogisticConfig logistic;
};

struct RepetitionMetrics {
    double auc = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
    std::uint32_t redraws = 0; // splits re-drawn because a class was missing
};

struct EvalReport {
    std::vector<RepetitionMetrics> repetitions;
    double mean_auc = 0.0;
    double mean_accuracy = 0.0;
    double mean_f1 = 0.0;
    FeatureMode mode = FeatureMode::Sociality;
    double split_fraction = 0.7;
};

/// Repeated shuffle-split evaluation; each repetition draws its RNG stream
/// from (seed, repetition index). A split leaving a class out of the test
/// portion is re-drawn up to 10 times, then the run fails.
EvalReport evaluate(const std::vector<PairExample>& pairs, std::span<const double> sociality,
                    std::span<const double> entropy, const EvalConfig& config);

/// Naive baseline: score = common-location count, ROC over all thresholds.
RocCurve baseline_common_count(const std::vector<PairExample>& pairs);

} // namespace locsoc

#endif // LOCSOC_FRIENDSHIP_HPP_
