#include "locsoc/friendship.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace locsoc {

namespace {

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<std::uint32_t> common_locations(const UserLocationNetwork& ul, std::uint32_t a,
                                            std::uint32_t b) {
    std::vector<std::uint32_t> out;
    const auto& va = ul.user_visits[a];
    const auto& vb = ul.user_visits[b];
    std::size_t i = 0, j = 0;
    while (i < va.size() && j < vb.size()) {
        if (va[i].first < vb[j].first) {
            ++i;
        } else if (vb[j].first < va[i].first) {
            ++j;
        } else {
            out.push_back(va[i].first);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

std::vector<PairExample> build_pairs(const SocialNetwork& social,
                                     const UserLocationNetwork& ul, std::uint64_t seed) {
    const auto n = static_cast<std::uint32_t>(ul.user_count());
    std::vector<PairExample> pairs;

    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b : social.neighbors[a]) {
            if (b <= a) continue;
            auto common = common_locations(ul, a, b);
            if (common.size() < 2) continue;
            pairs.push_back({a, b, std::move(common), true});
        }
    }
    const std::size_t positives = pairs.size();

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pool;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (social.has_edge(a, b)) continue;
            if (common_locations(ul, a, b).size() < 2) continue;
            pool.emplace_back(a, b);
        }
    }
    if (pool.size() < positives) {
        throw InputError("negative sampling: only " + std::to_string(pool.size()) +
                         " eligible non-friend pairs for " + std::to_string(positives) +
                         " positives");
    }

    auto rng = stream_for(seed, 0);
    for (std::size_t i = 0; i < positives; ++i) {
        const std::size_t j = i + draw_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        auto [a, b] = pool[i];
        pairs.push_back({a, b, common_locations(ul, a, b), false});
    }
    return pairs;
}

namespace {

struct Stats {
    double avg, max, min, std;
};

Stats multiset_stats(std::span<const double> values) {
    double sum = 0.0, lo = values[0], hi = values[0];
    for (double v : values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size()); // population variance
    return {mean, hi, lo, std::sqrt(var)};
}

} // namespace

FeatureVector extract_features(const PairExample& pair, std::span<const double> sociality,
                               std::span<const double> entropy) {
    if (pair.common_locations.size() < 2) {
        throw InputError("extract_features: pair has fewer than two common locations");
    }
    std::vector<double> soc, ent;
    soc.reserve(pair.common_locations.size());
    ent.reserve(pair.common_locations.size());
    for (std::uint32_t loc : pair.common_locations) {
        soc.push_back(sociality[loc]);
        ent.push_back(entropy[loc]);
    }
    const Stats s = multiset_stats(soc);
    const Stats e = multiset_stats(ent);
    return {s.avg, s.max, s.min, s.std, e.avg, e.max, e.min,
            e.std, pair.common_locations.size()};
}

std::vector<double> model_features(const FeatureVector& f, FeatureMode mode) {
    switch (mode) {
    case FeatureMode::Sociality:
        return {f.soc_avg, f.soc_max, f.soc_min, f.soc_std};
    case FeatureMode::Entropy:
        return {f.ent_avg, f.ent_max, f.ent_min, f.ent_std};
    case FeatureMode::Combined:
        return {f.soc_avg, f.soc_max, f.soc_min, f.soc_std,
                f.ent_avg, f.ent_max, f.ent_min, f.ent_std};
    }
    return {};
}

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace

double LogisticModel::predict_probability(std::span<const double> features) const {
    double z = bias;
    for (std::size_t d = 0; d < weights.size(); ++d) {
        z += weights[d] * (features[d] - feature_mean[d]) / feature_std[d];
    }
    return sigmoid(z);
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const LogisticConfig& config) {
    if (features.empty() || features.size() != labels.size()) {
        throw InputError("train_logistic: empty or mismatched training data");
    }
    const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
    if (!has_pos || !has_neg) {
        throw InputError("train_logistic: both classes must be present");
    }

    const std::size_t n = features.size();
    const std::size_t d = features[0].size();

    LogisticModel model;
    model.feature_mean.assign(d, 0.0);
    model.feature_std.assign(d, 0.0);
    for (const auto& row : features) {
        for (std::size_t k = 0; k < d; ++k) model.feature_mean[k] += row[k];
    }
    for (std::size_t k = 0; k < d; ++k) model.feature_mean[k] /= static_cast<double>(n);
    for (const auto& row : features) {
        for (std::size_t k = 0; k < d; ++k) {
            const double c = row[k] - model.feature_mean[k];
            model.feature_std[k] += c * c;
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        model.feature_std[k] = std::sqrt(model.feature_std[k] / static_cast<double>(n));
        if (model.feature_std[k] == 0.0) model.feature_std[k] = 1.0;
    }

    // z-score once so the descent works on standardized columns
    std::vector<double> z(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            z[i * d + k] = (features[i][k] - model.feature_mean[k]) / model.feature_std[k];
        }
    }

    model.weights.assign(d, 0.0);
    model.bias = 0.0;
    std::vector<double> grad(d);
    for (std::uint32_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_bias = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double score = model.bias;
            for (std::size_t k = 0; k < d; ++k) score += model.weights[k] * z[i * d + k];
            const double residual = sigmoid(score) - static_cast<double>(labels[i]);
            grad_bias += residual;
            for (std::size_t k = 0; k < d; ++k) grad[k] += residual * z[i * d + k];
        }
        double max_grad = std::abs(grad_bias / static_cast<double>(n));
        for (std::size_t k = 0; k < d; ++k) {
            grad[k] = grad[k] / static_cast<double>(n) + config.l2 * model.weights[k];
            max_grad = std::max(max_grad, std::abs(grad[k]));
        }
        grad_bias /= static_cast<double>(n);

        model.epochs_run = epoch + 1;
        if (max_grad < config.gradient_tolerance) break;
        for (std::size_t k = 0; k < d; ++k) {
            model.weights[k] -= config.learning_rate * grad[k];
        }
        model.bias -= config.learning_rate * grad_bias;
    }
    return model;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw InputError("roc_curve: empty or mismatched scores/labels");
    }
    std::size_t pos = 0, neg = 0;
    for (int label : labels) (label == 1 ? pos : neg) += 1;
    if (pos == 0 || neg == 0) {
        throw InputError("roc_curve: both classes must be present");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] == 1 ? tp : fp) += 1;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos)});
    }

    double auc = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = auc;
    return curve;
}

ClassificationMetrics classification_metrics(std::span<const double> scores,
                                             std::span<const int> labels) {
    ClassificationMetrics m;
    m.auc = roc_curve(scores, labels).auc;

    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= 0.5;
        if (predicted && labels[i] == 1) ++tp;
        else if (predicted) ++fp;
        else if (labels[i] == 1) ++fn;
        else ++tn;
    }
    m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(scores.size());
    const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    m.f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    return m;
}

EvalReport evaluate(const std::vector<PairExample>& pairs, std::span<const double> sociality,
                    std::span<const double> entropy, const EvalConfig& config) {
    if (pairs.empty()) throw InputError("evaluate: no pairs");
    if (config.split_fraction <= 0.0 || config.split_fraction >= 1.0) {
        throw InputError("evaluate: split_fraction must lie in (0, 1)");
    }

    std::vector<std::vector<double>> all_features;
    std::vector<int> all_labels;
    all_features.reserve(pairs.size());
    for (const PairExample& pair : pairs) {
        all_features.push_back(
            model_features(extract_features(pair, sociality, entropy), config.mode));
        all_labels.push_back(pair.is_friend ? 1 : 0);
    }

    const std::size_t n = pairs.size();
    const auto train_size = static_cast<std::size_t>(
        std::floor(config.split_fraction * static_cast<double>(n)));
    if (train_size == 0 || train_size == n) {
        throw InputError("evaluate: split leaves an empty train or test portion");
    }

    EvalReport report;
    report.mode = config.mode;
    report.split_fraction = config.split_fraction;

    std::vector<std::size_t> order(n);
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
        auto rng = stream_for(config.seed, rep);
        std::uint32_t redraws = 0;
        while (true) {
            std::iota(order.begin(), order.end(), 0);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::size_t j = i + draw_below(rng, n - i);
                std::swap(order[i], order[j]);
            }
            auto class_count = [&](std::size_t from, std::size_t to, int label) {
                std::size_t c = 0;
                for (std::size_t i = from; i < to; ++i) c += all_labels[order[i]] == label;
                return c;
            };
            const bool ok = class_count(0, train_size, 1) > 0 &&
                            class_count(0, train_size, 0) > 0 &&
                            class_count(train_size, n, 1) > 0 &&
                            class_count(train_size, n, 0) > 0;
            if (ok) break;
            if (++redraws > 10) {
                throw InputError("evaluate: a class is missing from the split after 10 "
                                 "re-draws (repetition " +
                                 std::to_string(rep) + ")");
            }
        }

        std::vector<std::vector<double>> train_x;
        std::vector<int> train_y;
        train_x.reserve(train_size);
        for (std::size_t i = 0; i < train_size; ++i) {
            train_x.push_back(all_features[order[i]]);
            train_y.push_back(all_labels[order[i]]);
        }
        const LogisticModel model = train_logistic(train_x, train_y, config.logistic);

        std::vector<double> test_scores;
        std::vector<int> test_labels;
        test_scores.reserve(n - train_size);
        for (std::size_t i = train_size; i < n; ++i) {
            test_scores.push_back(model.predict_probability(all_features[order[i]]));
            test_labels.push_back(all_labels[order[i]]);
        }
        const ClassificationMetrics m = classification_metrics(test_scores, test_labels);
        report.repetitions.push_back({m.auc, m.accuracy, m.f1, redraws});
    }

    for (const RepetitionMetrics& r : report.repetitions) {
        report.mean_auc += r.auc;
        report.mean_accuracy += r.accuracy;
        report.mean_f1 += r.f1;
    }
    const auto reps = static_cast<double>(report.repetitions.size());
    report.mean_auc /= reps;
    report.mean_accuracy /= reps;
    report.mean_f1 /= reps;
    return report;
}

RocCurve baseline_common_count(const std::vector<PairExample>& pairs) {
    if (pairs.empty()) throw InputError("baseline_common_count: no pairs");
    std::vector<double> scores;
    std::vector<int> labels;
    scores.reserve(pairs.size());
    for (const PairExample& pair : pairs) {
        scores.push_back(static_cast<double>(pair.common_locations.size()));
        labels.push_back(pair.is_friend ? 1 : 0);
    }
    return roc_curve(scores, labels);
}

} // namespace locsoc
