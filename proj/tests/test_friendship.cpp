#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "locsoc/friendship.hpp"
#include "locsoc/ingest.hpp"
#include "locsoc/metrics.hpp"
#include "locsoc/solver.hpp"
#include "locsoc/synthetic.hpp"
#include "support/oracles.hpp"

using namespace locsoc;
using testing::DenseMatrix;

namespace {

// Six users: u0-u2 mutual friends sharing l0/l1; u3-u5 strangers who also
// share l2/l3, giving the negative sampler a pool of exactly three pairs.
void pair_fixture(SocialNetwork& social, UserLocationNetwork& ul) {
    const DenseMatrix x = {
        {0, 1, 1, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {1, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
    };
    const DenseMatrix y = {
        {2, 1, 0, 0}, {1, 1, 0, 0}, {3, 2, 0, 0},
        {0, 0, 1, 1}, {0, 0, 2, 1}, {0, 0, 1, 3},
    };
    testing::networks_from_dense(x, y, social, ul);
}

} // namespace

TEST_SUITE_BEGIN("friendship");

TEST_CASE("build_pairs: positives plus an equal seeded negative sample") {
    SocialNetwork social;
    UserLocationNetwork ul;
    pair_fixture(social, ul);

    auto pairs = build_pairs(social, ul, 42);
    const auto positives =
        std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.is_friend; });
    const auto negatives = static_cast<std::ptrdiff_t>(pairs.size()) - positives;
    CHECK(positives == 3);
    CHECK(negatives == 3);
    for (const PairExample& p : pairs) CHECK(p.common_locations.size() >= 2);

    auto again = build_pairs(social, ul, 42);
    REQUIRE(again.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(pairs[i].user_a == again[i].user_a);
        CHECK(pairs[i].user_b == again[i].user_b);
        CHECK(pairs[i].is_friend == again[i].is_friend);
    }
}

TEST_CASE("build_pairs: friends sharing a single location are excluded") {
    const DenseMatrix x = {{0, 1}, {1, 0}};
    const DenseMatrix y = {{5, 0}, {5, 9}};
    SocialNetwork social;
    UserLocationNetwork ul;
    testing::networks_from_dense(x, y, social, ul);
    auto pairs = build_pairs(social, ul, 0);
    CHECK(pairs.empty()); // one common location only, and no negative needed
}

TEST_CASE("build_pairs: reports counts when the negative pool is too small") {
    // Two friend pairs share locations, but only one non-friend pair does.
    const DenseMatrix x = {{0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 0, 0}};
    const DenseMatrix y = {{1, 1, 0}, {1, 1, 0}, {1, 1, 1}, {0, 1, 1}};
    SocialNetwork social;
    UserLocationNetwork ul;
    testing::networks_from_dense(x, y, social, ul);
    CHECK_THROWS_WITH_AS(build_pairs(social, ul, 1), doctest::Contains("eligible"),
                         InputError);
}

TEST_CASE("extract_features: two-point statistics") {
    PairExample pair{0, 1, {0, 1}, true};
    const std::vector<double> sociality{0.1, 0.3};
    const std::vector<double> entropy{1.0, 2.0};
    auto f = extract_features(pair, sociality, entropy);
    CHECK(f.soc_avg == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f.soc_max == 0.3);
    CHECK(f.soc_min == 0.1);
    CHECK(f.soc_std == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(f.ent_avg == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.common_count == 2);
}

TEST_CASE("extract_features: identical scores have zero deviation") {
    PairExample pair{0, 1, {0, 1, 2}, false};
    const std::vector<double> sociality{0.2, 0.2, 0.2};
    const std::vector<double> entropy{1.0, 1.0, 1.0};
    auto f = extract_features(pair, sociality, entropy);
    CHECK(f.soc_std == 0.0);
    CHECK(f.soc_avg == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("extract_features: invariant under common-location order") {
    const std::vector<double> sociality{0.5, 0.1, 0.9, 0.3};
    const std::vector<double> entropy{0.2, 1.4, 0.7, 2.2};
    PairExample a{0, 1, {0, 2, 3}, true};
    PairExample b{0, 1, {3, 0, 2}, true}; // same set, different order
    auto fa = extract_features(a, sociality, entropy);
    auto fb = extract_features(b, sociality, entropy);
    CHECK(fa.soc_avg == fb.soc_avg);
    CHECK(fa.soc_std == fb.soc_std);
    CHECK(fa.ent_min == fb.ent_min);
    CHECK(fa.ent_max == fb.ent_max);
}

TEST_CASE("model_features: combined mode concatenates in the documented order") {
    FeatureVector f{1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(model_features(f, FeatureMode::Sociality) == std::vector<double>{1, 2, 3, 4});
    CHECK(model_features(f, FeatureMode::Entropy) == std::vector<double>{5, 6, 7, 8});
    CHECK(model_features(f, FeatureMode::Combined) ==
          std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("train_logistic: separable toy data reaches training accuracy 1") {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
        const double offset = i % 2 == 0 ? 1.0 : -1.0;
        x.push_back({offset + 0.01 * i, offset - 0.01 * i});
        y.push_back(offset > 0 ? 1 : 0);
    }
    auto model = train_logistic(x, y, LogisticConfig{});
    int correct = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        correct += (model.predict_probability(x[i]) >= 0.5 ? 1 : 0) == y[i];
    }
    CHECK(correct == 20);
}

TEST_CASE("train_logistic: duplicating every row leaves the model unchanged") {
    std::mt19937_64 rng(12);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
        x.push_back({u01(), u01(), u01()});
        y.push_back(u01() < 0.5 ? 0 : 1);
    }
    std::vector<std::vector<double>> xx = x;
    std::vector<int> yy = y;
    xx.insert(xx.end(), x.begin(), x.end());
    yy.insert(yy.end(), y.begin(), y.end());

    auto single = train_logistic(x, y, LogisticConfig{});
    auto doubled = train_logistic(xx, yy, LogisticConfig{});
    for (std::size_t k = 0; k < single.weights.size(); ++k) {
        CHECK(single.weights[k] == doctest::Approx(doubled.weights[k]).epsilon(1e-9));
    }
    CHECK(single.bias == doctest::Approx(doubled.bias).epsilon(1e-9));
}

TEST_CASE("train_logistic: a single class is rejected") {
    std::vector<std::vector<double>> x{{1.0}, {2.0}};
    std::vector<int> y{1, 1};
    CHECK_THROWS_AS(train_logistic(x, y, LogisticConfig{}), InputError);
}

TEST_CASE("train_logistic: random labels score near chance on held-out data") {
    double auc_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(900 + seed);
        auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (int i = 0; i < 1000; ++i) {
            x.push_back({u01(), u01()});
            y.push_back(u01() < 0.5 ? 0 : 1);
        }
        auto model = train_logistic({x.begin(), x.begin() + 700}, {y.begin(), y.begin() + 700},
                                    LogisticConfig{});
        std::vector<double> scores;
        std::vector<int> labels(y.begin() + 700, y.end());
        for (std::size_t i = 700; i < x.size(); ++i) {
            scores.push_back(model.predict_probability(x[i]));
        }
        auc_sum += roc_curve(scores, labels).auc;
    }
    const double mean_auc = auc_sum / 20.0;
    CHECK(mean_auc >= 0.4);
    CHECK(mean_auc <= 0.6);
}

TEST_CASE("roc_curve: perfect, constant and mixed instances") {
    const std::vector<double> perfect{0.9, 0.8, 0.2, 0.1};
    const std::vector<int> labels{1, 1, 0, 0};
    CHECK(roc_curve(perfect, labels).auc == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> constant{0.5, 0.5, 0.5, 0.5};
    CHECK(roc_curve(constant, labels).auc == doctest::Approx(0.5).epsilon(1e-12));

    // counts: positives {3, 2}, negatives {2, 2} -> 2 wins + 2 half-ties of 4
    const std::vector<double> mixed{3, 2, 2, 2};
    CHECK(roc_curve(mixed, labels).auc == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(testing::mann_whitney_auc(mixed, labels) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("roc_curve: trapezoid equals the Mann-Whitney statistic") {
    std::mt19937_64 rng(31337);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 60;
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        const bool force_ties = trial % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = force_ties ? static_cast<double>(rng() % 5) : u01();
            labels[i] = u01() < 0.5 ? 0 : 1;
        }
        labels[0] = 1; // both classes present
        labels[n - 1] = 0;
        const double trapezoid = roc_curve(scores, labels).auc;
        const double pairwise = testing::mann_whitney_auc(scores, labels);
        CHECK(std::abs(trapezoid - pairwise) <= 1e-12);
    }
}

TEST_CASE("classification_metrics: scores equal to labels are perfect") {
    const std::vector<double> scores{1, 0, 1, 0, 1};
    const std::vector<int> labels{1, 0, 1, 0, 1};
    auto m = classification_metrics(scores, labels);
    CHECK(m.auc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.accuracy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("baseline_common_count: separation and ties") {
    auto make_pair = [](std::uint32_t a, std::uint32_t b, std::size_t commons, bool friends) {
        PairExample p{a, b, {}, friends};
        for (std::size_t i = 0; i < commons; ++i) {
            p.common_locations.push_back(static_cast<std::uint32_t>(i));
        }
        return p;
    };
    std::vector<PairExample> separated{make_pair(0, 1, 5, true), make_pair(2, 3, 5, true),
                                       make_pair(4, 5, 2, false), make_pair(6, 7, 2, false)};
    CHECK(baseline_common_count(separated).auc == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<PairExample> tied{make_pair(0, 1, 2, true), make_pair(2, 3, 2, false)};
    CHECK(baseline_common_count(tied).auc == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<PairExample> mixed{make_pair(0, 1, 3, true), make_pair(2, 3, 2, true),
                                   make_pair(4, 5, 2, false), make_pair(6, 7, 2, false)};
    CHECK(baseline_common_count(mixed).auc == doctest::Approx(0.75).epsilon(1e-12));

    // Monotonicity: growing a positive pair's common set cannot lower its score.
    auto grown = mixed;
    grown[1].common_locations.push_back(9);
    CHECK(baseline_common_count(grown).auc >= baseline_common_count(mixed).auc - 1e-12);
}

TEST_CASE("evaluate: split re-draws exhaust on a hopeless class balance") {
    SocialNetwork social;
    UserLocationNetwork ul;
    const DenseMatrix x = {{0, 1}, {1, 0}};
    const DenseMatrix y = {{1, 1}, {1, 1}};
    testing::networks_from_dense(x, y, social, ul);
    // One positive and one negative pair: any 50/50 split strands a class.
    std::vector<PairExample> pairs{{0, 1, {0, 1}, true}, {0, 1, {0, 1}, false}};
    const std::vector<double> soc{0.5, 0.5};
    const std::vector<double> ent{0.5, 0.5};
    EvalConfig config;
    config.split_fraction = 0.5;
    CHECK_THROWS_WITH_AS(evaluate(pairs, soc, ent, config), doctest::Contains("re-draws"),
                         InputError);
}

TEST_CASE("evaluate: planted city separates better than the count baseline") {
    SyntheticSpec spec;
    spec.num_users = 60;
    spec.num_locations = 30;
    spec.num_hub_users = 14;
    spec.num_social_venues = 5;
    spec.hub_social_multiplier = 10.0;
    spec.visits_per_user = 40;
    spec.hub_friend_prob = 0.9;
    spec.background_friend_prob = 0.02;

    double model_auc = 0.0, baseline_auc = 0.0;
    int runs = 0;
    for (std::uint64_t seed = 50; seed < 55; ++seed) {
        auto data = generate_synthetic(spec, seed);
        auto nets = build_networks(data.checkins, data.follows,
                                   {.min_user_checkins = 10,
                                    .min_location_checkins = 5,
                                    .follower_trim_fraction = 0.0});
        auto solved = solve(normalize(nets.social, nets.user_location,
                                      ZeroColumnPolicy::Uniform),
                            SolverConfig{});
        auto entropy = location_entropy(nets.user_location);
        auto pairs = build_pairs(nets.social, nets.user_location, seed);

        EvalConfig config;
        config.mode = FeatureMode::Sociality;
        config.seed = seed;
        config.repetitions = 5;
        auto report = evaluate(pairs, solved.sociality.values, entropy, config);
        model_auc += report.mean_auc;
        baseline_auc += baseline_common_count(pairs).auc;
        ++runs;

        // sampling balance holds on every built dataset
        const auto positives = std::count_if(pairs.begin(), pairs.end(),
                                             [](const auto& p) { return p.is_friend; });
        CHECK(positives * 2 == static_cast<std::ptrdiff_t>(pairs.size()));
    }
    CHECK(model_auc / runs > baseline_auc / runs);
}

TEST_CASE("evaluate: mean equals the arithmetic mean of repetitions") {
    SocialNetwork social;
    UserLocationNetwork ul;
    pair_fixture(social, ul);
    auto pairs = build_pairs(social, ul, 9);
    const std::vector<double> soc{0.4, 0.3, 0.2, 0.1};
    const std::vector<double> ent{1.0, 0.5, 1.5, 0.25};
    EvalConfig config;
    config.repetitions = 4;
    config.seed = 77;
    auto report = evaluate(pairs, soc, ent, config);
    REQUIRE(report.repetitions.size() == 4);
    double auc = 0.0;
    for (const auto& r : report.repetitions) auc += r.auc;
    CHECK(report.mean_auc == doctest::Approx(auc / 4.0).epsilon(1e-12));
}

TEST_SUITE_END();
