#include <doctest.h>

#include <map>
#include <sstream>

#include "locsoc/exports.hpp"
#include "locsoc/synthetic.hpp"

using namespace locsoc;

namespace {

std::string serialize(const SyntheticData& data) {
    std::ostringstream out;
    write_checkins_csv(out, data.checkins);
    write_follows_csv(out, data.follows);
    write_locations_csv(out, data.locations);
    return out.str();
}

} // namespace

TEST_SUITE_BEGIN("synthetic");

TEST_CASE("fixed seed reproduces byte-identical data") {
    SyntheticSpec spec;
    spec.num_users = 40;
    spec.num_locations = 20;
    spec.num_hub_users = 6;
    spec.num_social_venues = 4;
    CHECK(serialize(generate_synthetic(spec, 7)) == serialize(generate_synthetic(spec, 7)));
    CHECK(serialize(generate_synthetic(spec, 7)) != serialize(generate_synthetic(spec, 8)));
}

TEST_CASE("inconsistent spec is rejected") {
    SyntheticSpec spec;
    spec.num_hub_users = spec.num_users + 1;
    CHECK_THROWS_AS(generate_synthetic(spec, 0), InputError);

    spec = SyntheticSpec{};
    spec.num_social_venues = spec.num_locations + 1;
    CHECK_THROWS_AS(generate_synthetic(spec, 0), InputError);

    spec = SyntheticSpec{};
    spec.hub_friend_prob = 1.5;
    CHECK_THROWS_AS(generate_synthetic(spec, 0), InputError);
}

TEST_CASE("null model spreads visits evenly across venues") {
    SyntheticSpec spec;
    spec.num_users = 50;
    spec.num_locations = 20;
    spec.num_hub_users = 0;
    spec.num_social_venues = 5;
    spec.nonhub_social_multiplier = 1.0;
    spec.visits_per_user = 20;

    double social_visits = 0.0, plain_visits = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto data = generate_synthetic(spec, seed);
        for (const CheckIn& c : data.checkins) {
            // social venues are the first num_social_venues tokens
            (c.location_id < data.locations[spec.num_social_venues].location_id
                 ? social_visits
                 : plain_visits) += 1.0;
        }
    }
    const double per_social = social_visits / spec.num_social_venues;
    const double per_plain = plain_visits / (spec.num_locations - spec.num_social_venues);
    CHECK(per_social / per_plain == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("hubs visit social venues at elevated rates") {
    SyntheticSpec spec; // defaults: 100 users, 50 venues, 10 hubs, 5 social
    double hub_social = 0.0, hub_plain = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto data = generate_synthetic(spec, seed);
        const std::string last_hub = "u0009";
        const std::string first_plain = data.locations[spec.num_social_venues].location_id;
        for (const CheckIn& c : data.checkins) {
            if (c.user_id > last_hub) continue;
            (c.location_id < first_plain ? hub_social : hub_plain) += 1.0;
        }
    }
    const double per_social = hub_social / spec.num_social_venues;
    const double per_plain = hub_plain / (spec.num_locations - spec.num_social_venues);
    CHECK(per_social > per_plain); // empirical mean over 100 seeds
    CHECK(per_social / per_plain == doctest::Approx(spec.hub_social_multiplier).epsilon(0.1));
}

TEST_CASE("adoption defers part of each hub's social visits to the second half") {
    SyntheticSpec spec;
    spec.num_users = 20;
    spec.num_locations = 15;
    spec.num_hub_users = 8;
    spec.num_social_venues = 6;
    spec.hub_adoption_fraction = 0.5;
    spec.visits_per_user = 200;
    spec.hub_social_multiplier = 10.0;

    auto data = generate_synthetic(spec, 3);
    const std::int64_t half =
        spec.start_timestamp + std::int64_t{spec.span_days} * 86400 / 2;

    // Per (hub, social venue): visits in each half.
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> visits;
    const std::string last_hub = "u0007";
    const std::string first_plain = data.locations[spec.num_social_venues].location_id;
    for (const CheckIn& c : data.checkins) {
        if (c.user_id > last_hub || c.location_id >= first_plain) continue;
        auto& cell = visits[{c.user_id, c.location_id}];
        (c.timestamp < half ? cell.first : cell.second) += 1;
    }

    // Each hub defers floor(0.5 * 6) = 3 venues: those get second-half
    // visits only. With 200 visits per user the late pairs are visible.
    int late_pairs = 0;
    for (const auto& [key, cell] : visits) {
        if (cell.first == 0 && cell.second > 0) ++late_pairs;
    }
    CHECK(late_pairs >= 8 * 3 - 4); // allow a few empty cells by chance
    CHECK(late_pairs <= 8 * 3);
}

TEST_SUITE_END();
