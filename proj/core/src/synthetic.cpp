#include "locsoc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <string>
#include <vector>

namespace locsoc {

void SyntheticSpec::validate() const {
    if (num_users == 0 || num_locations == 0) {
        throw InputError("synthetic spec: population must be nonempty");
    }
    if (num_hub_users > num_users) {
        throw InputError("synthetic spec: " + std::to_string(num_hub_users) +
                         " hub users exceed the " + std::to_string(num_users) +
                         "-user population");
    }
    if (num_social_venues > num_locations) {
        throw InputError("synthetic spec: " + std::to_string(num_social_venues) +
                         " social venues exceed the " + std::to_string(num_locations) +
                         "-location population");
    }
    if (hub_social_multiplier <= 0.0 || nonhub_social_multiplier <= 0.0) {
        throw InputError("synthetic spec: visit-rate multipliers must be positive");
    }
    for (double p : {hub_friend_prob, background_friend_prob, oneway_follow_prob,
                     hub_adoption_fraction}) {
        if (p < 0.0 || p > 1.0) {
            throw InputError("synthetic spec: probabilities must lie in [0, 1]");
        }
    }
    if (hub_adoption_fraction > 0.0 && num_social_venues >= num_locations) {
        throw InputError("synthetic spec: adoption requires at least one plain venue");
    }
    if (span_days == 0) throw InputError("synthetic spec: span_days must be positive");
}

namespace {

double next_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string padded_token(char prefix, std::uint32_t index, std::uint32_t population) {
    std::size_t width = std::to_string(population > 0 ? population - 1 : 0).size();
    width = std::max<std::size_t>(width, 4);
    std::string digits = std::to_string(index);
    return prefix + std::string(width - digits.size(), '0') + digits;
}

constexpr const char* kSocialCategories[] = {"music_venue", "nightclub", "concert_hall"};
constexpr const char* kPlainCategories[] = {"coffee_shop",          "park",
                                            "convenience_store",    "fast_food_restaurant",
                                            "office",               "pharmacy",
                                            "gym",                  "bookstore"};

} // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);

    SyntheticData data;
    const std::uint32_t n_social = spec.num_social_venues;

    std::vector<std::string> user_tokens(spec.num_users);
    for (std::uint32_t u = 0; u < spec.num_users; ++u) {
        user_tokens[u] = padded_token('u', u, spec.num_users);
    }

    data.locations.resize(spec.num_locations);
    for (std::uint32_t v = 0; v < spec.num_locations; ++v) {
        LocationMeta& meta = data.locations[v];
        meta.location_id = padded_token('l', v, spec.num_locations);
        meta.name = "venue " + std::to_string(v);
        const bool social = v < n_social;
        meta.category = social ? kSocialCategories[v % std::size(kSocialCategories)]
                               : kPlainCategories[v % std::size(kPlainCategories)];
        meta.latitude = 40.55 + 0.40 * next_u01(rng);
        meta.longitude = -74.15 + 0.50 * next_u01(rng);
        double rating = (social ? 7.5 : 5.5) + (next_u01(rng) * 2.0 - 1.0);
        meta.rating = std::round(std::clamp(rating, 1.0, 10.0) * 10.0) / 10.0;
        meta.tips = static_cast<std::int64_t>(next_u01(rng) * 50.0) + (social ? 20 : 0);
        meta.likes = static_cast<std::int64_t>(next_u01(rng) * 200.0) + (social ? 80 : 0);
    }

    // Per hub: the subset of social venues adopted only in the second half.
    const auto n_late = static_cast<std::uint32_t>(
        std::floor(spec.hub_adoption_fraction * static_cast<double>(n_social)));
    std::vector<std::vector<bool>> late(spec.num_hub_users,
                                        std::vector<bool>(n_social, false));
    for (std::uint32_t h = 0; h < spec.num_hub_users; ++h) {
        std::vector<std::uint32_t> venues(n_social);
        for (std::uint32_t s = 0; s < n_social; ++s) venues[s] = s;
        for (std::uint32_t s = 0; s + 1 < n_social; ++s) {
            const auto j = s + static_cast<std::uint32_t>(rng() % (n_social - s));
            std::swap(venues[s], venues[j]);
        }
        for (std::uint32_t s = 0; s < n_late; ++s) late[h][venues[s]] = true;
    }

    const std::int64_t span_seconds = std::int64_t{spec.span_days} * 86400;
    const std::int64_t half = spec.start_timestamp + span_seconds / 2;
    const double n_plain = static_cast<double>(spec.num_locations - n_social);

    for (std::uint32_t u = 0; u < spec.num_users; ++u) {
        const bool hub = u < spec.num_hub_users;
        const double multiplier =
            hub ? spec.hub_social_multiplier : spec.nonhub_social_multiplier;
        for (std::uint32_t visit = 0; visit < spec.visits_per_user; ++visit) {
            const std::int64_t t =
                spec.start_timestamp +
                static_cast<std::int64_t>(next_u01(rng) * static_cast<double>(span_seconds));
            const bool first_half = t < half;

            double social_weight = 0.0;
            for (std::uint32_t s = 0; s < n_social; ++s) {
                if (hub && first_half && late[u][s]) continue;
                social_weight += multiplier;
            }
            const double total = social_weight + n_plain;
            double x = next_u01(rng) * total;

            std::uint32_t venue = spec.num_locations - 1;
            if (x < social_weight) {
                for (std::uint32_t s = 0; s < n_social; ++s) {
                    if (hub && first_half && late[u][s]) continue;
                    x -= multiplier;
                    if (x < 0.0) {
                        venue = s;
                        break;
                    }
                }
            } else {
                auto p = static_cast<std::uint32_t>(x - social_weight);
                if (p >= spec.num_locations - n_social) p = spec.num_locations - n_social - 1;
                venue = n_social + p;
            }

            const LocationMeta& meta = data.locations[venue];
            data.checkins.push_back({user_tokens[u], meta.location_id, t, meta.latitude,
                                     meta.longitude});
        }
    }
    std::sort(data.checkins.begin(), data.checkins.end(),
              [](const CheckIn& a, const CheckIn& b) {
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  if (a.user_id != b.user_id) return a.user_id < b.user_id;
                  return a.location_id < b.location_id;
              });

    for (std::uint32_t i = 0; i < spec.num_users; ++i) {
        for (std::uint32_t j = i + 1; j < spec.num_users; ++j) {
            const bool both_hubs = i < spec.num_hub_users && j < spec.num_hub_users;
            const double friend_prob =
                both_hubs ? spec.hub_friend_prob : spec.background_friend_prob;
            if (next_u01(rng) < friend_prob) {
                data.follows.push_back({user_tokens[i], user_tokens[j]});
                data.follows.push_back({user_tokens[j], user_tokens[i]});
            } else if (next_u01(rng) < spec.oneway_follow_prob) {
                if (rng() & 1) {
                    data.follows.push_back({user_tokens[i], user_tokens[j]});
                } else {
                    data.follows.push_back({user_tokens[j], user_tokens[i]});
                }
            }
        }
    }
    return data;
}

} // namespace locsoc
