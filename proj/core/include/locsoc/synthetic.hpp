#ifndef LOCSOC_SYNTHETIC_HPP_
#define LOCSOC_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "locsoc/types.hpp"

namespace locsoc {

/// Planted-model parameters for the synthetic city generator. The first
/// `num_hub_users` users are the hubs and the first `num_social_venues`
/// locations are the social venues. With all multipliers at 1 and no hubs,
/// every visit is an i.i.d. uniform draw over venues.
struct SyntheticSpec {
    std::uint32_t num_users = 100;
    std::uint32_t num_locations = 50;
    std::uint32_t num_hub_users = 10;
    std::uint32_t num_social_venues = 5;

    /// Visit-rate multiplier of hub users toward social venues.
    double hub_social_multiplier = 8.0;
    /// Visit-rate multiplier of non-hub users toward social venues.
    double nonhub_social_multiplier = 1.0;

    std::uint32_t visits_per_user = 30;

    double hub_friend_prob = 0.8;
    double background_friend_prob = 0.02;
    /// Probability of a one-directional (non-friend) follow between a
    /// non-friend pair.
    double oneway_follow_prob = 0.01;

    /// Fraction of the social venues each hub adopts only in the second half
    /// of the time span (0 = stationary behavior).
    double hub_adoption_fraction = 0.0;

    std::uint32_t span_days = 60;
    std::int64_t start_timestamp = 1438387200; // 2015-08-01T00:00:00Z

    void validate() const;
};

struct SyntheticData {
    std::vector<CheckIn> checkins;
    std::vector<FollowEdge> follows;
    std::vector<LocationMeta> locations;
};

/// Deterministic for a fixed (spec, seed) pair.
SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

} // namespace locsoc

#endif // LOCSOC_SYNTHETIC_HPP_
