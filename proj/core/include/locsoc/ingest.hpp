#ifndef LOCSOC_INGEST_HPP_
#define LOCSOC_INGEST_HPP_

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "locsoc/network.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

/// Records parsed from a CSV stream, with per-row diagnostics for the rows
/// that were skipped.
template <typename T>
struct ParseResult {
    std::vector<T> records;
    std::size_t skipped = 0;
    std::vector<std::string> diagnostics;
};

/// checkins.csv: user_id,location_id,timestamp,lat,lon
ParseResult<CheckIn> parse_checkins(std::istream& in);

/// follows.csv: follower,followee (self-follows are skipped)
ParseResult<FollowEdge> parse_follows(std::istream& in);

/// locations.csv: location_id,name,category,rating,tips,likes,lat,lon
/// (rating/tips/likes may be empty)
ParseResult<LocationMeta> parse_locations(std::istream& in);

struct Networks {
    SocialNetwork social;
    UserLocationNetwork user_location;
};

/// Runs the filtering pipeline and constructs both networks:
///   (a) rank users by distinct-follower count and remove the top
///       ceil(follower_trim_fraction * |users|),
///   (b) keep a friendship edge iff both follow directions exist,
///   (c) iterate the user/location check-in thresholds to a fixed point,
///   (d) keep only edges among surviving users.
/// User order is identical in both returned networks.
Networks build_networks(std::span<const CheckIn> checkins,
                        std::span<const FollowEdge> follows,
                        const FilterConfig& config);

} // namespace locsoc

#endif // LOCSOC_INGEST_HPP_
