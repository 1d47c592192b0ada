#ifndef LOCSOC_TYPES_HPP_
#define LOCSOC_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace locsoc {

/// Bad data, bad configuration or missing files. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric failure at runtime (divergence, non-finite values). CLI exit code 1.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One (user, location, timestamp) visit record.
struct CheckIn {
    std::string user_id;
    std::string location_id;
    std::int64_t timestamp = 0; // seconds since epoch, UTC
    double latitude = 0.0;
    double longitude = 0.0;
};

/// Venue metadata; rating/tips/likes may be absent in the source data.
struct LocationMeta {
    std::string location_id;
    std::string name;
    std::string category;
    std::optional<double> rating;      // in [1, 10] when present
    std::optional<std::int64_t> tips;  // nonnegative when present
    std::optional<std::int64_t> likes; // nonnegative when present
    double latitude = 0.0;
    double longitude = 0.0;
};

/// A directed follow relation; self-follows are rejected at parse time.
struct FollowEdge {
    std::string follower;
    std::string followee;
};

/// Thresholds of the dataset filtering pipeline.
struct FilterConfig {
    std::uint32_t min_user_checkins = 20;
    std::uint32_t min_location_checkins = 10;
    double follower_trim_fraction = 0.05; // in [0, 1)

    void validate() const {
        if (follower_trim_fraction < 0.0 || follower_trim_fraction >= 1.0) {
            throw InputError("follower_trim_fraction must lie in [0, 1), got " +
                             std::to_string(follower_trim_fraction));
        }
    }
};

} // namespace locsoc

#endif // LOCSOC_TYPES_HPP_
