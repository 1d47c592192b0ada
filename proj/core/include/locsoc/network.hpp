#ifndef LOCSOC_NETWORK_HPP_
#define LOCSOC_NETWORK_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locsoc {

/// Index of `token` in a lexicographically sorted token list.
inline std::optional<std::uint32_t> find_token(std::span<const std::string> tokens,
                                               std::string_view token) {
    auto it = std::lower_bound(tokens.begin(), tokens.end(), token);
    if (it == tokens.end() || *it != token) return std::nullopt;
    return static_cast<std::uint32_t>(it - tokens.begin());
}

/// Undirected, unweighted friendship graph over the active users (matrix X).
/// Users are listed in lexicographic token order; adjacency lists are sorted,
/// symmetric and free of self-loops.
struct SocialNetwork {
    std::vector<std::string> users;
    std::vector<std::vector<std::uint32_t>> neighbors;

    std::size_t user_count() const { return users.size(); }
    std::size_t degree(std::uint32_t user) const { return neighbors[user].size(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& adj : neighbors) twice += adj.size();
        return twice / 2;
    }

    bool has_edge(std::uint32_t a, std::uint32_t b) const {
        const auto& adj = neighbors[a];
        return std::binary_search(adj.begin(), adj.end(), b);
    }
};

/// Weighted bipartite visit-count graph (matrix Y). Kept in both
/// orientations; entries are sorted by index and strictly positive.
struct UserLocationNetwork {
    std::vector<std::string> users; // identical order to SocialNetwork::users
    std::vector<std::string> locations;
    // per user: (location index, visit count)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> user_visits;
    // per location: (user index, visit count)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> location_visits;

    std::size_t user_count() const { return users.size(); }
    std::size_t location_count() const { return locations.size(); }

    std::uint64_t user_total(std::uint32_t user) const {
        std::uint64_t n = 0;
        for (auto [loc, cnt] : user_visits[user]) n += cnt;
        return n;
    }

    std::uint64_t location_total(std::uint32_t location) const {
        std::uint64_t n = 0;
        for (auto [user, cnt] : location_visits[location]) n += cnt;
        return n;
    }

    /// Sorted indices of the distinct locations visited by `user`.
    std::vector<std::uint32_t> visited_locations(std::uint32_t user) const {
        std::vector<std::uint32_t> out;
        out.reserve(user_visits[user].size());
        for (auto [loc, cnt] : user_visits[user]) out.push_back(loc);
        return out;
    }
};

} // namespace locsoc

#endif // LOCSOC_NETWORK_HPP_
