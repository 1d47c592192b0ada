#include "locsoc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "locsoc/csv.hpp"

namespace locsoc {

namespace {

// Header lookup by name; order in the file does not matter.
std::vector<std::size_t> header_indices(const std::vector<std::string>& header,
                                        std::span<const char* const> required) {
    std::vector<std::size_t> out;
    out.reserve(required.size());
    for (const char* name : required) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw InputError(std::string("missing required column '") + name + "'");
        }
        out.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    return out;
}

bool parse_double(std::string_view text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_int64(std::string_view text, std::int64_t& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

template <typename T, typename RowFn>
ParseResult<T> parse_table(std::istream& in, std::span<const char* const> columns,
                           RowFn&& row_fn) {
    if (!in) throw InputError("unreadable input stream");
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) throw InputError("empty input: header row required");
    auto idx = header_indices(row, columns);

    ParseResult<T> result;
    while (reader.next(row)) {
        std::string problem;
        if (row.size() != columns.size()) {
            problem = "expected " + std::to_string(columns.size()) + " fields, got " +
                      std::to_string(row.size());
        } else {
            T record;
            problem = row_fn(row, idx, record);
            if (problem.empty()) {
                result.records.push_back(std::move(record));
                continue;
            }
        }
        ++result.skipped;
        result.diagnostics.push_back("record " + std::to_string(reader.record_number()) +
                                     " skipped: " + problem);
    }
    if (in.bad()) throw InputError("read failure on input stream");
    return result;
}

} // namespace

ParseResult<CheckIn> parse_checkins(std::istream& in) {
    static constexpr const char* kColumns[] = {"user_id", "location_id", "timestamp", "lat",
                                               "lon"};
    return parse_table<CheckIn>(
        in, kColumns,
        [](const std::vector<std::string>& row, const std::vector<std::size_t>& idx,
           CheckIn& out) -> std::string {
            out.user_id = row[idx[0]];
            out.location_id = row[idx[1]];
            if (out.user_id.empty()) return "empty user_id";
            if (out.location_id.empty()) return "empty location_id";
            if (!parse_int64(row[idx[2]], out.timestamp) || out.timestamp < 0) {
                return "bad timestamp '" + row[idx[2]] + "'";
            }
            if (!parse_double(row[idx[3]], out.latitude) || out.latitude < -90.0 ||
                out.latitude > 90.0) {
                return "latitude out of range '" + row[idx[3]] + "'";
            }
            if (!parse_double(row[idx[4]], out.longitude) || out.longitude < -180.0 ||
                out.longitude > 180.0) {
                return "longitude out of range '" + row[idx[4]] + "'";
            }
            return {};
        });
}

ParseResult<FollowEdge> parse_follows(std::istream& in) {
    static constexpr const char* kColumns[] = {"follower", "followee"};
    return parse_table<FollowEdge>(
        in, kColumns,
        [](const std::vector<std::string>& row, const std::vector<std::size_t>& idx,
           FollowEdge& out) -> std::string {
            out.follower = row[idx[0]];
            out.followee = row[idx[1]];
            if (out.follower.empty() || out.followee.empty()) return "empty user token";
            if (out.follower == out.followee) return "self-follow";
            return {};
        });
}

ParseResult<LocationMeta> parse_locations(std::istream& in) {
    static constexpr const char* kColumns[] = {"location_id", "name", "category", "rating",
                                               "tips", "likes", "lat", "lon"};
    return parse_table<LocationMeta>(
        in, kColumns,
        [](const std::vector<std::string>& row, const std::vector<std::size_t>& idx,
           LocationMeta& out) -> std::string {
            out.location_id = row[idx[0]];
            if (out.location_id.empty()) return "empty location_id";
            out.name = row[idx[1]];
            out.category = row[idx[2]];
            if (!row[idx[3]].empty()) {
                double rating = 0.0;
                if (!parse_double(row[idx[3]], rating) || rating < 1.0 || rating > 10.0) {
                    return "rating out of [1, 10]: '" + row[idx[3]] + "'";
                }
                out.rating = rating;
            }
            for (int f = 0; f < 2; ++f) {
                const std::string& text = row[idx[4 + f]];
                if (text.empty()) continue;
                std::int64_t value = 0;
                if (!parse_int64(text, value) || value < 0) {
                    return std::string("bad ") + (f == 0 ? "tips" : "likes") + " count '" +
                           text + "'";
                }
                (f == 0 ? out.tips : out.likes) = value;
            }
            if (!parse_double(row[idx[6]], out.latitude) || out.latitude < -90.0 ||
                out.latitude > 90.0) {
                return "latitude out of range '" + row[idx[6]] + "'";
            }
            if (!parse_double(row[idx[7]], out.longitude) || out.longitude < -180.0 ||
                out.longitude > 180.0) {
                return "longitude out of range '" + row[idx[7]] + "'";
            }
            return {};
        });
}

Networks build_networks(std::span<const CheckIn> checkins,
                        std::span<const FollowEdge> follows, const FilterConfig& config) {
    config.validate();

    // Population: every user with at least one check-in. Users appearing only
    // in the follow list fail the active threshold by definition.
    std::set<std::string> population;
    for (const CheckIn& c : checkins) population.insert(c.user_id);
    if (population.empty()) {
        throw InputError("empty-after-filtering: no check-ins, so no user can reach the "
                         "min_user_checkins threshold (" +
                         std::to_string(config.min_user_checkins) + ")");
    }

    // (a) Follower trim: rank by distinct-follower count, remove the top
    // ceil(fraction * population); equal counts at the boundary are ordered
    // lexicographically for determinism.
    std::unordered_map<std::string, std::unordered_set<std::string>> followers;
    for (const FollowEdge& e : follows) followers[e.followee].insert(e.follower);

    std::size_t trim_count = static_cast<std::size_t>(
        std::ceil(config.follower_trim_fraction * static_cast<double>(population.size())));
    std::set<std::string> trimmed;
    if (trim_count > 0) {
        std::vector<std::pair<std::size_t, const std::string*>> ranked;
        ranked.reserve(population.size());
        for (const std::string& user : population) {
            auto it = followers.find(user);
            ranked.emplace_back(it == followers.end() ? 0 : it->second.size(), &user);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return *a.second < *b.second;
        });
        for (std::size_t i = 0; i < trim_count && i < ranked.size(); ++i) {
            trimmed.insert(*ranked[i].second);
        }
    }

    // (c) Iterate both check-in thresholds to a fixed point; dropping a
    // location can invalidate a user and vice versa.
    std::map<std::string, std::map<std::string, std::uint32_t>> visits; // user -> loc -> n
    for (const CheckIn& c : checkins) {
        if (trimmed.count(c.user_id)) continue;
        ++visits[c.user_id][c.location_id];
    }

    if (visits.empty()) {
        throw InputError("empty-after-filtering: follower_trim_fraction (" +
                         std::to_string(config.follower_trim_fraction) +
                         ") removed every user with check-ins");
    }

    std::set<std::string> live_users;
    std::set<std::string> live_locations;
    for (const auto& [user, row] : visits) {
        live_users.insert(user);
        for (const auto& [loc, n] : row) live_locations.insert(loc);
    }

    bool changed = true;
    while (changed) {
        changed = false;

        for (auto it = live_users.begin(); it != live_users.end();) {
            std::uint64_t total = 0;
            for (const auto& [loc, n] : visits[*it]) {
                if (live_locations.count(loc)) total += n;
            }
            if (total < config.min_user_checkins) {
                it = live_users.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        if (live_users.empty()) {
            throw InputError(
                "empty-after-filtering: no user meets the min_user_checkins threshold (" +
                std::to_string(config.min_user_checkins) + ")");
        }

        std::map<std::string, std::uint64_t> location_totals;
        for (const std::string& user : live_users) {
            for (const auto& [loc, n] : visits[user]) {
                if (live_locations.count(loc)) location_totals[loc] += n;
            }
        }
        for (auto it = live_locations.begin(); it != live_locations.end();) {
            auto found = location_totals.find(*it);
            std::uint64_t total = found == location_totals.end() ? 0 : found->second;
            if (total < config.min_location_checkins) {
                it = live_locations.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        if (live_locations.empty()) {
            throw InputError(
                "empty-after-filtering: no location meets the min_location_checkins "
                "threshold (" +
                std::to_string(config.min_location_checkins) + ")");
        }
    }

    Networks nets;
    nets.social.users.assign(live_users.begin(), live_users.end());
    nets.user_location.users = nets.social.users;
    nets.user_location.locations.assign(live_locations.begin(), live_locations.end());

    const auto& users = nets.social.users;
    const auto& locations = nets.user_location.locations;
    nets.user_location.user_visits.resize(users.size());
    nets.user_location.location_visits.resize(locations.size());
    for (std::uint32_t ui = 0; ui < users.size(); ++ui) {
        for (const auto& [loc, n] : visits[users[ui]]) {
            auto lj = find_token(locations, loc);
            if (!lj) continue;
            nets.user_location.user_visits[ui].emplace_back(*lj, n);
            nets.user_location.location_visits[*lj].emplace_back(ui, n);
        }
    }
    for (auto& row : nets.user_location.location_visits) {
        std::sort(row.begin(), row.end());
    }

    // (b)/(d) Mutual-follow edges among the survivors only.
    std::set<std::pair<std::uint32_t, std::uint32_t>> directed;
    for (const FollowEdge& e : follows) {
        if (e.follower == e.followee) continue;
        auto a = find_token(users, e.follower);
        auto b = find_token(users, e.followee);
        if (a && b) directed.emplace(*a, *b);
    }
    nets.social.neighbors.resize(users.size());
    for (const auto& [a, b] : directed) {
        if (a < b && directed.count({b, a})) {
            nets.social.neighbors[a].push_back(b);
            nets.social.neighbors[b].push_back(a);
        }
    }
    for (auto& adj : nets.social.neighbors) std::sort(adj.begin(), adj.end());

    return nets;
}

} // namespace locsoc
