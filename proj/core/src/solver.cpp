#include "locsoc/solver.hpp"

#include <algorithm>
#include <cmath>

namespace locsoc {

void SolverConfig::validate() const {
    if (alpha < 0.0 || alpha > 1.0) {
        throw InputError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    if (!(tolerance > 0.0)) {
        throw InputError("tolerance must be positive, got " + std::to_string(tolerance));
    }
    if (max_iterations == 0) throw InputError("max_iterations must be at least 1");
}

ColumnStochasticMatrix ColumnStochasticMatrix::from_columns(std::uint32_t rows,
                                                            std::vector<Column> columns,
                                                            ZeroColumnPolicy policy) {
    ColumnStochasticMatrix m;
    m.rows_ = rows;
    m.col_ptr_.reserve(columns.size() + 1);
    for (std::uint32_t j = 0; j < columns.size(); ++j) {
        Column& col = columns[j];
        std::sort(col.begin(), col.end());
        double sum = 0.0;
        for (const auto& [row, value] : col) sum += value;
        if (sum > 0.0) {
            for (const auto& [row, value] : col) {
                if (value == 0.0) continue;
                m.row_idx_.push_back(row);
                m.values_.push_back(value / sum);
            }
        } else {
            switch (policy) {
            case ZeroColumnPolicy::Uniform:
                m.uniform_cols_.push_back(j);
                break;
            case ZeroColumnPolicy::SelfLoop:
                if (j >= rows) {
                    throw InputError("self-loop policy: column " + std::to_string(j) +
                                     " has no diagonal entry in a " + std::to_string(rows) +
                                     "-row operator");
                }
                m.row_idx_.push_back(j);
                m.values_.push_back(1.0);
                break;
            case ZeroColumnPolicy::DropNode:
                throw InputError("drop-node policy: column " + std::to_string(j) +
                                 " sums to zero");
            }
        }
        m.col_ptr_.push_back(m.row_idx_.size());
    }
    return m;
}

void ColumnStochasticMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    const std::uint32_t n_cols = cols();
    for (std::uint32_t j = 0; j < n_cols; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
            y[row_idx_[k]] += values_[k] * xj;
        }
    }
    if (!uniform_cols_.empty() && rows_ > 0) {
        double dangling = 0.0;
        for (std::uint32_t j : uniform_cols_) dangling += x[j];
        const double share = dangling / static_cast<double>(rows_);
        for (double& v : y) v += share;
    }
}

double ColumnStochasticMatrix::coefficient(std::uint32_t row, std::uint32_t col) const {
    if (std::binary_search(uniform_cols_.begin(), uniform_cols_.end(), col)) {
        return 1.0 / static_cast<double>(rows_);
    }
    for (std::size_t k = col_ptr_[col]; k < col_ptr_[col + 1]; ++k) {
        if (row_idx_[k] == row) return values_[k];
    }
    return 0.0;
}

namespace {

std::vector<ColumnStochasticMatrix::Column> social_columns(const SocialNetwork& social) {
    std::vector<ColumnStochasticMatrix::Column> columns(social.user_count());
    for (std::uint32_t j = 0; j < social.user_count(); ++j) {
        for (std::uint32_t i : social.neighbors[j]) columns[j].emplace_back(i, 1.0);
    }
    return columns;
}

void check_zero_columns(const std::vector<ColumnStochasticMatrix::Column>& columns,
                        std::span<const std::string> tokens, const char* what,
                        ZeroColumnPolicy policy) {
    if (policy != ZeroColumnPolicy::DropNode) return;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].empty()) {
            throw InputError(std::string("drop-node policy: ") + what + " '" + tokens[j] +
                             "' has no outgoing mass");
        }
    }
}

} // namespace

StochasticOperators normalize(const SocialNetwork& social, const UserLocationNetwork& ul,
                              ZeroColumnPolicy policy) {
    if (social.users != ul.users) {
        throw InputError("normalize: the two networks disagree on user ordering");
    }
    const auto n_users = static_cast<std::uint32_t>(ul.user_count());
    const auto n_locations = static_cast<std::uint32_t>(ul.location_count());

    auto x_cols = social_columns(social);
    check_zero_columns(x_cols, social.users, "user", policy);

    // Ybar: |U| x |L|, column j holds visitors of location j.
    std::vector<ColumnStochasticMatrix::Column> y_cols(n_locations);
    for (std::uint32_t j = 0; j < n_locations; ++j) {
        for (auto [user, count] : ul.location_visits[j]) {
            y_cols[j].emplace_back(user, static_cast<double>(count));
        }
    }
    check_zero_columns(y_cols, ul.locations, "location", policy);

    // YTbar: |L| x |U|, column i holds the locations user i visits.
    std::vector<ColumnStochasticMatrix::Column> yt_cols(n_users);
    for (std::uint32_t i = 0; i < n_users; ++i) {
        for (auto [loc, count] : ul.user_visits[i]) {
            yt_cols[i].emplace_back(loc, static_cast<double>(count));
        }
    }
    check_zero_columns(yt_cols, ul.users, "user", policy);

    StochasticOperators ops;
    ops.social = ColumnStochasticMatrix::from_columns(n_users, std::move(x_cols), policy);
    ops.user_from_location =
        ColumnStochasticMatrix::from_columns(n_users, std::move(y_cols), policy);
    ops.location_from_user =
        ColumnStochasticMatrix::from_columns(n_locations, std::move(yt_cols), policy);
    ops.policy = policy;
    return ops;
}

SolveResult solve(const StochasticOperators& ops, const SolverConfig& config) {
    config.validate();
    const std::uint32_t n_users = ops.social.rows();
    const std::uint32_t n_locations = ops.location_from_user.rows();
    if (n_users == 0 || n_locations == 0) {
        throw InputError("solve: operators over an empty user or location set");
    }

    std::vector<double> eta(n_users, 1.0 / n_users);
    std::vector<double> kappa(n_locations, 1.0 / n_locations);
    std::vector<double> eta_social(n_users);
    std::vector<double> eta_visits(n_users);
    std::vector<double> kappa_next(n_locations);

    SolveResult result;
    result.trace.mass_conserving_policy = ops.policy == ZeroColumnPolicy::Uniform;

    bool converged = false;
    std::uint32_t sweeps = 0;
    while (sweeps < config.max_iterations && !converged) {
        ++sweeps;

        ops.social.multiply(eta, eta_social);
        ops.user_from_location.multiply(kappa, eta_visits);
        for (std::uint32_t i = 0; i < n_users; ++i) {
            eta[i] = config.alpha * eta_social[i] + (1.0 - config.alpha) * eta_visits[i];
        }
        ops.location_from_user.multiply(eta, kappa_next);

        double max_diff = 0.0;
        double eta_sum = 0.0;
        double kappa_sum = 0.0;
        for (double v : eta) eta_sum += v;
        for (std::uint32_t j = 0; j < n_locations; ++j) {
            max_diff = std::max(max_diff, std::abs(kappa_next[j] - kappa[j]));
            kappa_sum += kappa_next[j];
        }
        kappa.swap(kappa_next);

        if (!std::isfinite(max_diff) || !std::isfinite(eta_sum) ||
            !std::isfinite(kappa_sum)) {
            throw NumericError("solve: non-finite value at sweep " + std::to_string(sweeps));
        }
        result.trace.kappa_max_diff.push_back(max_diff);
        result.trace.eta_sum.push_back(eta_sum);
        result.trace.kappa_sum.push_back(kappa_sum);

        converged = max_diff < config.tolerance;
    }

    result.sociality.values = std::move(kappa);
    result.sociality.iterations_used = sweeps;
    result.sociality.converged = converged;
    result.influence.values = std::move(eta);
    return result;
}

std::vector<std::pair<std::string, double>> rank(std::span<const double> scores,
                                                 std::span<const std::string> tokens,
                                                 std::size_t k) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) out.emplace_back(tokens[i], scores[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (k < out.size()) out.resize(k);
    return out;
}

} // namespace locsoc
