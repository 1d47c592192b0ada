#include "locsoc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_map>

namespace locsoc {

std::vector<double> location_entropy(const UserLocationNetwork& ul) {
    std::vector<double> out(ul.location_count(), 0.0);
    for (std::uint32_t j = 0; j < ul.location_count(); ++j) {
        const double total = static_cast<double>(ul.location_total(j));
        if (total <= 0.0) {
            throw InputError("location_entropy: location '" + ul.locations[j] +
                             "' has no check-ins");
        }
        double h = 0.0;
        for (auto [user, count] : ul.location_visits[j]) {
            const double p = static_cast<double>(count) / total;
            h -= p * std::log(p);
        }
        out[j] = h;
    }
    return out;
}

std::vector<CategoryRow> category_summary(std::span<const double> scores,
                                          std::span<const std::string> locations,
                                          std::span<const LocationMeta> meta) {
    std::unordered_map<std::string_view, const LocationMeta*> by_id;
    for (const LocationMeta& m : meta) by_id.emplace(m.location_id, &m);

    std::map<std::string, std::pair<double, std::size_t>> sums; // category -> (sum, count)
    for (std::size_t i = 0; i < locations.size(); ++i) {
        auto it = by_id.find(locations[i]);
        std::string category =
            (it != by_id.end() && !it->second->category.empty()) ? it->second->category
                                                                 : "unknown";
        auto& cell = sums[std::move(category)];
        cell.first += scores[i];
        cell.second += 1;
    }

    std::vector<CategoryRow> rows;
    rows.reserve(sums.size());
    for (const auto& [category, cell] : sums) {
        rows.push_back({category, cell.first / static_cast<double>(cell.second), cell.second});
    }
    std::sort(rows.begin(), rows.end(), [](const CategoryRow& a, const CategoryRow& b) {
        if (a.mean_sociality != b.mean_sociality) return a.mean_sociality > b.mean_sociality;
        return a.category < b.category;
    });
    return rows;
}

namespace {

constexpr std::size_t kP = 4; // intercept, rating, tips, likes
using Mat4 = std::array<std::array<double, kP>, kP>;
using Vec4 = std::array<double, kP>;

// Cyclic Jacobi eigendecomposition of a symmetric 4x4 matrix: A = V diag(w) V^T.
void jacobi_eigen(Mat4 a, Vec4& w, Mat4& v) {
    for (std::size_t i = 0; i < kP; ++i) {
        for (std::size_t j = 0; j < kP; ++j) v[i][j] = i == j ? 1.0 : 0.0;
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < kP; ++i) {
        for (std::size_t j = 0; j < kP; ++j) scale += a[i][j] * a[i][j];
    }
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < kP; ++p) {
            for (std::size_t q = p + 1; q < kP; ++q) off += a[p][q] * a[p][q];
        }
        if (off <= scale * 1e-32) break;
        for (std::size_t p = 0; p < kP; ++p) {
            for (std::size_t q = p + 1; q < kP; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < kP; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < kP; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < kP; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (std::size_t i = 0; i < kP; ++i) w[i] = a[i][i];
}

} // namespace

RegressionResult rating_regression(std::span<const double> scores,
                                   std::span<const std::string> locations,
                                   std::span<const LocationMeta> meta) {
    std::unordered_map<std::string_view, const LocationMeta*> by_id;
    for (const LocationMeta& m : meta) by_id.emplace(m.location_id, &m);

    std::vector<Vec4> x; // complete-case design rows
    std::vector<double> y;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        auto it = by_id.find(locations[i]);
        if (it == by_id.end()) continue;
        const LocationMeta& m = *it->second;
        if (!m.rating || !m.tips || !m.likes) continue;
        x.push_back({1.0, *m.rating, static_cast<double>(*m.tips),
                     static_cast<double>(*m.likes)});
        y.push_back(scores[i]);
    }
    if (x.size() < 5) {
        throw InputError("insufficient data: rating regression needs at least 5 complete "
                         "rows, got " +
                         std::to_string(x.size()));
    }

    // Normal equations: beta = pinv(X^T X) X^T y. Eigenvalues below
    // 1e-12 * lambda_max are treated as zero (minimum-norm solution).
    Mat4 xtx{};
    Vec4 xty{};
    for (std::size_t r = 0; r < x.size(); ++r) {
        for (std::size_t i = 0; i < kP; ++i) {
            xty[i] += x[r][i] * y[r];
            for (std::size_t j = 0; j < kP; ++j) xtx[i][j] += x[r][i] * x[r][j];
        }
    }

    Vec4 eigenvalues{};
    Mat4 eigenvectors{};
    jacobi_eigen(xtx, eigenvalues, eigenvectors);
    double lambda_max = 0.0;
    for (double l : eigenvalues) lambda_max = std::max(lambda_max, std::abs(l));
    const double cutoff = lambda_max * 1e-12;

    RegressionResult result;
    Vec4 beta{};
    for (std::size_t e = 0; e < kP; ++e) {
        if (std::abs(eigenvalues[e]) <= cutoff) {
            result.degenerate = true;
            continue;
        }
        double projection = 0.0;
        for (std::size_t i = 0; i < kP; ++i) projection += eigenvectors[i][e] * xty[i];
        projection /= eigenvalues[e];
        for (std::size_t i = 0; i < kP; ++i) beta[i] += eigenvectors[i][e] * projection;
    }

    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        double fit = 0.0;
        for (std::size_t i = 0; i < kP; ++i) fit += x[r][i] * beta[i];
        ss_res += (y[r] - fit) * (y[r] - fit);
        ss_tot += (y[r] - y_mean) * (y[r] - y_mean);
    }

    result.intercept = beta[0];
    result.rating_coef = beta[1];
    result.tips_coef = beta[2];
    result.likes_coef = beta[3];
    result.n_rows = x.size();
    if (ss_tot == 0.0) {
        // Constant response: the fit is exact, define R^2 = 1 and flag it.
        result.r_squared = 1.0;
        result.degenerate = true;
    } else {
        result.r_squared = 1.0 - ss_res / ss_tot;
    }
    return result;
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::uint32_t bins,
                                    bool log_transform,
                                    std::span<const std::string> value_names) {
    if (bins == 0) throw InputError("histogram: bins must be at least 1");
    if (values.empty()) throw InputError("histogram: no values");

    std::vector<double> v(values.begin(), values.end());
    if (log_transform) {
        std::string offenders;
        std::size_t offender_count = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] <= 0.0) {
                ++offender_count;
                if (offender_count <= 8) {
                    if (!offenders.empty()) offenders += ", ";
                    offenders +=
                        i < value_names.size() ? value_names[i] : "#" + std::to_string(i);
                }
            }
        }
        if (offender_count > 0) {
            if (offender_count > 8) {
                offenders += " and " + std::to_string(offender_count - 8) + " more";
            }
            throw InputError("histogram: log transform requires positive values; "
                             "offending locations: " +
                             offenders);
        }
        for (double& x : v) x = std::log(x);
    }

    const auto [min_it, max_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *min_it, hi = *max_it;
    if (lo == hi) {
        return {HistogramBin{lo, hi, v.size()}};
    }

    std::vector<HistogramBin> out(bins);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::uint32_t b = 0; b < bins; ++b) {
        out[b].low = lo + width * b;
        out[b].high = b + 1 == bins ? hi : lo + width * (b + 1);
    }
    for (double x : v) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        if (b >= bins) b = bins - 1; // right-most bin is closed
        ++out[b].count;
    }
    return out;
}

GridHeatmap grid_heatmap(std::span<const double> values,
                         std::span<const std::string> locations,
                         std::span<const LocationMeta> meta, double cell_size) {
    if (!(cell_size > 0.0)) throw InputError("grid_heatmap: cell_size must be positive");
    std::unordered_map<std::string_view, const LocationMeta*> by_id;
    for (const LocationMeta& m : meta) by_id.emplace(m.location_id, &m);

    struct Point {
        double lat, lon, value;
    };
    std::vector<Point> points;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        auto it = by_id.find(locations[i]);
        if (it == by_id.end()) continue;
        points.push_back({it->second->latitude, it->second->longitude, values[i]});
    }
    if (points.empty()) {
        throw InputError("grid_heatmap: no location carries coordinates");
    }

    GridHeatmap grid;
    grid.cell_size = cell_size;
    grid.located_count = points.size();
    double max_lat = points[0].lat, max_lon = points[0].lon;
    grid.min_latitude = points[0].lat;
    grid.min_longitude = points[0].lon;
    for (const Point& p : points) {
        grid.min_latitude = std::min(grid.min_latitude, p.lat);
        grid.min_longitude = std::min(grid.min_longitude, p.lon);
        max_lat = std::max(max_lat, p.lat);
        max_lon = std::max(max_lon, p.lon);
    }
    grid.n_rows = static_cast<std::uint32_t>((max_lat - grid.min_latitude) / cell_size) + 1;
    grid.n_cols = static_cast<std::uint32_t>((max_lon - grid.min_longitude) / cell_size) + 1;
    if (std::size_t{grid.n_rows} * grid.n_cols > std::size_t{50'000'000}) {
        throw InputError("grid_heatmap: cell_size " + std::to_string(cell_size) +
                         " produces an unreasonably large grid");
    }
    grid.cells.assign(std::size_t{grid.n_rows} * grid.n_cols, 0.0);

    for (const Point& p : points) {
        auto row = static_cast<std::uint32_t>((p.lat - grid.min_latitude) / cell_size);
        auto col = static_cast<std::uint32_t>((p.lon - grid.min_longitude) / cell_size);
        grid.at(row, col) += p.value;
        grid.total += p.value;
    }
    return grid;
}

} // namespace locsoc
