#ifndef LOCSOC_METRICS_HPP_
#define LOCSOC_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locsoc/network.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

/// Shannon entropy (natural log) of each location's visit distribution over
/// its visitors, aligned to the network's location order.
std::vector<double> location_entropy(const UserLocationNetwork& ul);

struct CategoryRow {
    std::string category;
    double mean_sociality = 0.0;
    std::size_t count = 0;
};

/// Mean sociality per category, sorted by mean descending, ties by category
/// name. Locations without metadata or category fall under "unknown".
std::vector<CategoryRow> category_summary(std::span<const double> scores,
                                          std::span<const std::string> locations,
                                          std::span<const LocationMeta> meta);

struct RegressionResult {
    double intercept = 0.0;
    double rating_coef = 0.0;
    double tips_coef = 0.0;
    double likes_coef = 0.0;
    double r_squared = 0.0;
    std::size_t n_rows = 0;
    bool degenerate = false; // rank-deficient design or constant response
};

/// OLS of sociality on (rating, tips, likes) with intercept, complete-case
/// rows only. Requires at least 5 complete rows. Exact rank deficiency falls
/// back to the minimum-norm solution and sets the degenerate flag.
RegressionResult rating_regression(std::span<const double> scores,
                                   std::span<const std::string> locations,
                                   std::span<const LocationMeta> meta);

struct HistogramBin {
    double low = 0.0;
    double high = 0.0;
    std::size_t count = 0;
};

/// Equal-width bins over [min, max] of the (optionally ln-transformed)
/// values; the right-most bin is closed. All-identical values collapse to a
/// single bin. With log_transform, any value <= 0 is an error listing the
/// offending names (when provided).
std::vector<HistogramBin> histogram(std::span<const double> values, std::uint32_t bins,
                                    bool log_transform,
                                    std::span<const std::string> value_names = {});

/// Row-major grid of per-cell value sums; cells are half-open in both axes,
/// so a point on a boundary belongs to the cell whose lower-left corner it
/// is. The bounding box is the data extent.
struct GridHeatmap {
    double min_latitude = 0.0;
    double min_longitude = 0.0;
    double cell_size = 0.0;
    std::uint32_t n_rows = 0; // latitude direction
    std::uint32_t n_cols = 0; // longitude direction
    std::vector<double> cells;
    std::size_t located_count = 0; // locations that carried coordinates
    double total = 0.0;

    double& at(std::uint32_t row, std::uint32_t col) { return cells[std::size_t{row} * n_cols + col]; }
    double at(std::uint32_t row, std::uint32_t col) const { return cells[std::size_t{row} * n_cols + col]; }
};

GridHeatmap grid_heatmap(std::span<const double> values,
                         std::span<const std::string> locations,
                         std::span<const LocationMeta> meta, double cell_size);

} // namespace locsoc

#endif // LOCSOC_METRICS_HPP_
