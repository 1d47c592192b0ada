#ifndef LOCSOC_EXPORTS_HPP_
#define LOCSOC_EXPORTS_HPP_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "locsoc/friendship.hpp"
#include "locsoc/metrics.hpp"
#include "locsoc/network.hpp"
#include "locsoc/recommend.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

/// Shortest decimal form with 12 significant digits ("%.12g").
std::string format_score(double value);

// Score tables. Scores are printed with 12 significant digits; row order
// follows the token order of the inputs.
void write_sociality_csv(std::ostream& out, std::span<const std::string> locations,
                         std::span<const double> scores);
void write_influence_csv(std::ostream& out, std::span<const std::string> users,
                         std::span<const double> scores);
void write_entropy_csv(std::ostream& out, std::span<const std::string> locations,
                       std::span<const double> entropy);

void write_categories_csv(std::ostream& out, std::span<const CategoryRow> rows);
void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

/// regression.json; pass nullptr for the insufficient-data marker.
void write_regression_json(std::ostream& out, const RegressionResult* result,
                           const std::string& error = {});

/// One polygon feature per nonempty cell with a "value" property.
void write_heatmap_geojson(std::ostream& out, const GridHeatmap& grid);

void write_features_csv(std::ostream& out, const UserLocationNetwork& ul,
                        std::span<const PairExample> pairs,
                        std::span<const double> sociality, std::span<const double> entropy);

void write_eval_json(std::ostream& out, const EvalReport& report, double baseline_auc,
                     std::uint64_t seed);

void write_recommendations_csv(std::ostream& out, std::span<const RecommendationRow> rows);

void write_rec_eval_json(std::ostream& out, const RecReport& report,
                         const RecEvalConfig& config);

// Dataset files (used by the synthetic generator and fixtures).
void write_checkins_csv(std::ostream& out, std::span<const CheckIn> checkins);
void write_follows_csv(std::ostream& out, std::span<const FollowEdge> follows);
void write_locations_csv(std::ostream& out, std::span<const LocationMeta> locations);

const char* weighting_name(RwrWeighting weighting);
const char* feature_mode_name(FeatureMode mode);

} // namespace locsoc

#endif // LOCSOC_EXPORTS_HPP_
