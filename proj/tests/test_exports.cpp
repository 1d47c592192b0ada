#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "locsoc/exports.hpp"
#include "locsoc/ingest.hpp"
#include "locsoc/synthetic.hpp"

using namespace locsoc;

TEST_SUITE_BEGIN("exports");

TEST_CASE("score tables carry 12 significant digits") {
    std::ostringstream out;
    const std::vector<std::string> locations{"l1", "l2"};
    const std::vector<double> scores{1.0 / 3.0, 0.25};
    write_sociality_csv(out, locations, scores);
    CHECK(out.str() == "location_id,sociality\n"
                       "l1,0.333333333333\n"
                       "l2,0.25\n");
}

TEST_CASE("histogram and category tables") {
    std::ostringstream hist;
    write_histogram_csv(hist, std::vector<HistogramBin>{{0.0, 0.5, 3}, {0.5, 1.0, 7}});
    CHECK(hist.str() == "bin_low,bin_high,count\n0,0.5,3\n0.5,1,7\n");

    std::ostringstream cats;
    write_categories_csv(cats, std::vector<CategoryRow>{{"park, the", 0.125, 4}});
    CHECK(cats.str() == "category,mean_sociality,count\n\"park, the\",0.125,4\n");
}

TEST_CASE("regression json round-trips through a JSON parser") {
    RegressionResult r;
    r.intercept = 0.01;
    r.rating_coef = 0.002;
    r.r_squared = 0.42;
    r.n_rows = 17;
    std::ostringstream out;
    write_regression_json(out, &r);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["r_squared"] == 0.42);
    CHECK(j["coefficients"]["rating"] == 0.002);
    CHECK(j["n_rows"] == 17);
    CHECK_FALSE(j["degenerate"].get<bool>());

    std::ostringstream marker;
    write_regression_json(marker, nullptr, "insufficient data");
    auto mj = nlohmann::json::parse(marker.str());
    CHECK(mj["insufficient_data"] == true);
}

TEST_CASE("heatmap geojson sums to the grid total") {
    GridHeatmap grid;
    grid.min_latitude = 40.0;
    grid.min_longitude = -74.0;
    grid.cell_size = 0.1;
    grid.n_rows = 2;
    grid.n_cols = 2;
    grid.cells = {0.5, 0.0, 0.25, 0.0};
    grid.total = 0.75;

    std::ostringstream out;
    write_heatmap_geojson(out, grid);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["type"] == "FeatureCollection");
    REQUIRE(j["features"].size() == 2); // empty cells are not emitted
    double total = 0.0;
    for (const auto& feature : j["features"]) {
        total += feature["properties"]["value"].get<double>();
        const auto& ring = feature["geometry"]["coordinates"][0];
        REQUIRE(ring.size() == 5);
        CHECK(ring[0] == ring[4]); // closed polygon
    }
    CHECK(total == doctest::Approx(grid.total).epsilon(1e-12));
}

TEST_CASE("synthetic data survives a write/parse round trip") {
    SyntheticSpec spec;
    spec.num_users = 15;
    spec.num_locations = 8;
    spec.num_hub_users = 3;
    spec.num_social_venues = 2;
    auto data = generate_synthetic(spec, 99);

    std::ostringstream checkins_csv, follows_csv, locations_csv;
    write_checkins_csv(checkins_csv, data.checkins);
    write_follows_csv(follows_csv, data.follows);
    write_locations_csv(locations_csv, data.locations);

    std::istringstream checkins_in(checkins_csv.str());
    auto parsed = parse_checkins(checkins_in);
    CHECK(parsed.skipped == 0);
    REQUIRE(parsed.records.size() == data.checkins.size());
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
        CHECK(parsed.records[i].user_id == data.checkins[i].user_id);
        CHECK(parsed.records[i].location_id == data.checkins[i].location_id);
        CHECK(parsed.records[i].timestamp == data.checkins[i].timestamp);
        CHECK(parsed.records[i].latitude ==
              doctest::Approx(data.checkins[i].latitude).epsilon(1e-9));
    }

    std::istringstream follows_in(follows_csv.str());
    auto follows = parse_follows(follows_in);
    CHECK(follows.skipped == 0);
    CHECK(follows.records.size() == data.follows.size());

    std::istringstream locations_in(locations_csv.str());
    auto locations = parse_locations(locations_in);
    CHECK(locations.skipped == 0);
    REQUIRE(locations.records.size() == data.locations.size());
    CHECK(locations.records[0].rating.has_value());
}

TEST_CASE("writers are deterministic") {
    SyntheticSpec spec;
    spec.num_users = 10;
    spec.num_locations = 5;
    spec.num_hub_users = 2;
    spec.num_social_venues = 1;
    auto data = generate_synthetic(spec, 5);
    std::ostringstream a, b;
    write_checkins_csv(a, data.checkins);
    write_checkins_csv(b, data.checkins);
    CHECK(a.str() == b.str());
}

TEST_SUITE_END();
