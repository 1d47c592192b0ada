#include <benchmark/benchmark.h>

#include "locsoc/ingest.hpp"
#include "locsoc/recommend.hpp"
#include "locsoc/solver.hpp"
#include "locsoc/synthetic.hpp"

namespace {

locsoc::Networks city(std::uint32_t users, std::uint32_t locations) {
    locsoc::SyntheticSpec spec;
    spec.num_users = users;
    spec.num_locations = locations;
    spec.num_hub_users = users / 20;
    spec.num_social_venues = locations / 20;
    spec.visits_per_user = 40;
    auto data = locsoc::generate_synthetic(spec, 1);
    return locsoc::build_networks(data.checkins, data.follows,
                                  {.min_user_checkins = 20,
                                   .min_location_checkins = 10,
                                   .follower_trim_fraction = 0.0});
}

void BM_solve(benchmark::State& state) {
    const auto nets = city(static_cast<std::uint32_t>(state.range(0)),
                           static_cast<std::uint32_t>(state.range(0)) / 2);
    const auto ops = locsoc::normalize(nets.social, nets.user_location,
                                       locsoc::ZeroColumnPolicy::Uniform);
    for (auto _ : state) {
        auto result = locsoc::solve(ops, locsoc::SolverConfig{});
        benchmark::DoNotOptimize(result.sociality.values.data());
    }
}
BENCHMARK(BM_solve)->Arg(200)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_normalize(benchmark::State& state) {
    const auto nets = city(1000, 500);
    for (auto _ : state) {
        auto ops = locsoc::normalize(nets.social, nets.user_location,
                                     locsoc::ZeroColumnPolicy::Uniform);
        benchmark::DoNotOptimize(ops.social.rows());
    }
}
BENCHMARK(BM_normalize)->Unit(benchmark::kMillisecond);

void BM_personalized_walk(benchmark::State& state) {
    const auto nets = city(500, 250);
    const auto graph =
        locsoc::build_walk_graph(nets.user_location, nullptr, locsoc::RwrConfig{});
    std::size_t user = 0;
    for (auto _ : state) {
        auto relevance = locsoc::personalize_and_walk(
            graph, graph.users[user++ % graph.users.size()], locsoc::RwrConfig{});
        benchmark::DoNotOptimize(relevance.data());
    }
}
BENCHMARK(BM_personalized_walk)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
