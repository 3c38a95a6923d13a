// Benchmark-surface tests: reference rows, gas table reproduction at small
// scale, latency model shape, CSV shape.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "b5groam/bench.hpp"

using namespace b5g;

TEST_CASE("reference backends return the shipped rows labeled source=paper") {
    BenchProveRow plonk = bench_prove("plonk", 1);
    CHECK(plonk.generation_time_s == doctest::Approx(0.75));
    CHECK(plonk.generation_memory_mb == doctest::Approx(310.0));
    CHECK(plonk.verification_gas == 270000);
    CHECK(plonk.source == "paper");

    BenchProveRow uh = bench_prove("ultrahonk", 1);
    CHECK(uh.generation_time_s == doctest::Approx(0.17));
    CHECK(uh.generation_memory_mb == doctest::Approx(90.0));
    CHECK(uh.verification_gas == 380000);
    CHECK(uh.source == "paper");

    CHECK_THROWS_AS(bench_prove("stark", 1), B5gError);
}

TEST_CASE("groth16 row is measured in a subprocess") {
    BenchProveRow row = bench_prove("groth16", 3);
    CHECK(row.source == "measured");
    CHECK(row.generation_time_s > 0.0);
    CHECK(row.generation_memory_mb > 1.0);
    CHECK(row.verification_gas == 230000);
}

TEST_CASE("single-batch workload reproduces the reference row exactly") {
    auto rows = bench_layers({60}, {60});
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];
    CHECK(r.batches == 1);
    CHECK(r.commit_gas == 205907);
    CHECK(r.prove_gas == 83676);
    CHECK(r.execute_gas == 99166);
    CHECK(r.total_l2_gas == 388749);
    CHECK(r.total_l1_gas == 15636180);
    CHECK(r.reduction_pct > 96.0);
}

TEST_CASE("break-even: a single settlement is cheaper on L1") {
    auto rows = bench_layers({1}, {1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].total_l2_gas == 388749);
    CHECK(rows[0].total_l1_gas == 260603);
    CHECK(rows[0].reduction_pct < 0.0);
}

TEST_CASE("latency stays flat at capacity and throughput approaches the cap") {
    auto rows = bench_latency({100, 400}, 100.0, 0.0, 0.1);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.median_latency_s == doctest::Approx(0.11).epsilon(1e-6));
        CHECK(r.achieved_throughput_tps <= 100.0);
        CHECK(r.achieved_throughput_tps > 90.0);
    }
    CHECK(rows[1].achieved_throughput_tps > rows[0].achieved_throughput_tps);
}

TEST_CASE("overload arrivals grow the median latency roughly linearly") {
    auto rows = bench_latency({100, 200}, 100.0, 200.0, 0.1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].median_latency_s > 0.2);
    double growth = rows[1].median_latency_s / rows[0].median_latency_s;
    CHECK(growth == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("csv output carries the expected headers") {
    CHECK(prove_rows_csv({}).substr(0, 7) == "backend");
    CHECK(layers_rows_csv({}).substr(0, 9) == "total_txs");
    CHECK(latency_rows_csv({}).substr(0, 4) == "load");
}
