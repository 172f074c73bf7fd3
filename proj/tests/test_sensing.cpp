#include <doctest.h>

#include "amr/error.hpp"
#include "amr/nonlinear.hpp"
#include "amr/sensing.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <sstream>

using namespace amr;

TEST_CASE("make_plan draws a sorted subset") {
    auto p = make_plan(8192, 2458, 42);
    REQUIRE(p.num_measurements() == 2458);
    CHECK(p.ambient_len() == 8192);
    CHECK(p.seed() == 42);
    auto idx = p.indices();
    CHECK(std::adjacent_find(idx.begin(), idx.end(), [](auto a, auto b) { return a >= b; }) == idx.end());
    CHECK(idx.back() < 8192);
    CHECK(make_plan(8192, 2458, 42) == p);
    CHECK_FALSE(make_plan(8192, 2458, 43) == p);

    auto full = make_plan(50, 50, 1);
    for (std::size_t i = 0; i < 50; ++i) CHECK(full.indices()[i] == i);
    CHECK_THROWS_AS(make_plan(10, 11, 1), ParameterError);
    CHECK_THROWS_AS(make_plan(10, 0, 1), ParameterError);
}

TEST_CASE("every index is included with probability M/L") {
    std::vector<int> hits(100);
    const int plans = 2000;
    for (int s = 0; s < plans; ++s)
    {
        auto plan = make_plan(100, 30, s);
        for (std::size_t i : plan.indices()) ++hits[i];
    }
    for (int h : hits) {
        double f = static_cast<double>(h) / plans;
        CHECK(f > 0.25);
        CHECK(f < 0.35);
    }
}

TEST_CASE("plan construction is validated") {
    CHECK_THROWS_AS(MeasurementPlan(10, {3, 2}), ParameterError);
    CHECK_THROWS_AS(MeasurementPlan(10, {2, 2}), ParameterError);
    CHECK_THROWS_AS(MeasurementPlan(10, {10}), ParameterError);
    CHECK_THROWS_AS(MeasurementPlan(10, {}), ParameterError);
    CHECK_NOTHROW(MeasurementPlan(10, {0, 9}));
}

TEST_CASE("apply_plan gathers") {
    MeasurementPlan p(5, {1, 4});
    std::vector<cplx> z{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}};
    CHECK(apply_plan(p, z) == std::vector<cplx>{{1, 1}, {4, 4}});
    z.pop_back();
    CHECK_THROWS_AS(apply_plan(p, z), DimensionError);
}

TEST_CASE("gather commutes with the Nth power") {
    std::mt19937_64 rng(8);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t len = 16 + rng() % 200;
        auto z = oracle::random_vector(len, rng);
        auto plan = make_plan(len, 1 + rng() % len, rng());
        for (int n : {2, 4, 8}) {
            auto a = npt(apply_plan(plan, z), NptOrder{n});
            auto b = apply_plan(plan, npt(z, NptOrder{n}));
            worst = std::max(worst, oracle::rel_err(a, b));
        }
    }
    CHECK(worst <= 1e-15);
}

TEST_CASE("plan text format round-trips") {
    auto p = make_plan(300, 17, 99);
    std::stringstream ss;
    write_plan(ss, p);
    std::string first;
    std::getline(ss, first);
    CHECK(first == "300 17 99");
    ss.seekg(0);
    CHECK(read_plan(ss) == p);

    std::istringstream truncated("10 3 0\n1\n2\n");
    CHECK_THROWS_AS(read_plan(truncated), ParameterError);
    std::istringstream garbage("ten 3 0\n");
    CHECK_THROWS_AS(read_plan(garbage), ParameterError);
    std::istringstream unsorted("10 2 0\n5\n1\n");
    CHECK_THROWS_AS(read_plan(unsorted), ParameterError);
    CHECK_THROWS_AS(load_plan("/nonexistent/dir/plan.txt"), IoError);
}
