#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dvr/datasets.hpp"

using namespace dvr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rng stream is fixed") {
    // First outputs for seed 0: SplitMix64 reference values.
    Rng rng(0);
    CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next_u64() == 0x06C45D188009454FULL);
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("two circles") {
    Rng rng(7);
    const auto cloud = sample_two_circles(rng, 500);
    REQUIRE(cloud.size() == 500);
    const auto& f = *cloud.oracle_density();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        const bool small = p[0] < 3.0;
        const double r = small ? std::hypot(p[0], p[1]) : std::hypot(p[0] - 8.0, p[1]);
        CHECK(std::abs(r - (small ? 1.0 : 5.0)) < 1e-12);
        CHECK(f[i] == (small ? 1.0 / (4 * kPi) : 1.0 / (20 * kPi)));
    }
    Rng big(1);
    const auto many = sample_two_circles(big, 10000);
    std::size_t first = 0;
    for (std::size_t i = 0; i < many.size(); ++i) first += many.point(i)[0] < 3.0;
    CHECK(std::abs(static_cast<double>(first) / 10000.0 - 0.5) < 0.02);
    Rng again(7);
    CHECK(sample_two_circles(again, 500).coords() == cloud.coords());
    CHECK_THROWS_AS(sample_two_circles(rng, 0), std::invalid_argument);
}

TEST_CASE("cassini") {
    CHECK(cassini_radius(0.0, 1.01) == doctest::Approx(std::sqrt(1 + 1.01 * 1.01)).epsilon(1e-14));
    CHECK(cassini_radius(0.0, 1.01) == doctest::Approx(1.42130).epsilon(1e-5));
    CHECK(cassini_radius(kPi / 2, 1.01) == doctest::Approx(0.14177).epsilon(1e-4));
    Rng rng(3);
    const auto cloud = sample_cassini(rng, 200);
    const double e4 = std::pow(1.01, 4);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        const double r2 = p[0] * p[0] + p[1] * p[1];
        const double cos2 = (p[0] * p[0] - p[1] * p[1]) / r2;
        CHECK(std::abs(r2 * r2 - 2 * r2 * cos2 - (e4 - 1)) < 1e-9);
    }
    CHECK_THROWS_AS(sample_cassini(rng, 10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cassini_radius(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("noisy circle") {
    Rng rng(4);
    const auto cloud = sample_noisy_circle(rng, 200, 10);
    REQUIRE(cloud.size() == 210);
    CHECK_FALSE(cloud.oracle_density().has_value());
    for (std::size_t i = 0; i < 200; ++i) CHECK(std::abs(std::hypot(cloud.point(i)[0], cloud.point(i)[1]) - 1) < 1e-12);
    for (std::size_t i = 200; i < 210; ++i)
        for (double c : cloud.point(i)) CHECK(std::abs(c) <= 1.0);
    CHECK(sample_noisy_circle(rng, 5, 0).size() == 5);
}

TEST_CASE("two squares") {
    Rng rng(5);
    const auto cloud = sample_two_squares(rng, 200);
    const auto& f = *cloud.oracle_density();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        const bool sparse = p[0] <= 1.0;
        CHECK(p[1] >= 0.0);
        CHECK(p[1] <= 1.0);
        if (sparse) {
            CHECK(p[0] >= 0.0);
            CHECK(f[i] == 1.0 / 6.0);
        } else {
            CHECK(p[0] >= 1.5);
            CHECK(p[0] <= 2.5);
            CHECK(f[i] == 5.0 / 6.0);
        }
    }
    Rng big(2);
    const auto many = sample_two_squares(big, 10000);
    std::size_t dense = 0;
    for (std::size_t i = 0; i < many.size(); ++i) dense += many.point(i)[0] > 1.25;
    CHECK(std::abs(static_cast<double>(dense) / 10000.0 - 5.0 / 6.0) < 0.02);
}

TEST_CASE("Lorenz system") {
    const auto v = lorenz_vector_field({1, 1, 1});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 26.0);
    CHECK(v[2] == doctest::Approx(-5.0 / 3.0).epsilon(1e-15));
    const double s72 = std::sqrt(72.0);
    for (double c : lorenz_vector_field({s72, s72, 27.0})) CHECK(std::abs(c) < 1e-12);

    const State3 s{1.0, 2.0, 20.0};
    const double h = 2.5e-3;
    const auto one = rk4_step(s, h);
    const auto two = rk4_step(rk4_step(s, h / 2), h / 2);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(one[c] - two[c]) / std::abs(two[c]) < 1e-8);

    const auto traj = integrate_lorenz();
    REQUIRE(traj.states.size() == 1001);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(50.0));
    CHECK(traj.states.front() == State3{1.0, 1.0, 1.0});
    for (const auto& st : traj.states)
        for (double c : st) CHECK(std::abs(c) < 100.0);
    CHECK_THROWS_AS(integrate_lorenz({}, {1, 1, 1}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("delay embedding") {
    const std::vector<double> abc{1.0, 2.0, 3.0};
    const auto e = delay_embedding(abc, 2, 1);
    CHECK(e.coords() == std::vector<double>{1, 2, 2, 3});
    const auto c = delay_embedding(std::vector<double>(6, 4.2), 3, 2);
    CHECK(c.size() == 2);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.point(i)[0] == c.point(i)[2]);
    CHECK_THROWS_AS(delay_embedding(abc, 3, 2), std::invalid_argument);

    const auto lorenz = lorenz_delay_cloud();
    CHECK(lorenz.size() == 1000);
    CHECK(lorenz.ambient_dim() == 2);
    const auto traj = integrate_lorenz();
    CHECK(lorenz.point(10)[0] == traj.states[10][0]);
    CHECK(lorenz.point(10)[1] == traj.states[11][0]);  // lag 0.05
}

TEST_CASE("sample_named") {
    for (auto name : dataset_names()) CHECK(sample_named(name, 1).size() > 0);
    CHECK(sample_named("two-circles", 1).size() == 500);
    CHECK(sample_named("cassini", 1).size() == 200);
    CHECK(sample_named("noisy-circle", 1).size() == 210);
    CHECK(sample_named("lorenz-delay", 1).size() == 1000);
    CHECK_THROWS_AS(sample_named("torus", 1), std::invalid_argument);
}
