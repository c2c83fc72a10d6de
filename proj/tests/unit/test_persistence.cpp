#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dvr/errors.hpp"
#include "dvr/filtration.hpp"
#include "dvr/persistence.hpp"
#include "support.hpp"

using namespace dvr;

namespace {

std::string show(const PersistenceDiagram& d) {
    std::ostringstream s;
    for (const auto& p : d.points) s << "(" << p.dim << ", " << p.birth << ", " << p.death << ") ";
    return s.str();
}

FilteredComplex unit_square_vr(int max_dim) {
    const auto cloud = testing::cloud_of(2, {0, 0, 1, 0, 1, 1, 0, 1});
    return vr_filtration(DistanceMatrix::euclidean(cloud), max_dim);
}

FilteredComplex complex_of(std::size_t n, std::vector<std::pair<std::vector<Vertex>, double>> list) {
    FilteredComplex fc;
    fc.num_vertices = n;
    for (auto& [v, value] : list) fc.simplices.push_back({std::move(v), value});
    return fc;
}

}  // namespace

TEST_CASE("order_simplices sorts by value, then dimension, then vertices") {
    SUBCASE("single vertex") {
        const auto fc = complex_of(1, {{{0}, 0.0}});
        CHECK(order_simplices(fc) == std::vector<std::size_t>{0});
    }
    SUBCASE("unit square") {
        const auto fc = unit_square_vr(2);
        const auto order = order_simplices(fc);
        REQUIRE(order.size() == 4 + 6 + 4 + 1);
        std::vector<int> dims;
        std::vector<double> values;
        for (auto i : order) {
            dims.push_back(fc.simplices[i].dim());
            values.push_back(fc.simplices[i].value);
        }
        CHECK(dims == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3});
        for (int i = 4; i < 8; ++i) CHECK(values[i] == 0.5);
        for (int i = 8; i < 15; ++i) CHECK(values[i] == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("ties break by dimension then lexicographically") {
        const auto fc = complex_of(3, {{{1, 2}, 1.0}, {{0}, 0.0}, {{1}, 0.0}, {{2}, 0.0}, {{0, 2}, 1.0}, {{0, 1}, 1.0}});
        const auto order = order_simplices(fc);
        std::vector<std::vector<Vertex>> seq;
        for (auto i : order) seq.push_back(fc.simplices[i].vertices);
        CHECK(seq == std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("invalid complex rejected") {
        const auto fc = complex_of(2, {{{0}, 1.0}, {{1}, 0.0}, {{0, 1}, 0.5}});
        CHECK_THROWS_AS(order_simplices(fc), std::invalid_argument);
    }
}

TEST_CASE("boundary matrix has alternating signs and d+1 entries") {
    const auto fc = unit_square_vr(2);
    const auto order = order_simplices(fc);
    const auto bm = build_boundary_matrix(fc, order, 11);
    for (std::size_t j = 0; j < bm.columns.size(); ++j) {
        const int d = bm.dims[j];
        CHECK(bm.columns[j].size() == static_cast<std::size_t>(d == 0 ? 0 : d + 1));
        for (const auto& e : bm.columns[j]) CHECK((e.coeff == 1 || e.coeff == 10));
    }
    CHECK_THROWS_AS(build_boundary_matrix(fc, order, 12), std::invalid_argument);
}

TEST_CASE("reduce pairs every simplex exactly once") {
    SUBCASE("edge") {
        const auto fc = complex_of(2, {{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 1.0}});
        const auto order = order_simplices(fc);
        const auto red = reduce(build_boundary_matrix(fc, order));
        REQUIRE(red.pairs.size() == 1);
        CHECK(red.pairs[0] == std::pair<std::size_t, std::size_t>{1, 2});
        CHECK(red.essential == std::vector<std::size_t>{0});
    }
    SUBCASE("random complexes") {
        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const auto cloud = testing::random_cloud(rng, 7, 2);
            const auto fc = vr_filtration(DistanceMatrix::euclidean(cloud), 2);
            const auto red = reduce(build_boundary_matrix(fc, order_simplices(fc)));
            CHECK(2 * red.pairs.size() + red.essential.size() == fc.simplices.size());
        }
    }
    CHECK_THROWS_AS(reduce(BoundaryMatrix{}, 4), std::invalid_argument);
}

TEST_CASE("extract_diagram") {
    SUBCASE("single vertex") {
        const auto fc = complex_of(1, {{{0}, 0.0}});
        const auto d = compute_persistence(fc, 1);
        REQUIRE(d.points.size() == 1);
        CHECK(d.points[0] == PersistencePoint{0, 0.0, kInfinity});
    }
    SUBCASE("two points at distance d under VR") {
        const auto cloud = testing::cloud_of(1, {0.0, 3.0});
        const auto d = compute_persistence(vr_filtration(DistanceMatrix::euclidean(cloud), 1), 1);
        REQUIRE(d.points.size() == 2);
        CHECK(d.points[0] == PersistencePoint{0, 0.0, 1.5});
        CHECK(d.points[1] == PersistencePoint{0, 0.0, kInfinity});
    }
    SUBCASE("unit square H1") {
        const auto d = compute_persistence(unit_square_vr(1), 1);
        const auto h1 = d.in_dim(1);
        REQUIRE(h1.size() == 1);
        CHECK(h1[0].birth == 0.5);
        CHECK(std::abs(h1[0].death - std::sqrt(2.0) / 2.0) < 1e-12);
        CHECK(d.count_infinite(0) == 1);
    }
    SUBCASE("zero-persistence pairs are dropped") {
        const auto cloud = testing::cloud_of(2, {0, 0, 2, 0, 1, std::sqrt(3.0)});
        const auto d = compute_persistence(vr_filtration(DistanceMatrix::euclidean(cloud), 1), 1);
        CHECK(d.in_dim(1).empty());  // triangle fills the instant its boundary closes
    }
}

TEST_CASE("betti_at") {
    SUBCASE("4-cycle just above 0.5") {
        const auto fc = unit_square_vr(1);
        CHECK(betti_at(fc, 0.5 + 1e-9, 1) == 1);
        CHECK(betti_at(fc, 0.5 + 1e-9, 0) == 1);
        CHECK(betti_at(fc, 0.75, 1) == 0);
    }
    SUBCASE("full simplex on four vertices") {
        const auto cloud = testing::cloud_of(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1});
        const auto fc = vr_filtration(DistanceMatrix::euclidean(cloud), 3);
        CHECK(betti_at(fc, 10.0, 0) == 1);
        CHECK(betti_at(fc, 10.0, 1) == 0);
        CHECK(betti_at(fc, 10.0, 2) == 0);
    }
    SUBCASE("two disjoint edges") {
        const auto fc = complex_of(4, {{{0}, 0}, {{1}, 0}, {{2}, 0}, {{3}, 0}, {{0, 1}, 1}, {{2, 3}, 1}});
        CHECK(betti_at(fc, 1.0, 0) == 2);
    }
    SUBCASE("oversize input rejected") {
        Rng rng(1);
        const auto cloud = testing::random_cloud(rng, 20, 2);
        const auto fc = vr_filtration(DistanceMatrix::euclidean(cloud), 2);
        CHECK_THROWS_AS(betti_at(fc, 10.0, 1), NumericError);
        CHECK_THROWS_AS(betti_at(fc, 10.0, 1, 4), std::invalid_argument);
    }
}

TEST_CASE("diagrams agree with the rank oracle on small random clouds") {
    Rng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(trial % 4);
        const auto cloud = testing::random_cloud(rng, n, 2);
        const auto fc = vr_filtration(DistanceMatrix::euclidean(cloud), 1);
        const auto dgm = compute_persistence(fc, 1);
        for (const auto& s : fc.simplices)
            for (int d = 0; d <= 1; ++d) CHECK(testing::alive_at(dgm, d, s.value) == betti_at(fc, s.value, d));
    }
}

TEST_CASE("Euler characteristic of a full complex") {
    Rng rng(8);
    const auto cloud = testing::random_cloud(rng, 6, 2);
    const auto fc = vr_filtration(DistanceMatrix::euclidean(cloud), 5);
    long chi_cells = 0, chi_betti = 0;
    for (const auto& s : fc.simplices) chi_cells += (s.dim() % 2 ? -1 : 1);
    for (int d = 0; d <= 5; ++d) chi_betti += (d % 2 ? -1 : 1) * static_cast<long>(betti_at(fc, 1e9, d));
    CHECK(chi_cells == chi_betti);
    CHECK(chi_betti == 1);
}

TEST_CASE("implicit flag reduction matches the explicit boundary reduction") {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 12);
        const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 3);
        const int max_dim = static_cast<int>(rng.uniform() * 3);
        const auto cloud = testing::random_cloud(rng, n, m);
        const auto dist = DistanceMatrix::euclidean(cloud);
        std::optional<double> cap;
        if (trial % 3 == 1) cap = 0.3;
        const int field = trial % 2 ? 2 : 11;

        const auto flag = vr_flag(dist, cap);
        const auto fast = flag_persistence(flag, max_dim, field);
        const auto slow = compute_persistence(expand(flag, max_dim), max_dim, field);
        INFO("trial " << trial << " n=" << n << " max_dim=" << max_dim << "\nfast " << show(fast) << "\nslow " << show(slow));
        CHECK(testing::same_diagram(fast, slow));
    }
}

TEST_CASE("implicit flag reduction handles ties and nonzero vertex values") {
    // Integer-valued KNN filtrations have many equal entry values.
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto cloud = testing::random_cloud(rng, 9, 2);
        const auto flag = knn_flag(cloud);
        const auto fast = flag_persistence(flag, 2);
        const auto slow = compute_persistence(expand(flag, 2), 2);
        INFO("fast " << show(fast) << "\nslow " << show(slow));
        CHECK(testing::same_diagram(fast, slow));
    }
    // Grid points: many exactly equal distances.
    std::vector<double> grid;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) grid.insert(grid.end(), {double(i), double(j)});
    const auto flag = vr_flag(DistanceMatrix::euclidean(testing::cloud_of(2, grid)));
    CHECK(testing::same_diagram(flag_persistence(flag, 2), compute_persistence(expand(flag, 2), 2)));
}

TEST_CASE("implicit flag reduction with disconnected distances") {
    DistanceMatrix d(5);
    d.set(0, 1, 1.0);
    d.set(1, 2, 1.5);
    d.set(0, 2, 2.0);
    d.set(3, 4, 0.5);
    const auto flag = vr_flag(d);
    const auto fast = flag_persistence(flag, 1);
    CHECK(fast.count_infinite(0) == 2);
    CHECK(testing::same_diagram(fast, compute_persistence(expand(flag, 1), 1)));
}

TEST_CASE("field independence on a circle") {
    std::vector<double> coords;
    for (int i = 0; i < 24; ++i) {
        const double t = 2 * M_PI * i / 24;
        coords.insert(coords.end(), {std::cos(t), std::sin(t)});
    }
    const auto flag = vr_flag(DistanceMatrix::euclidean(testing::cloud_of(2, coords)));
    const auto d2 = flag_persistence(flag, 1, 2);
    const auto d3 = flag_persistence(flag, 1, 3);
    const auto d11 = flag_persistence(flag, 1, 11);
    CHECK(testing::same_diagram(d2, d11));
    CHECK(testing::same_diagram(d3, d11));
    CHECK_THROWS_AS(flag_persistence(flag, 1, 9), std::invalid_argument);
}

TEST_CASE("reduction is deterministic") {
    Rng rng(3);
    const auto cloud = testing::random_cloud(rng, 30, 2);
    const auto flag = vr_flag(DistanceMatrix::euclidean(cloud));
    const auto a = flag_persistence(flag, 1);
    const auto b = flag_persistence(flag, 1);
    CHECK(a.points == b.points);
}
