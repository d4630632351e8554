#include "disclab/errors.hpp"
#include "disclab/exact_l2.hpp"
#include "disclab/lp_oracle.hpp"
#include "disclab/parallel.hpp"
#include "disclab/rng.hpp"
#include "disclab/sequences.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace disclab;
using boost::multiprecision::cpp_rational;

namespace {

constexpr double pi = std::numbers::pi;

bool close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b)); }

// Exact rational evaluation of the star and extreme kernels.
cpp_rational exact_squared(const PointSet& points, Kind kind) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    cpp_rational pairs = 0;
    cpp_rational singles = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            cpp_rational prod = 1;
            for (std::size_t j = 0; j < d; ++j) {
                const cpp_rational x(points(k, j));
                const cpp_rational y(points(l, j));
                prod *= kind == Kind::star ? cpp_rational(1 - std::max(x, y)) : cpp_rational(std::min(x, y) - x * y);
            }
            pairs += prod;
        }
        cpp_rational prod = 1;
        for (std::size_t j = 0; j < d; ++j) {
            const cpp_rational x(points(k, j));
            prod *= kind == Kind::star ? cpp_rational((1 - x * x) / 2) : cpp_rational(x * (1 - x) / 2);
        }
        singles += prod;
    }
    cpp_rational constant = 1;
    for (std::size_t j = 0; j < d; ++j) {
        constant /= kind == Kind::star ? 3 : 12;
    }
    const cpp_rational count(static_cast<long long>(n));
    return pairs - 2 * count * singles + count * count * constant;
}

PointSet reflect(const PointSet& points, std::size_t axis) {
    std::vector<double> coords(points.coords().begin(), points.coords().end());
    for (std::size_t k = 0; k < points.size(); ++k) {
        double& c = coords[k * points.dim() + axis];
        c = c == 0.0 ? 0.0 : 1.0 - c;
    }
    return PointSet(points.dim(), std::move(coords));
}

} // namespace

TEST_CASE("single point identities") {
    CHECK(close(star_l2(PointSet::from_1d({0.0})), 1.0 / std::sqrt(3.0), 1e-15));
    CHECK(close(star_l2(PointSet::from_1d({0.5})), 1.0 / std::sqrt(12.0), 1e-15));
    for (double x : {0.0, 0.1, 0.5, 0.73, 0.999}) {
        const PointSet p = PointSet::from_1d({x});
        CHECK(close(extreme_l2(p), 1.0 / std::sqrt(12.0), 1e-14));
        CHECK(close(periodic_l2(p), 1.0 / std::sqrt(6.0), 1e-14));
        CHECK(close(diaphony(p), pi / std::sqrt(3.0), 1e-14));
    }
}

TEST_CASE("two point examples") {
    const PointSet p = PointSet::from_1d({0.0, 0.5});
    CHECK(close(periodic_l2(p), 1.0 / std::sqrt(6.0), 1e-15));
    CHECK(close(diaphony(p), pi / std::sqrt(12.0), 1e-15));
}

TEST_CASE("frozen rational values") {
    struct Case {
        PointSet points;
        cpp_rational star;
        cpp_rational extreme;
    };
    const Case cases[] = {
        {prefix(SequenceGen::van_der_corput(), 16), cpp_rational(1, 3), cpp_rational(1, 12)},
        {PointSet::from_1d({0.0, 0.5, 0.25}), cpp_rational(11, 16), cpp_rational(1, 8)},
        {PointSet::from_1d({0.1, 0.7, 0.3, 0.9, 0.5}), cpp_rational(1, 12), cpp_rational(1, 12)},
        {PointSet::from_1d({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 9.0, 4.0 / 9.0}), cpp_rational(85, 81),
         cpp_rational(17, 108)},
        {PointSet::from_1d({0.2, 3.0 / 7.0, 5.0 / 6.0}), cpp_rational(1499, 14700), cpp_rational(4433, 44100)},
    };
    for (const auto& c : cases) {
        CHECK(close(l2_squared(c.points, Kind::star), static_cast<double>(c.star), 1e-13));
        CHECK(close(l2_squared(c.points, Kind::extreme), static_cast<double>(c.extreme), 1e-13));
    }
    CHECK(close(star_l2(PointSet::from_1d({0.2, 3.0 / 7.0, 5.0 / 6.0})), 0.31933178531998072694, 1e-14));
    CHECK(close(extreme_l2(PointSet::from_1d({0.2, 3.0 / 7.0, 5.0 / 6.0})), 0.31705132384223438010, 1e-14));
}

TEST_CASE("closed forms match exact rational evaluation in d = 2, 3") {
    for (std::size_t d : {2u, 3u}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const PointSet points = random_point_set(12, d, seed);
            for (Kind kind : {Kind::star, Kind::extreme}) {
                const double exact = static_cast<double>(exact_squared(points, kind));
                CHECK(close(l2_squared(points, kind), exact, 1e-13));
            }
        }
    }
}

TEST_CASE("extreme is reflection invariant while star is not") {
    const PointSet points = PointSet::from_rows({{0.1, 0.25}, {0.2, 0.5}, {0.35, 0.8}});
    for (std::size_t axis : {0u, 1u}) {
        const PointSet r = reflect(points, axis);
        CHECK(close(extreme_l2(r), extreme_l2(points), 1e-13));
        CHECK(std::fabs(star_l2(r) - star_l2(points)) > 1e-3);
    }
}

TEST_CASE("periodic and diaphony are translation invariant") {
    const PointSet points = random_point_set(20, 2, 5);
    std::vector<double> shifted(points.coords().begin(), points.coords().end());
    for (std::size_t k = 0; k < points.size(); ++k) {
        shifted[2 * k] = frac(shifted[2 * k] + 0.37);
        shifted[2 * k + 1] = frac(shifted[2 * k + 1] + 0.81);
    }
    const PointSet moved(2, shifted);
    CHECK(close(periodic_l2(moved), periodic_l2(points), 1e-12));
    CHECK(close(diaphony(moved), diaphony(points), 1e-12));
}

TEST_CASE("permutation invariance of points and axes") {
    const PointSet points = random_point_set(15, 3, 9);
    std::vector<double> reversed;
    std::vector<double> swapped;
    for (std::size_t k = points.size(); k-- > 0;) {
        reversed.insert(reversed.end(), points.point(k).begin(), points.point(k).end());
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        swapped.push_back(points(k, 2));
        swapped.push_back(points(k, 0));
        swapped.push_back(points(k, 1));
    }
    for (Kind kind : {Kind::star, Kind::extreme, Kind::periodic, Kind::diaphony}) {
        CHECK(close(l2_discrepancy(PointSet(3, reversed), kind), l2_discrepancy(points, kind), 1e-12));
        CHECK(close(l2_discrepancy(PointSet(3, swapped), kind), l2_discrepancy(points, kind), 1e-12));
    }
}

TEST_CASE("domination at p = 2") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PointSet points = random_point_set(10 + seed, 1 + seed % 4, seed);
        const double extreme = extreme_l2(points);
        CHECK(extreme <= star_l2(points) * (1 + 1e-12));
        CHECK(extreme <= periodic_l2(points) * (1 + 1e-12));
    }
}

TEST_CASE("empty point sets are rejected") {
    const PointSet empty(2);
    CHECK_THROWS_AS(star_l2(empty), EmptyPointSet);
    CHECK_THROWS_AS(diaphony(empty), EmptyPointSet);
}

TEST_CASE("prefix values match separate evaluations") {
    const auto gen = SequenceGen::halton({2, 3});
    const PointSet points = prefix(gen, 70);
    for (Kind kind : {Kind::star, Kind::extreme, Kind::periodic, Kind::diaphony}) {
        const auto values = prefix_l2_values(points, kind);
        REQUIRE(values.size() == 70);
        for (std::size_t n : {1u, 2u, 17u, 64u, 70u}) {
            CHECK(close(values[n - 1], l2_discrepancy(points.prefix(n), kind), 1e-12));
        }
    }
}

TEST_CASE("closed forms keep ten digits at N = 2^16") {
    const PointSet points = prefix(SequenceGen::van_der_corput(), 65536);
    // dyadic prefix: star L^2 = 1/3, extreme L^2 = 1/12 exactly
    CHECK(close(l2_squared(points, Kind::star), 1.0 / 3.0, 1e-10));
    CHECK(close(l2_squared(points, Kind::extreme), 1.0 / 12.0, 1e-10));
    const PointSet odd = prefix(SequenceGen::van_der_corput(), 40000);
    CHECK(close(star_l2(odd), exact_lp_1d(odd, Kind::star, 2.0), 1e-10));
}

TEST_CASE("results do not depend on the thread cap") {
    const PointSet points = random_point_set(3000, 3, 17);
    const std::size_t saved = thread_cap();
    set_thread_cap(1);
    const double a = extreme_l2(points);
    const double b = diaphony(points);
    set_thread_cap(7);
    CHECK(extreme_l2(points) == a);
    CHECK(diaphony(points) == b);
    set_thread_cap(saved);
}

TEST_CASE("truncated diaphony") {
    const TruncatedDiaphony one = diaphony_truncated(PointSet::from_1d({0.0}), 1);
    CHECK(close(one.sum_squared, 2.0, 1e-15));
    CHECK(close(one.value, std::sqrt(2.0), 1e-15));
    CHECK(one.tail_bound >= pi * pi / 3.0 - 2.0);

    const PointSet pair = PointSet::from_1d({0.0, 0.5});
    const TruncatedDiaphony big = diaphony_truncated(pair, 10000);
    const double f2 = pi * pi / 12.0;
    CHECK(big.sum_squared <= f2 + 1e-12);
    CHECK(f2 <= big.sum_squared + big.tail_bound + 1e-12);

    const PointSet points = random_point_set(8, 2, 3);
    double previous = 0.0;
    for (std::size_t h : {1u, 2u, 5u, 20u, 100u}) {
        const TruncatedDiaphony t = diaphony_truncated(points, h);
        CHECK(t.sum_squared >= previous - 1e-12);
        previous = t.sum_squared;
    }
    const TruncatedDiaphony wide = diaphony_truncated(points, 2000);
    const double exact = std::pow(diaphony(points), 2);
    CHECK(wide.sum_squared <= exact + 1e-9);
    CHECK(exact <= wide.sum_squared + wide.tail_bound + 1e-9);
    CHECK_THROWS_AS(diaphony_truncated(points, 0), InvalidArgument);
}
