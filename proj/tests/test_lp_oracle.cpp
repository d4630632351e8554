#include "disclab/errors.hpp"
#include "disclab/exact_l2.hpp"
#include "disclab/lp_oracle.hpp"
#include "disclab/rng.hpp"
#include "disclab/sequences.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace disclab;

namespace {

bool close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b)); }

bool within_3se(const Estimate& e, double exact) { return std::fabs(e.value - exact) <= 3.0 * e.mc->stderr_value; }

// Brute-force sup of |A([0,t)) - N t| over a fine grid plus one-sided limits at the points.
double brute_linf_star_1d(const PointSet& points) {
    std::vector<double> ts{0.0, 1.0};
    for (double x : points.coords()) {
        ts.push_back(x);
        ts.push_back(std::nextafter(x, 1.0));
    }
    double best = 0.0;
    const double n = static_cast<double>(points.size());
    for (double t : ts) {
        // closed upper end: count of points with x < t, and of x <= t
        double open = 0.0;
        double closed = 0.0;
        for (double x : points.coords()) {
            open += x < t;
            closed += x <= t;
        }
        best = std::max({best, std::fabs(open - n * t), std::fabs(closed - n * t)});
    }
    return best;
}

} // namespace

TEST_CASE("counter rng is reproducible") {
    const CounterRng a(42);
    const CounterRng b(42);
    CHECK(a.bits(1000) == b.bits(1000));
    CHECK(a.uniform(3) < 1.0);
    CHECK(CounterRng(43).bits(0) != a.bits(0));
    CHECK(random_point_set(5, 2, 1) == random_point_set(5, 2, 1));
}

TEST_CASE("monte carlo single point examples") {
    const Estimate extreme = mc_lp(PointSet::from_1d({0.5}), {1'000'000, 1, Kind::extreme, 2.0});
    CHECK(within_3se(extreme, 1.0 / std::sqrt(12.0)));
    const Estimate star = mc_lp(PointSet::from_1d({0.0}), {1'000'000, 2, Kind::star, 2.0});
    CHECK(within_3se(star, 1.0 / std::sqrt(3.0)));
    CHECK(star.method == Method::monte_carlo);
    CHECK(star.mc->samples == 1'000'000);
    CHECK(star.mc->rng == "splitmix64-counter");
}

TEST_CASE("monte carlo matches exact 1d values for other p") {
    const PointSet vdc = prefix(SequenceGen::van_der_corput(), 64);
    const Estimate e = mc_lp(vdc, {1'000'000, 5, Kind::extreme, 3.0});
    CHECK(within_3se(e, exact_lp_1d(vdc, Kind::extreme, 3.0)));
    const PointSet pair = PointSet::from_1d({0.0, 0.5});
    const Estimate s = mc_lp(pair, {1'000'000, 6, Kind::star, 1.0});
    CHECK(within_3se(s, exact_lp_1d(pair, Kind::star, 1.0)));
}

TEST_CASE("monte carlo is bitwise reproducible") {
    const PointSet points = random_point_set(16, 2, 3);
    const Estimate a = mc_lp(points, {50'000, 77, Kind::periodic, 1.5});
    const Estimate b = mc_lp(points, {50'000, 77, Kind::periodic, 1.5});
    CHECK(a.value == b.value);
    CHECK(a.mc->stderr_value == b.mc->stderr_value);
}

TEST_CASE("monte carlo standard error halves as samples quadruple") {
    // stderr scales as samples^-1/2; over 8 doublings allow one ratio outside the band
    const PointSet points = random_point_set(16, 2, 4);
    int misses = 0;
    double previous = 0.0;
    for (int step = 0; step <= 8; ++step) {
        const std::uint64_t samples = 1000ull << step;
        const double se = mc_lp(points, {samples, 100 + static_cast<std::uint64_t>(step), Kind::star, 2.0}).mc->stderr_value;
        if (step > 0) {
            const double ratio = previous / se;
            misses += !(ratio > 1.2 && ratio < 1.7);
        }
        previous = se;
    }
    CHECK(misses <= 1);
}

TEST_CASE("monte carlo argument checks") {
    const PointSet points = PointSet::from_1d({0.5});
    CHECK_THROWS_AS(mc_lp(points, {1000, 0, Kind::star, p_infinity}), InvalidArgument);
    CHECK_THROWS_AS(mc_lp(points, {99, 0, Kind::star, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(mc_lp(points, {1000, 0, Kind::star, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(mc_lp(PointSet(1), {1000, 0, Kind::star, 2.0}), EmptyPointSet);
}

TEST_CASE("exact 1d examples and frozen quadrature values") {
    const PointSet half = PointSet::from_1d({0.5});
    CHECK(close(exact_lp_1d(half, Kind::extreme, 2.0), 1.0 / std::sqrt(12.0), 1e-14));
    CHECK(close(exact_lp_1d(half, Kind::star, 2.0), 1.0 / std::sqrt(12.0), 1e-14));

    const PointSet points = PointSet::from_1d({0.2, 3.0 / 7.0, 5.0 / 6.0});
    struct Row {
        double p, star, extreme;
    };
    const Row rows[] = {
        {1.0, 0.26863945578231292517, 0.18230363891588381384},
        {2.0, 0.31933178531998072694, 0.3170513238422343801},
        {3.0, 0.3572571244341945253, 0.40779248679502371597},
        {1.5, 0.29610228963122008305, 0.25792616682672621807},
    };
    for (const auto& r : rows) {
        CHECK(close(exact_lp_1d(points, Kind::star, r.p), r.star, 1e-13));
        CHECK(close(exact_lp_1d(points, Kind::extreme, r.p), r.extreme, 1e-13));
    }
    CHECK_THROWS_AS(exact_lp_1d(random_point_set(4, 2, 1), Kind::star, 2.0), DimensionMismatch);
    CHECK_THROWS_AS(exact_lp_1d(points, Kind::periodic, 2.0), InvalidArgument);
}

TEST_CASE("exact 1d agrees with the p = 2 closed forms") {
    for (std::size_t n : {1u, 2u, 3u, 16u, 255u, 4096u}) {
        const PointSet points = prefix(SequenceGen::van_der_corput(), n);
        CHECK(close(exact_lp_1d(points, Kind::star, 2.0), star_l2(points), 1e-10));
        CHECK(close(exact_lp_1d(points, Kind::extreme, 2.0), extreme_l2(points), 1e-10));
    }
}

TEST_CASE("star L1 does not exceed star L2 in d = 1") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointSet points = random_point_set(9, 1, seed);
        CHECK(exact_lp_1d(points, Kind::star, 1.0) <= exact_lp_1d(points, Kind::star, 2.0) * (1 + 1e-12));
    }
}

TEST_CASE("linf 1d examples") {
    CHECK(linf_star_1d(PointSet::from_1d({0.125, 0.375, 0.625, 0.875})) == 0.5);
    CHECK(linf_star_1d(PointSet::from_1d({0.0})) == 1.0);
    CHECK(linf_star_1d(PointSet::from_1d({0.0, 0.5})) == 1.0);
    CHECK(linf_extreme_1d(PointSet::from_1d({0.5})) == 1.0);
    CHECK(linf_extreme_1d(PointSet::from_1d({0.0, 0.5})) == 1.0);
}

TEST_CASE("linf star matches brute force") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointSet points = random_point_set(1 + seed % 9, 1, seed);
        CHECK(close(linf_star_1d(points), brute_linf_star_1d(points), 1e-12));
    }
}

TEST_CASE("linf enumeration agrees with the 1d routines") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointSet points = random_point_set(1 + seed % 20, 1, seed + 50);
        CHECK(linf_exact_small(points, Kind::star) == doctest::Approx(linf_star_1d(points)).epsilon(1e-12));
        CHECK(linf_exact_small(points, Kind::extreme) == doctest::Approx(linf_extreme_1d(points)).epsilon(1e-12));
    }
}

TEST_CASE("linf sandwich and examples in d = 2") {
    // boxes holding the point peak at 1 - 1/4 just above it; boxes missing it have volume <= 1/2
    CHECK(linf_exact_small(PointSet::from_rows({{0.5, 0.5}}), Kind::star) == 0.75);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointSet points = random_point_set(8, 2, seed);
        const double star = linf_exact_small(points, Kind::star);
        const double extreme = linf_exact_small(points, Kind::extreme);
        CHECK(star <= extreme + 1e-12);
        CHECK(extreme <= 4.0 * star + 1e-12);
    }
}

TEST_CASE("linf enumeration beats a random box search") {
    const PointSet points = random_point_set(8, 2, 21);
    const double exact = linf_exact_small(points, Kind::extreme);
    const CounterRng rng(8);
    double best = 0.0;
    for (std::uint64_t i = 0; i < 200'000; ++i) {
        const double a0 = rng.uniform(4 * i), a1 = rng.uniform(4 * i + 1);
        const double b0 = rng.uniform(4 * i + 2), b1 = rng.uniform(4 * i + 3);
        const Box box({std::min(a0, b0), std::min(a1, b1)}, {std::max(a0, b0), std::max(a1, b1)});
        best = std::max(best, std::fabs(local_discrepancy(points, box)));
    }
    CHECK(best <= exact + 1e-12);
    CHECK(best >= 0.9 * exact);
}

TEST_CASE("star linf enumeration beats a random anchored box search") {
    for (const PointSet& points : {PointSet::from_rows({{0.5, 0.5}}), random_point_set(8, 2, 22)}) {
        const double exact = linf_exact_small(points, Kind::star);
        const CounterRng rng(9);
        double best = 0.0;
        for (std::uint64_t i = 0; i < 1'000'000; ++i) {
            const Box box = Box::anchored({rng.uniform(2 * i), rng.uniform(2 * i + 1)});
            best = std::max(best, std::fabs(local_discrepancy(points, box)));
        }
        CHECK(best <= exact + 1e-12);
        CHECK(best >= 0.99 * exact);
    }
}

TEST_CASE("linf enumeration guard") {
    CHECK_THROWS_AS(linf_exact_small(random_point_set(65, 2, 1), Kind::star), InvalidArgument);
    CHECK_THROWS_AS(linf_exact_small(random_point_set(4, 3, 1), Kind::star), InvalidArgument);
}
