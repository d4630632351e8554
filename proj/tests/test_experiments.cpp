#include "disclab/errors.hpp"
#include "disclab/exact_l2.hpp"
#include "disclab/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace disclab;

TEST_CASE("make_case applies a relative tolerance") {
    CHECK(make_case("eq", 1.0, 1.0).pass);
    CHECK(make_case("tiny", 1.0 - 5e-10, 1.0).pass);
    CHECK_FALSE(make_case("big", 1.0 - 1e-6, 1.0).pass);
    CHECK(make_case("m", 3.0, 1.0).margin == 2.0);
}

TEST_CASE("inequality suite passes on small runs") {
    const std::size_t d1[] = {1};
    const VerdictReport one = inequality_suite(200, d1, 32, 1);
    CHECK(one.pass());
    CHECK(one.cases.size() >= 200);
    const std::size_t d2[] = {2};
    CHECK(inequality_suite(20, d2, 32, 2).pass());
}

TEST_CASE("extreme equals star for the centred singleton") {
    const PointSet p = PointSet::from_1d({0.5});
    CHECK(extreme_l2(p) == doctest::Approx(star_l2(p)).epsilon(1e-15));
}

TEST_CASE("lemma 1 transference") {
    const auto vdc = SequenceGen::van_der_corput();
    const VerdictReport first = lemma1_verify(vdc, 1);
    REQUIRE(first.cases.size() == 1);
    CHECK(first.pass());
    CHECK(first.cases[0].lhs == doctest::Approx(1.0 / std::sqrt(12.0)));
    CHECK(first.cases[0].rhs < 0.0);
    const VerdictReport sixty_four = lemma1_verify(vdc, 64);
    CHECK(sixty_four.pass());
    CHECK(sixty_four.cases[0].margin > 0.0);
    CHECK(lemma1_verify(SequenceGen::halton({2, 3}), 256).pass());
}

TEST_CASE("lemma 1 Monte Carlo variant") {
    const VerdictReport r = lemma1_verify_mc(SequenceGen::van_der_corput(), 16, 1.5, 20'000, 3);
    CHECK(r.pass());
}

TEST_CASE("growth scan rows") {
    const auto vdc = SequenceGen::van_der_corput();
    const std::size_t ns[] = {2, 16, 100};
    const ScanResult r = growth_scan(vdc, Kind::extreme, 2.0, ns);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].rate == doctest::Approx(std::sqrt(std::log(2.0))));
    CHECK(r.rows[1].value == doctest::Approx(extreme_l2(prefix(vdc, 16))));
    CHECK(r.running_max_ratio >= r.running_min_ratio);
    CHECK(r.running_max_ratio > 0.0);
    CHECK_FALSE(r.generic);
    CHECK(growth_scan(SequenceGen::halton({2, 3}), Kind::star, 2.0, ns).generic);
    const std::size_t bad[] = {1};
    CHECK_THROWS_AS(growth_scan(vdc, Kind::star, 2.0, bad), InvalidArgument);
}

TEST_CASE("growth scan at other p") {
    const auto vdc = SequenceGen::van_der_corput();
    const std::size_t ns[] = {8, 32};
    const ScanResult exact = growth_scan(vdc, Kind::star, 3.0, ns);
    CHECK(exact.method == Method::exact_piecewise);
    const ScanResult sup = growth_scan(vdc, Kind::extreme, p_infinity, ns);
    CHECK(sup.rows[1].value >= 1.0);
    const ScanResult mc = growth_scan(SequenceGen::halton({2, 3}), Kind::extreme, 1.5, ns, {5'000, 1});
    CHECK(mc.method == Method::monte_carlo);
}

TEST_CASE("diaphony scan") {
    const std::size_t ns[] = {2, 16, 1024};
    const ScanResult r = diaphony_scan(SequenceGen::van_der_corput(), ns);
    CHECK(r.rows[0].rate == doctest::Approx(std::sqrt(std::log(2.0)) / 2.0));
    CHECK(r.running_max_ratio > 0.0);
}

TEST_CASE("log exponent fit recovers planted exponents") {
    std::vector<ScanRow> rows;
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
        const double l = std::log(static_cast<double>(n));
        rows.push_back({n, l, 1.0, l, l});
    }
    LogFit fit = fit_log_exponent(rows);
    CHECK(fit.alpha == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.residual < 1e-12);
    for (auto& r : rows) {
        r.value = 5.0 * std::sqrt(std::log(static_cast<double>(r.n)));
    }
    fit = fit_log_exponent(rows);
    CHECK(fit.alpha == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-9));
    rows.resize(2);
    CHECK_THROWS_AS(fit_log_exponent(rows), InvalidArgument);
    const std::vector<ScanRow> flat(3, ScanRow{10, 1.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(fit_log_exponent(flat), InvalidArgument);
}

TEST_CASE("vdc star constant on a short scan") {
    const VdcConstantReport r = vdc_star_constant(16);
    CHECK(r.sup_ratio > 0.0);
    CHECK(r.target == doctest::Approx(0.2404491734814));
    CHECK_THROWS_AS(vdc_star_constant(8), InvalidArgument);
}

TEST_CASE("n grid parser") {
    CHECK(parse_n_grid("16..128:geometric") == std::vector<std::size_t>{16, 32, 64, 128});
    CHECK(parse_n_grid("2..10:linear=4") == std::vector<std::size_t>{2, 6, 10});
    CHECK(parse_n_grid("3,5,9") == std::vector<std::size_t>{3, 5, 9});
    CHECK(parse_n_grid("4..6") == std::vector<std::size_t>{4, 5, 6});
    CHECK_THROWS_AS(parse_n_grid("abc"), InvalidArgument);
}
