#include <doctest.h>

#include <cmath>
#include <random>

#include "levyhit/error.hpp"
#include "levyhit/symbols.hpp"
#include "reference_values.hpp"

using namespace levyhit;

TEST_CASE("closed-form exponents") {
    auto st = SymbolSpec::stable(1.5);
    CHECK(st.psi(2.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
    CHECK(st.psi(-2.0) == st.psi(2.0));
    CHECK(SymbolSpec::brownian().psi(3.0) == doctest::Approx(9.0));
    CHECK(SymbolSpec::brownian(0.5).psi(2.0) == doctest::Approx(2.0));
    CHECK(SymbolSpec::cauchy_plus_bm().psi(2.0) == doctest::Approx(6.0));
    CHECK(SymbolSpec::two_stable(1.2, 1.8).psi(2.0) == doctest::Approx(std::pow(2.0, 1.2) + std::pow(2.0, 1.8)));
    CHECK(st.psi(0.0) == 0.0);
}

TEST_CASE("series and integral exponents match independent sums") {
    auto lp = SymbolSpec::log_perturbed();
    CHECK(lp.psi(1.0) == doctest::Approx(ref::log_perturbed_psi_1).epsilon(1e-10));
    CHECK(lp.psi(30.0) == doctest::Approx(ref::log_perturbed_psi_30).epsilon(1e-10));
    auto at = SymbolSpec::atomic_stablelike(1.5);
    CHECK(at.psi(0.5) == doctest::Approx(ref::atomic15_psi_0p5).epsilon(1e-9));
    CHECK(at.psi(10.0) == doctest::Approx(ref::atomic15_psi_10).epsilon(1e-9));
}

TEST_CASE("tabulated exponent tracks the exact one") {
    auto lp = SymbolSpec::log_perturbed();
    for (double xi : {1e-3, 0.7, 13.0, 4e3}) CHECK(lp.psi_fast(xi) == doctest::Approx(lp.psi(xi)).epsilon(1e-8));
    auto at = SymbolSpec::atomic_stablelike(1.5);
    for (double xi : {0.01, 3.0, 90.0}) CHECK(at.psi_fast(xi) == doctest::Approx(at.psi(xi)).epsilon(1e-9));
    // ripple of the atoms past the exact head, documented at 2e-5
    for (double xi : {2e3, 4760.75, 3e4}) CHECK(at.psi_fast(xi) == doctest::Approx(at.psi(xi)).epsilon(5e-5));
}

TEST_CASE("maximal function and generalized inverse") {
    auto cb = SymbolSpec::cauchy_plus_bm();
    CHECK(cb.psi_star(3.0) == cb.psi(3.0));  // nondecreasing
    CHECK(cb.psi_inverse(6.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(SymbolSpec::stable(1.5).psi_inverse(8.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(SymbolSpec::brownian().psi_inverse(0.0) == 0.0);

    auto at = SymbolSpec::atomic_stablelike(1.5);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e4));
    for (int i = 0; i < 200; ++i) {
        double a = std::exp(u(rng)), b = std::exp(u(rng));
        if (a > b) std::swap(a, b);
        CHECK(at.psi_star(a) <= at.psi_star(b));
        const double v = at.psi_star(a);
        CHECK(at.psi_star(at.psi_inverse(v)) == doctest::Approx(v).epsilon(1e-10));
        CHECK(at.psi_inverse(v) <= a * (1 + 1e-12));
    }
    CHECK_THROWS_AS(at.psi_inverse(-1.0), ArgumentError);
    CHECK_THROWS_AS(at.psi_star(-1.0), ArgumentError);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(SymbolSpec::stable(2.5), ArgumentError);
    CHECK_THROWS_AS(SymbolSpec::stable(0.0), ArgumentError);
    CHECK_THROWS_AS(SymbolSpec::brownian().psi(NAN), ArgumentError);
}

TEST_CASE("point regularity") {
    CHECK(check_point_regularity(SymbolSpec::stable(1.5)).status == Regularity::regular);
    CHECK(check_point_regularity(SymbolSpec::cauchy_plus_bm()).status == Regularity::regular);
    CHECK(check_point_regularity(SymbolSpec::stable(0.8)).status == Regularity::not_regular);
    CHECK(check_point_regularity(SymbolSpec::stable(1.0)).status == Regularity::not_regular);
}

TEST_CASE("scaling certificates") {
    auto st = SymbolSpec::stable(1.5);
    auto w = certify_scaling(st, ScalingKind::wlsc, 1.5);
    CHECK(w.passing);
    CHECK(w.coefficient == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(certify_scaling(st, ScalingKind::wlsc, 1.7).passing);
    CHECK(certify_scaling(SymbolSpec::two_stable(1.2, 1.8), ScalingKind::wusc, 1.8).passing);
}

TEST_CASE("spec files") {
    auto s = parse_spec("[symbol]\nfamily = \"stable\"\nalpha = 1.5\n");
    CHECK(s.name() == SymbolSpec::stable(1.5).name());
    CHECK(s.hash() == SymbolSpec::stable(1.5).hash());
    auto t = parse_spec(R"([symbol]
family = "triplet"
gaussian_coeff = 0.5
[symbol.levy_measure]
kind = "atoms"
atoms = [[1.0, 0.25], [2.0, 0.5]]
)");
    // psi = 0.5 xi^2 + 2 sum m (1 - cos(xi a))
    const double xi = 1.3;
    const double expect = 0.5 * xi * xi + 2 * (0.25 * (1 - std::cos(xi)) + 0.5 * (1 - std::cos(2 * xi)));
    CHECK(t.psi(xi) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(parse_spec(t.canonical()).hash() == t.hash());
    CHECK_THROWS_AS(parse_spec("[symbol]\nfamily = \"nope\"\n"), ArgumentError);
    CHECK_THROWS_AS(parse_spec("[symbol]\nfamily = \"stable\"\n"), ArgumentError);
    CHECK_THROWS_AS(parse_spec("not toml ["), ArgumentError);
}
