#include <doctest.h>

#include <cmath>

#include "levyhit/renewal.hpp"
#include "reference_values.hpp"

using namespace levyhit;

TEST_CASE("ladder exponent") {
    // kappa(xi) = sqrt(psi(xi)) for psi = |xi|^alpha
    CHECK(ladder_exponent(SymbolSpec::stable(1.5), 2.0) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-10));
    CHECK(ladder_exponent(SymbolSpec::brownian(), 3.0) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(ladder_exponent_has_continuation(SymbolSpec::stable(1.5)));
    CHECK_FALSE(ladder_exponent_has_continuation(SymbolSpec::cauchy_plus_bm()));
}

TEST_CASE("renewal function normalization") {
    CHECK(stable_renewal_constant(1.5) == doctest::Approx(ref::stable15_renewal_constant).epsilon(1e-14));
    auto st = SymbolSpec::stable(1.5);
    for (double x : {0.01, 1.0, 50.0})
        CHECK(renewal_V(st, x) == doctest::Approx(ref::stable15_renewal_constant * std::pow(x, 0.75)).epsilon(1e-8));
    for (double x : {0.01, 2.0, 100.0}) CHECK(renewal_V(SymbolSpec::brownian(), x) == doctest::Approx(x).epsilon(1e-8));
    CHECK(renewal_V(st, -1.0) == 0.0);
    CHECK(renewal_V_prime(st, 1.0) == doctest::Approx(0.75 * ref::stable15_renewal_constant).epsilon(1e-8));
}

TEST_CASE("renewal function without a closed-form continuation") {
    auto cb = SymbolSpec::cauchy_plus_bm();
    CHECK(resolve_method(cb, {}) == InversionMethod::gaver_stehfest);
    CHECK(renewal_V(cb, 1.0) == doctest::Approx(ref::cauchy_bm_V_1).epsilon(1e-6));
    InversionConfig cc;
    cc.cross_check = true;
    CHECK_NOTHROW(renewal_V_prime(cb, 1.0, cc));
}

TEST_CASE("renewal profile") {
    const auto& p = cached_profile(SymbolSpec::stable(1.5));
    CHECK(p.valid());
    for (double x : {3e-3, 0.37, 42.0})
        CHECK(p.V(x) == doctest::Approx(ref::stable15_renewal_constant * std::pow(x, 0.75)).epsilon(1e-7));
    // outside the grid: power-law extension
    CHECK(p.V(1e5) == doctest::Approx(ref::stable15_renewal_constant * std::pow(1e5, 0.75)).epsilon(1e-6));
}

TEST_CASE("half-line green function: two routes") {
    for (auto spec : {SymbolSpec::stable(1.5), SymbolSpec::cauchy_plus_bm()}) {
        const auto& p = cached_profile(spec);
        for (auto [x, z] : {std::pair{0.3, 1.0}, std::pair{2.0, 5.0}, std::pair{1.0, 0.5}}) {
            const double a = green_halfline_mass(p, x, z), b = green_halfline_mass_direct(p, x, z);
            CHECK(a == doctest::Approx(b).epsilon(1e-5));
            CHECK(p.V(std::max(z - x, 0.0)) * p.V(x) <= a * (1 + 1e-7));
            CHECK(a <= p.V(x) * p.V(z) * (1 + 1e-7));
        }
    }
    // brownian, V(x) = x: G(x, y) = min(x, y)
    const auto& bm = cached_profile(SymbolSpec::brownian());
    CHECK(green_halfline(bm, 1.0, 3.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("property (H) and the sandwich constant") {
    auto bm = SymbolSpec::brownian();
    auto h = check_property_H(cached_profile(bm));
    CHECK(h.passing);
    CHECK(h.h == doctest::Approx(1.0).epsilon(1e-9));
    auto st = SymbolSpec::stable(1.5);
    auto c = renewal_sandwich_constant(st, cached_profile(st));
    CHECK(c.passing);
    // V sqrt(psi*(1/r)) is the constant 1/Gamma(1.75)
    CHECK(c.c == doctest::Approx(ref::stable15_renewal_constant).epsilon(1e-6));
}
