#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levyhit/error.hpp"
#include "levyhit/hitting.hpp"
#include "levyhit/kernels.hpp"
#include "reference_values.hpp"

using namespace levyhit;

TEST_CASE("explicit constants are consistent with their derivation") {
    ProvenConstants pc;
    const double e = std::numbers::e / (std::numbers::e - 1.0);
    CHECK(pc.tail_upper_tilde >= e / pc.potential_lower_tilde);
    CHECK(pc.tail_upper_explicit >= e / pc.potential_lower_explicit);
    CHECK(pc.tail_upper_optimal >= pc.exit_time + pc.escape_upper);
    CHECK(pc.tail_upper_explicit == doctest::Approx(51.0 * std::pow(std::numbers::pi, 3)));
}

TEST_CASE("point band around the brownian tail") {
    auto bm = SymbolSpec::brownian();
    auto b = point_tail_band(bm, 1.0, 1.0);
    CHECK(b.lower <= ref::brownian_tail_1_1);
    CHECK(ref::brownian_tail_1_1 <= b.upper);
    CHECK(b.alternates.count("upper_explicit") == 1);
    CHECK(b.regime == Regime::point_general);
    bool has_empirical = false;
    for (const auto& c : b.constants_used) has_empirical |= c.provenance == Provenance::empirical;
    CHECK(has_empirical);
    auto far = point_tail_band(bm, 0.01, 100.0);
    CHECK(far.upper < 1.0);
    CHECK(far.lower > 0.0);
}

TEST_CASE("point band modes") {
    auto st = SymbolSpec::stable(1.5);
    PointModeConfig wlsc{PointMode::wlsc, 0.0};
    auto b = point_tail_band(st, 0.5, 3.0, wlsc);
    CHECK(b.regime == Regime::point_wlsc);
    CHECK(b.lower <= b.upper);
    PointModeConfig comp{PointMode::comparable, 1.0};
    CHECK(point_tail_band(st, 0.5, 3.0, comp).regime == Regime::point_comparable);
    CHECK_THROWS_AS(point_tail_band(SymbolSpec::log_perturbed(), 1.0, 1.0, wlsc), HypothesisError);
    CHECK(point_mode_from_string("unimodal") == PointMode::unimodal);
    CHECK_THROWS(point_mode_from_string("bogus"));
}

TEST_CASE("hypothesis certificates") {
    auto c = certify_comparability(SymbolSpec::cauchy_plus_bm());
    CHECK(c.passing);
    CHECK(c.a == doctest::Approx(1.0));
    auto at = certify_comparability(SymbolSpec::atomic_stablelike(1.5));
    CHECK(at.a < 1.0);
    CHECK(wlsc_above_one(SymbolSpec::stable(1.5)).passing);
    CHECK_FALSE(wlsc_above_one(SymbolSpec::cauchy_plus_bm()).passing);
    CHECK(wusc_below_two(SymbolSpec::stable(1.5)).passing);
    CHECK_FALSE(wusc_below_two(SymbolSpec::brownian()).passing);
    CHECK(check_K_monotone(SymbolSpec::stable(1.5)).nondecreasing == Tri::yes);
}

TEST_CASE("optimal radius") {
    auto bm = SymbolSpec::brownian();
    auto o = point_tail_optimal_R(bm, 0.5, 8.0);
    // R K(R) = R^2/2 = t
    CHECK(o.R_t == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(o.bound == doctest::Approx(8.0 * 0.25 / 2.0).epsilon(1e-8));
}

TEST_CASE("exit and escape bounds for brownian motion") {
    auto bm = SymbolSpec::brownian();
    auto b = exit_escape_bounds(bm, 0.25, 1.0);
    CHECK(b.expectation_bound == doctest::Approx(4.0 * 1.0 * 0.125));
    CHECK(b.escape.lower <= 0.25);  // ruin probability x/R
    CHECK(0.25 <= b.escape.upper);
    CHECK(b.escape.regime == Regime::escape);
}

TEST_CASE("interval shape and band") {
    auto st = SymbolSpec::stable(1.5);
    auto s = interval_shape(st, 2.0, 1.0, 0.1);
    CHECK(s.regime == Regime::interval_short_t);
    CHECK(interval_shape(st, 2.0, 1.0, 50.0).regime == Regime::interval_long_t);
    auto b = interval_tail_band(st, 2.0, 1.0, 1.0);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 1.0);
    CHECK_THROWS_AS(interval_tail_band(SymbolSpec::cauchy_plus_bm(), 2.0, 1.0, 1.0), HypothesisError);
}

TEST_CASE("asymptotic constants") {
    CHECK(asymptotic_factor(1.5) == doctest::Approx(ref::asymptotic_factor_1p5).epsilon(1e-14));
    CHECK(asymptotic_factor(2.0) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    auto st = SymbolSpec::stable(1.5);
    auto a = tail_asymptotic(st, 1.0);
    CHECK(a.constant == doctest::Approx(ref::asymptotic_factor_1p5 * ref::stable15_K_1).epsilon(1e-10));
    CHECK_FALSE(a.stochastic);
    // normalizer t psi^{-1}(1/t) = t^{1/3}
    CHECK(asymptotic_normalizer(st, 1e3, 1.5) == doctest::Approx(10.0).epsilon(1e-12));
}
