#include <doctest.h>

#include <cmath>

#include "levyhit/kernels.hpp"
#include "reference_values.hpp"

using namespace levyhit;

TEST_CASE("kernel K against independent quadrature and closed forms") {
    auto st = SymbolSpec::stable(1.5);
    CHECK(kernel_K(st, 1.0).value == doctest::Approx(ref::stable15_K_1).epsilon(1e-12));
    CHECK(kernel_K(st, 2.5).value == doctest::Approx(ref::stable15_K_2p5).epsilon(1e-12));
    CHECK(kernel_K(SymbolSpec::stable(1.2), 1.0).value == doctest::Approx(ref::stable12_K_1).epsilon(1e-12));
    auto cb = SymbolSpec::cauchy_plus_bm();
    CHECK(kernel_K(cb, 1.0).value == doctest::Approx(ref::cauchy_bm_K_1).epsilon(1e-12));
    CHECK(kernel_K(cb, 10.0).value == doctest::Approx(ref::cauchy_bm_K_10).epsilon(1e-12));
    CHECK(kernel_K(SymbolSpec::brownian(), 0.7).value == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(kernel_K(st, 0.0).value == 0.0);
    CHECK(kernel_K(st, -1.0).value == kernel_K(st, 1.0).value);
}

TEST_CASE("potential densities") {
    auto st = SymbolSpec::stable(1.5);
    CHECK(potential_u_lambda(st, 0.0, 2.0).value == doctest::Approx(ref::stable15_u0_2).epsilon(1e-12));
    CHECK(potential_u_lambda(SymbolSpec::cauchy_plus_bm(), 0.0, 1.0).value ==
          doctest::Approx(ref::cauchy_bm_u0_1).epsilon(1e-12));
    CHECK(kernel_K_lambda(st, 1.0, 3.0).value == doctest::Approx(ref::stable15_Klambda_1_3).epsilon(1e-12));
    // u^l(x) = e^{-sqrt(l)|x|}/(2 sqrt l) for brownian motion
    auto bm = SymbolSpec::brownian();
    for (double x : {0.0, 0.5, 2.0})
        CHECK(potential_u_lambda(bm, x, 4.0).value == doctest::Approx(std::exp(-2.0 * x) / 4.0).epsilon(1e-10));
    CHECK(hitting_time_laplace(bm, 1.5, 4.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-10));
    // K^l = u^l(0) - u^l(x)
    const double x = 0.8, l = 0.3;
    CHECK(kernel_K_lambda(st, x, l).value ==
          doctest::Approx(potential_u_lambda(st, 0.0, l).value - potential_u_lambda(st, x, l).value).epsilon(1e-9));
}

TEST_CASE("complex continuation agrees on the real axis") {
    auto cb = SymbolSpec::cauchy_plus_bm();
    auto z = kernel_K_lambda_complex(cb, 1.2, {0.7, 0.0});
    CHECK(z.real() == doctest::Approx(kernel_K_lambda(cb, 1.2, 0.7).value).epsilon(1e-10));
    CHECK(std::abs(z.imag()) < 1e-14);
    auto u = potential_u0_complex(cb, {0.7, 0.0});
    CHECK(u.real() == doctest::Approx(potential_u_lambda(cb, 0.0, 0.7).value).epsilon(1e-10));
}

TEST_CASE("recurrence and transience") {
    CHECK(transience_kappa(SymbolSpec::stable(1.5)).status == KappaStatus::recurrent);
    CHECK(transience_kappa(SymbolSpec::brownian()).status == KappaStatus::recurrent);
    CHECK(transience_kappa(SymbolSpec::cauchy_plus_bm()).status == KappaStatus::recurrent);
    // psi = |xi|^{1.2} + |xi|^{1.8}: int ds/psi diverges at 0 as well
    CHECK(transience_kappa(SymbolSpec::two_stable(1.2, 1.8)).value == 0.0);
}

TEST_CASE("green function of the punctured line") {
    auto st = SymbolSpec::stable(1.5);
    auto g = green_point_complement(st, 1.0, 2.5);
    // recurrent: G = K(x) + K(y) - K(y - x)
    const double expect = ref::stable15_K_1 + ref::stable15_K_2p5 - kernel_K(st, 1.5).value;
    CHECK(g.value == doctest::Approx(expect).epsilon(1e-10));
    CHECK(green_point_complement(st, 2.5, 1.0).value == doctest::Approx(g.value).epsilon(1e-12));
    CHECK(green_point_complement(st, 0.0, 1.0).value == doctest::Approx(0.0));
    CHECK(g.value <= 2.0 * ref::stable15_K_1);
    // brownian: G(x, y) = 2 min(|x|, |y|)/2 on the same side, 0 across the origin
    auto bm = SymbolSpec::brownian();
    CHECK(green_point_complement(bm, 1.0, 3.0).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(green_point_complement(bm, -1.0, 3.0).value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("kernel tail band contains K") {
    auto cb = SymbolSpec::cauchy_plus_bm();
    for (double x : {0.1, 1.0, 10.0}) {
        auto b = kernel_tail_integral(cb, x, 1.0);
        const double k = kernel_K(cb, x).value;
        CHECK(b.lower <= k);
        CHECK(k <= b.upper);
    }
}
