#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "levyhit/error.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/oracle.hpp"
#include "reference_values.hpp"

using namespace levyhit;

TEST_CASE("inversion engines on known transforms") {
    // 1/(s+1) <-> e^{-t}
    auto f = [](auto s) { return 1.0 / (s + 1.0); };
    CHECK(laplace::talbot(f, 2.0, 20) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(laplace::gaver_stehfest([](double s) { return 1.0 / (s + 1.0); }, 2.0, 14) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-5));
    CHECK_THROWS_AS(laplace::talbot(f, 0.0, 20), ArgumentError);
}

TEST_CASE("point tail: brownian closed form") {
    auto bm = SymbolSpec::brownian();
    CHECK(laplace_point_tail(bm, 1.0, 1.0) == doctest::Approx(ref::brownian_tail_1_1).epsilon(1e-9));
    std::vector<double> xs = {0.1, 0.9, 2.7};
    auto v = laplace_point_tail(bm, xs, 0.4);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(std::abs(v[i] - std::erf(xs[i] / (2.0 * std::sqrt(0.4)))) < 1e-8);
    CHECK(laplace_point_tail(bm, 0.0, 1.0) == 0.0);
}

TEST_CASE("point tail: other exponents") {
    CHECK(laplace_point_tail(SymbolSpec::stable(1.5), 1.0, 1.0) ==
          doctest::Approx(ref::stable15_point_tail_1_1).epsilon(1e-7));
    CHECK(laplace_point_tail(SymbolSpec::cauchy_plus_bm(), 1.0, 1.0) ==
          doctest::Approx(ref::cauchy_bm_point_tail_1_1).epsilon(1e-7));
}

TEST_CASE("free transition density") {
    auto st = SymbolSpec::stable(1.5);
    CHECK(heat_kernel_free(st, 1.0, 1.0) == doctest::Approx(ref::stable15_density_1_1).epsilon(1e-10));
    CHECK(heat_kernel_cdf(st, 1.0, 2.0) == doctest::Approx(ref::stable15_cdf_1_2).epsilon(1e-10));
    // brownian: N(0, 2t)
    const double t = 0.5, x = 0.3;
    CHECK(heat_kernel_free(SymbolSpec::brownian(), x, t) ==
          doctest::Approx(std::exp(-x * x / (4 * t)) / std::sqrt(4 * M_PI * t)).epsilon(1e-10));
}

TEST_CASE("Monte Carlo streams do not depend on the worker count") {
    auto st = SymbolSpec::stable(1.5);
    McConfig mc;
    mc.n_paths = 3000;
    mc.h = 1e-2;
    mc.seed = 11;
    std::vector<double> xs = {1.5, 3.0}, ts = {0.5, 1.0};
    mc.threads = 1;
    auto a = simulate_hitting_grid(st, xs, 1.0, ts, mc);
    mc.threads = 3;
    auto b = simulate_hitting_grid(st, xs, 1.0, ts, mc);
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].fine.estimate == b.runs[i].fine.estimate);
        CHECK(a.runs[i].coarse.estimate == b.runs[i].coarse.estimate);
    }
    // more frequent observation can only find more hits
    for (const auto& r : a.runs) CHECK(r.fine.estimate <= r.coarse.estimate);
    CHECK(path_rng(3, 7)() == path_rng(3, 7)());
    CHECK(path_rng(3, 7)() != path_rng(3, 8)());
}

TEST_CASE("skeletons refuse point targets") {
    McConfig mc;
    mc.n_paths = 10;
    CHECK_THROWS_AS(simulate_hitting(SymbolSpec::stable(1.5), 1.0, 0.0, 1.0, mc), ArgumentError);
    CHECK_THROWS_AS(simulate_hitting(SymbolSpec::stable(1.5), 0.5, 1.0, 1.0, mc), ArgumentError);
    mc.n_paths = 0;
    CHECK_THROWS_AS(mc.validate(), ArgumentError);
}

TEST_CASE("brownian interval tail by simulation") {
    McConfig mc;
    mc.n_paths = 20000;
    mc.h = 1e-3;
    mc.seed = 3;
    auto r = simulate_hitting(SymbolSpec::brownian(), 2.0, 1.0, 1.0, mc);
    const double exact = std::erf(0.5);
    CHECK(std::abs(r.fine.estimate - exact) <= 4.0 * r.fine.std_error + r.bias_bar);
}

TEST_CASE("increment samplers") {
    auto st = SymbolSpec::stable(1.5);
    IncrementSampler exact(st, 0.01);
    CHECK(exact.scheme() == McScheme::exact_stable);
    IncrementSampler ar(SymbolSpec::log_perturbed(), 0.01, McScheme::asmussen_rosinski);
    CHECK(ar.eps() > 0.0);
    CHECK(ar.big_jump_rate() > 0.0);
    // empirical CDF of exact increments against the Fourier CDF at a few points
    Rng rng(9);
    std::vector<double> v(40000);
    exact.fill(rng, v);
    std::sort(v.begin(), v.end());
    for (double q : {-0.1, 0.0, 0.05, 0.2}) {
        const double emp = static_cast<double>(std::lower_bound(v.begin(), v.end(), q) - v.begin()) / v.size();
        CHECK(std::abs(emp - heat_kernel_cdf(st, q, 0.01)) < 0.01);
    }
}

TEST_CASE("exit time of brownian motion") {
    McConfig mc;
    mc.n_paths = 4000;
    mc.h = 1e-4;
    auto e = simulate_exit_time(SymbolSpec::brownian(), 0.5, 1.0, mc);
    // E tau_{(0,1)} from 1/2 with generator d^2/dx^2: x(R - x)/2
    CHECK(std::abs(e.estimate - 0.125) < 4.0 * e.std_error + 0.01);
    CHECK_THROWS_AS(simulate_exit_time(SymbolSpec::stable(1.5), 0.5, 1.0, mc), HypothesisError);
}

TEST_CASE("killed density") {
    McConfig mc;
    mc.n_paths = 5000;
    mc.h = 1e-2;
    std::vector<double> ys;
    for (int i = 0; i <= 80; ++i) ys.push_back(1.0 + 0.1 * i);
    auto k = simulate_killed_kernel(SymbolSpec::stable(1.5), 2.0, 1.0, 0.5, ys, mc);
    CHECK(k.bandwidth > 0.0);
    CHECK(k.survival.estimate > 0.0);
    CHECK(k.survival.estimate < 1.0);
    // most surviving mass stays on the starting side
    CHECK(k.mass <= k.survival.estimate * 1.05);
    CHECK(k.mass > 0.5 * k.survival.estimate);
    std::vector<double> inside = {0.0, 0.5};
    auto z = simulate_killed_kernel(SymbolSpec::stable(1.5), 2.0, 1.0, 0.5, inside, mc);
    CHECK(z.density[0] == 0.0);
    CHECK(z.density[1] == 0.0);
}
