#include <doctest.h>

#include <cmath>
#include <random>

#include "levyhit/hitting.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/oracle.hpp"
#include "levyhit/renewal.hpp"

using namespace levyhit;

// Randomized invariants. Fixed seeds; each case draws points log-uniformly.

namespace {

std::vector<SymbolSpec> specs() {
    return {SymbolSpec::brownian(), SymbolSpec::stable(1.5), SymbolSpec::cauchy_plus_bm(),
            SymbolSpec::two_stable(1.2, 1.8)};
}

double log_uniform(std::mt19937_64& g, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(g));
}

}  // namespace

TEST_CASE("symbol: even, psi* dominates and is nondecreasing") {
    std::mt19937_64 g(11);
    for (const auto& s : specs()) {
        CAPTURE(s.name());
        for (int i = 0; i < 200; ++i) {
            double xi = log_uniform(g, 1e-3, 1e3), eta = xi * log_uniform(g, 1.0, 10.0);
            CHECK(s.psi(-xi) == s.psi(xi));
            CHECK(s.psi_star(xi) >= s.psi(xi) * (1 - 1e-12));
            CHECK(s.psi_star(eta) >= s.psi_star(xi) * (1 - 1e-12));
        }
    }
}

TEST_CASE("kernels: K subadditive, K^lambda <= K and decreasing in lambda") {
    std::mt19937_64 g(12);
    for (const auto& s : specs()) {
        CAPTURE(s.name());
        for (int i = 0; i < 25; ++i) {
            double x = log_uniform(g, 1e-2, 1e2), y = log_uniform(g, 1e-2, 1e2);
            double l1 = log_uniform(g, 1e-2, 1e2), l2 = l1 * log_uniform(g, 1.0, 10.0);
            double kx = kernel_K(s, x).value, ky = kernel_K(s, y).value, kxy = kernel_K(s, x + y).value;
            CHECK(kxy <= (kx + ky) * (1 + 1e-9));
            double k1 = kernel_K_lambda(s, x, l1).value, k2 = kernel_K_lambda(s, x, l2).value;
            CHECK(k1 <= kx * (1 + 1e-9));
            CHECK(k2 <= k1 * (1 + 1e-9));
            CHECK(k2 >= 0.0);
        }
    }
}

TEST_CASE("kernels: stable scaling K(cx) = c^{a-1} K(x)") {
    std::mt19937_64 g(13);
    for (double a : {1.2, 1.5, 1.9}) {
        auto s = SymbolSpec::stable(a);
        for (int i = 0; i < 10; ++i) {
            double x = log_uniform(g, 1e-2, 1e2), c = log_uniform(g, 0.1, 10.0);
            CHECK(kernel_K(s, c * x).value == doctest::Approx(std::pow(c, a - 1) * kernel_K(s, x).value).epsilon(1e-9));
        }
    }
}

TEST_CASE("renewal: V increasing and subadditive") {
    std::mt19937_64 g(14);
    for (const auto& s : specs()) {
        CAPTURE(s.name());
        auto p = RenewalProfile::build(s);
        for (int i = 0; i < 200; ++i) {
            double x = log_uniform(g, 1e-3, 1e3), y = log_uniform(g, 1e-3, 1e3);
            CHECK(p.V(x + y) >= p.V(x));
            CHECK(p.V(x + y) <= (p.V(x) + p.V(y)) * (1 + 1e-8));
        }
    }
}

TEST_CASE("point tail: in [0, 1], nonincreasing in t, below the proven upper bound") {
    std::mt19937_64 g(15);
    for (const auto& s : specs()) {
        CAPTURE(s.name());
        for (int i = 0; i < 12; ++i) {
            double x = log_uniform(g, 1e-2, 1e2), t = log_uniform(g, 1e-2, 1e2);
            double p1 = laplace_point_tail(s, x, t), p2 = laplace_point_tail(s, x, 3.0 * t);
            CHECK(p1 >= -1e-9);
            CHECK(p1 <= 1.0 + 1e-9);
            CHECK(p2 <= p1 + 1e-8);
            auto b = point_tail_band(s, x, t);
            CHECK(p1 <= b.upper * (1 + 1e-9));
        }
    }
}

TEST_CASE("monte carlo: a path stream depends only on (seed, index)") {
    auto a = path_rng(9, 17), b = path_rng(9, 17), c = path_rng(9, 18);
    auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}
