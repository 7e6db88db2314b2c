#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhdecho/model.hpp"
#include "mhdecho/toy.hpp"

using namespace mhdecho;

namespace {
constexpr double kPi = std::numbers::pi;

// Small certifying configuration (Lemma regime, but modest xi to keep unit
// tests fast; the full acceptance configuration runs in the acceptance suite).
PhysParams toy_params() { return PhysParams::from_beta(4.0, 0.01, 1e-3); }
} // namespace

TEST_CASE("toy hypotheses flag") {
    PhysParams p = toy_params();
    // xi >= 10 max(1/kappa, k^2/c) = 10 max(100, 4000) = 4e4
    CHECK(evolve_toy(p, 2, 4.0e4, 1e-8).hypotheses_met);
    CHECK_FALSE(evolve_toy(p, 2, 1.0e3, 1e-8).hypotheses_met);
    CHECK_FALSE(evolve_toy(PhysParams::from_beta(2.0, 0.01, 1e-3), 2, 4.0e4, 1e-8)
                    .hypotheses_met); // beta < pi
}

TEST_CASE("c = 0: the k-1 pair stays at zero") {
    PhysParams p(0.05, 0.01, 0.0);
    const auto res = evolve_toy(p, 2, 1.0e3, 1e-9);
    for (const auto& s : res.trajectory) {
        CHECK(s.w_km1 == 0.0);
        CHECK(s.j_km1 == 0.0);
    }
}

TEST_CASE("toy bracket and interior estimates in the Lemma regime") {
    PhysParams p = toy_params();
    const int k = 2;
    const double xi = 4.0e4;
    const auto res = evolve_toy(p, k, xi, 1e-9);
    REQUIRE(res.hypotheses_met);
    const auto& fin = res.terminal();

    const double ceta = p.c * xi / (k * k);
    const double total = std::abs(fin.w_k) + std::abs(fin.w_km1) +
                         p.alpha * k * std::abs(fin.j_k) +
                         p.alpha * (k - 1) * std::abs(fin.j_km1);
    CHECK(total <= 2.0 * kPi * ceta);
    CHECK(std::abs(fin.w_km1) >= 0.5 * kPi * ceta);

    // w_k stays in [1 - pi/beta - slack, 1]; arctan bound with 10% slack
    const double beta = p.beta();
    for (const auto& s : res.trajectory) {
        const double sh = s.t - xi / k;
        const double bound = (std::atan(sh) + kPi / 2.0) / beta;
        CHECK(s.w_k <= 1.0 + 1e-9);
        CHECK(std::abs(s.w_k - 1.0) <= bound * 1.1 + 1e-9);
        CHECK(s.w_k >= 1.0 - kPi / beta - 0.05);
    }
    // alpha k j_k <= c/beta with 10% slack at the interval end (the kernel
    // estimate behind this bound is a terminal-time statement; at the
    // resonance core alpha k j is of order kappa k^2/beta instead)
    CHECK(p.alpha * k * std::abs(fin.j_k) <= p.c / beta * 1.1 + 1e-12);
}

TEST_CASE("w-relation residual is small at default tolerance and grows with it") {
    PhysParams p = toy_params();
    const int k = 2;
    const double xi = 4.0e4;

    const auto fine = evolve_toy(p, k, xi, 1e-10);
    const double r_fine = toy_w_relation_residual(fine, p, k, xi);
    double sup_wk = 0.0;
    for (const auto& s : fine.trajectory) sup_wk = std::max(sup_wk, std::abs(s.w_k));
    CHECK(r_fine <= 1e-4 * sup_wk);

    const auto mid = evolve_toy(p, k, xi, 1e-8);
    const auto coarse = evolve_toy(p, k, xi, 1e-4);
    const double r_mid = toy_w_relation_residual(mid, p, k, xi);
    const double r_coarse = toy_w_relation_residual(coarse, p, k, xi);
    CHECK(r_fine <= r_mid * 1.5 + 1e-15);
    CHECK(r_mid <= r_coarse * 1.5);
    CHECK(r_coarse > r_fine);
}
