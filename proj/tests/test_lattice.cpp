#include <cmath>
#include <vector>

#include "doctest.h"
#include "mhdecho/errors.hpp"
#include "mhdecho/lattice.hpp"
#include "mhdecho/single_mode.hpp"

using namespace mhdecho;

TEST_CASE("all-zero lattice stays zero") {
    PhysParams p(0.1, 0.05, 1e-3);
    auto lat = ModeLattice::zero(30.0, 8, 1.0);
    const auto weight = SpectralWeight::ell2(8);
    evolve_lattice(lat, p, weight, 20.0, {8, 1e-8}, 1e-9);
    for (double v : lat.w) CHECK(v == 0.0);
    for (double v : lat.j) CHECK(v == 0.0);
}

TEST_CASE("c = 0 decouples into single-mode systems") {
    PhysParams p(0.2, 0.04, 0.0);
    const double xi = 30.0;
    const int k_max = 9;
    const int k_pop = 6; // top modes stay empty so the tail monitor is happy
    auto lat = ModeLattice::zero(xi, k_max, 2.0);
    for (int k = 1; k <= k_pop; ++k) {
        lat.w[k] = 1.0 / k;
        lat.j[k] = 0.1 * k;
    }
    const auto weight = SpectralWeight::ell2(k_max);
    const double t_end = 25.0;
    evolve_lattice(lat, p, weight, t_end, {k_max, 1e-8}, 1e-13);
    for (int k = 1; k <= k_pop; ++k) {
        const auto traj =
            evolve_single_mode(ModeIndex(k, xi), p, 1.0 / k, 0.1 * k, t_end, 1e-13, 2.0);
        CHECK(lat.w[k] == doctest::Approx(traj.back().w).epsilon(1e-8));
        CHECK(lat.j[k] == doctest::Approx(traj.back().j).epsilon(1e-8));
    }
}

TEST_CASE("pinned k = 0 mode is enforced and preserved") {
    PhysParams p(0.1, 0.05, 1e-3);
    auto lat = ModeLattice::zero(30.0, 6, 1.0);
    lat.w[0] = 0.5;
    const auto weight = SpectralWeight::ell2(6);
    CHECK_THROWS_AS(evolve_lattice(lat, p, weight, 5.0, {6, 1e-8}, 1e-9), validation_error);
    lat.w[0] = 0.0;
    lat.w[1] = 1.0;
    evolve_lattice(lat, p, weight, 5.0, {6, 1e-8}, 1e-9);
    CHECK(lat.w[0] == 0.0);
    CHECK(lat.j[0] == 0.0);
}

TEST_CASE("large-time bound: norm inflation controlled past 2 xi") {
    // kappa xi^3 >> 1 so that b <= 0 on (2 xi, infty)
    PhysParams p = PhysParams::from_beta(1.0, 0.05, 1e-3);
    const double xi = 20.0;
    const int k_max = 10;
    auto lat = ModeLattice::zero(xi, k_max, 2.0 * xi);
    for (int k = 1; k <= k_max - 3; ++k) {
        lat.w[k] = 1.0;
        lat.j[k] = 0.5;
    }
    const auto weight = SpectralWeight::ell2(k_max);
    const double n0 = x_norm(lat, weight, p);
    double worst = n0;
    evolve_lattice(lat, p, weight, 8.0 * xi, {k_max, 1e-4}, 1e-10,
                   [&](const ModeLattice& s) { worst = std::max(worst, x_norm(s, weight, p)); });
    const double bound = 1.0 / (1.0 - 4.0 * p.c) / (1.0 - 2.0 * p.c * weight.lambda_hat);
    CHECK(worst / n0 <= bound * 1.001);
}

TEST_CASE("truncation robustness: doubling k_max changes results below 1e-6") {
    PhysParams p = PhysParams::from_beta(1.0, 0.2, 1e-3);
    const double xi = 60.0;
    auto run = [&](int k_max) {
        auto lat = ModeLattice::zero(xi, k_max, 0.0);
        lat.w[3] = 1.0;
        const auto weight = SpectralWeight::ell2(k_max);
        evolve_lattice(lat, p, weight, 25.0, {k_max, 1e-4}, 1e-10);
        return lat;
    };
    const auto a = run(10);
    const auto b = run(20);
    for (int k = 1; k <= 10; ++k) {
        CHECK(a.w[k] == doctest::Approx(b.w[k]).epsilon(1e-6));
        CHECK(a.j[k] == doctest::Approx(b.j[k]).epsilon(1e-6));
    }
}

TEST_CASE("tail alarm fires when the truncation is too small") {
    PhysParams p = PhysParams::from_beta(1.0, 0.2, 0.2); // strong coupling
    const double xi = 60.0;
    auto lat = ModeLattice::zero(xi, 5, 10.0);
    lat.w[4] = 1.0;
    const auto weight = SpectralWeight::ell2(5);
    CHECK_THROWS_AS(evolve_lattice(lat, p, weight, 30.0, {5, 1e-10}, 1e-9), tail_alarm);
}

TEST_CASE("run_echo_chain reports per-interval data on a small exploratory run") {
    // Not a certifying regime; the chain should traverse down to k = 1.
    PhysParams p = PhysParams::from_beta(1.0, 0.2, 5e-3);
    const double xi = 200.0;
    const int k_start = 4;
    const auto weight = SpectralWeight::ell2(k_start + 20);
    ChainOptions opts;
    opts.rtol = 1e-9;
    const auto res = run_echo_chain(p, xi, k_start, weight, {k_start + 20, 1e-7}, opts);
    CHECK(res.reports.size() == static_cast<size_t>(k_start));
    CHECK(res.k_end == 0);
    for (const auto& rep : res.reports) {
        CHECK(rep.t_start < rep.t_end);
        CHECK(rep.norm_in > 0.0);
        CHECK(rep.norm_out > 0.0);
        CHECK(rep.amplification == doctest::Approx(rep.norm_out / rep.norm_in));
        CHECK(rep.eta == doctest::Approx(xi / (rep.k * rep.k)));
        CHECK_FALSE(rep.lower_hypotheses_met); // kappa k^2 min(beta,1) << 1/c here
    }
    // first interval starts from the delta data
    CHECK(res.reports.front().k == k_start);
    CHECK(res.reports.front().w_in == doctest::Approx(1.0));
    CHECK(res.reports.front().echo_cond_in);
}

TEST_CASE("chain rejects bad truncation policies") {
    PhysParams p = PhysParams::from_beta(1.0, 0.2, 1e-3);
    const auto weight = SpectralWeight::ell2(30);
    CHECK_THROWS_AS(run_echo_chain(p, 100.0, 8, weight, {10, 1e-8}, {}), validation_error);
}
