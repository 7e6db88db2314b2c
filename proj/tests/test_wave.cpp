#include <cmath>
#include <vector>

#include "doctest.h"
#include "mhdecho/model.hpp"
#include "mhdecho/wave.hpp"

using namespace mhdecho;

namespace {

// Fixed-step RK4 oracle for the wave ODE.
std::pair<double, double> rk4_wave(double f0, double g0, double alpha, double kappa,
                                   double t0, double t1, double dt) {
    double f = f0, g = g0, t = t0;
    auto rhs = [&](double tt, double fv, double gv, double& df, double& dg) {
        df = -alpha * gv;
        dg = -kappa * (1.0 + tt * tt) * gv + alpha * fv + 2.0 * tt / (1.0 + tt * tt) * gv;
    };
    const long n = std::lround((t1 - t0) / dt);
    for (long i = 0; i < n; ++i) {
        double k1f, k1g, k2f, k2g, k3f, k3g, k4f, k4g;
        rhs(t, f, g, k1f, k1g);
        rhs(t + dt / 2, f + dt / 2 * k1f, g + dt / 2 * k1g, k2f, k2g);
        rhs(t + dt / 2, f + dt / 2 * k2f, g + dt / 2 * k2g, k3f, k3g);
        rhs(t + dt, f + dt * k3f, g + dt * k3g, k4f, k4g);
        f += dt / 6 * (k1f + 2 * k2f + 2 * k3f + k4f);
        g += dt / 6 * (k1g + 2 * k2g + 2 * k3g + k4g);
        t += dt;
    }
    return {f, g};
}

} // namespace

TEST_CASE("alpha = 0 wave has the closed-form decoupled solution") {
    // g(t) = g0 (1+t^2) exp(-kappa (t + t^3/3)), f constant
    const double kappa = 0.05, g0 = 0.7;
    PhysParams p(0.0, kappa, 1.0);
    const auto traj = evolve_wave({0.0, 2.5, g0}, p, 8.0, 1e-11);
    for (const auto& s : traj) {
        const double exact = g0 * (1.0 + s.t * s.t) * std::exp(-kappa * (s.t + s.t * s.t * s.t / 3.0));
        CHECK(s.f == doctest::Approx(2.5).epsilon(1e-12));
        CHECK(s.g == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("adaptive wave trajectory agrees with the dense RK4 oracle") {
    const double alpha = 0.05, kappa = 0.01;
    PhysParams p(alpha, kappa, 1.0);
    const auto traj = evolve_wave({0.0, 0.3, -0.4}, p, 10.0, 1e-10);
    const auto [fo, go] = rk4_wave(0.3, -0.4, alpha, kappa, 0.0, 10.0, 1e-4);
    CHECK(traj.back().f == doctest::Approx(fo).epsilon(1e-5));
    CHECK(traj.back().g == doctest::Approx(go).epsilon(1e-5));
}

TEST_CASE("energy inequality of the wave estimates") {
    const double alpha = 0.3, kappa = 0.02;
    PhysParams p(alpha, kappa, 1.0);
    const double kthird = std::pow(kappa, -1.0 / 3.0);
    // the energy derivative 2 g^2 (2t/(1+t^2) - kappa(1+t^2)) turns negative
    // once 2t <= kappa (1+t^2)^2, i.e. past (2/kappa)^{1/3}
    const double t_diss = std::cbrt(2.0 / kappa);
    const auto traj = evolve_wave({0.0, 1.0, 0.5}, p, 4.0 * t_diss, 1e-10);
    const double e0 = traj.front().energy();
    double e_prev = -1.0;
    for (const auto& s : traj) {
        if (s.t < kthird)
            CHECK(s.energy() <= (1.0 + s.t * s.t) * (1.0 + s.t * s.t) * e0 * (1.0 + 1e-9));
        if (s.t > t_diss * 1.05) { // 5% grace band at the threshold
            if (e_prev >= 0.0) CHECK(s.energy() <= e_prev * (1.0 + 1e-8));
            e_prev = s.energy();
        }
    }
}

TEST_CASE("energy derivative identity along the trajectory") {
    // d/dt (f^2+g^2) = 2 g^2 (-kappa (1+t^2) + 2t/(1+t^2)), checked by finite
    // differences of the tracked energy between accepted steps.
    const double alpha = 0.2, kappa = 0.05;
    PhysParams p(alpha, kappa, 1.0);
    const auto traj = evolve_wave({0.0, 1.0, 0.2}, p, 6.0, 1e-11);
    for (size_t i = 1; i + 1 < traj.size(); i += 7) {
        const auto& a = traj[i - 1];
        const auto& b = traj[i + 1];
        const auto& m = traj[i];
        const double dt = b.t - a.t;
        if (dt < 1e-8 || dt > 0.05) continue;
        const double fd = (b.energy() - a.energy()) / dt;
        const double rhs =
            2.0 * m.g * m.g * (-kappa * (1.0 + m.t * m.t) + 2.0 * m.t / (1.0 + m.t * m.t));
        CHECK(fd == doctest::Approx(rhs).epsilon(5e-2).scale(1.0));
    }
}

TEST_CASE("special data round trip and large-time asymptotics") {
    PhysParams p(0.05, 0.01, 1.0); // beta = 4
    const double beta = p.beta();
    const double t0 = 4.0 / beta;
    const auto init = wave_special_data(p, 1e-11);
    CHECK(init.t == 0.0);

    // forward re-integration recovers (1, 0) at t0 within 1e-6 relative
    const auto fwd = evolve_wave(init, p, t0, 1e-11);
    CHECK(fwd.back().f == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(fwd.back().g) < 1e-6);

    // 0 <= 1 - f(t) <= 2/(beta t0) for t >= t0
    const auto traj = evolve_wave(init, p, 60.0, 1e-10);
    for (const auto& s : traj) {
        if (s.t < t0 * (1.0 + 1e-12)) continue;
        CHECK(1.0 - s.f >= -1e-8);
        CHECK(1.0 - s.f <= 2.0 / (beta * t0) + 1e-6);
    }

    // g <= 4 alpha/(kappa t^2) well past the dissipative time scale
    const double kthird = std::pow(p.kappa, -1.0 / 3.0);
    for (const auto& s : traj) {
        if (s.t < 10.0 * kthird) continue;
        CHECK(s.g <= 4.0 * p.alpha / (p.kappa * s.t * s.t) * 1.05);
    }
}
