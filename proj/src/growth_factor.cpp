#include "mhdecho/growth_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mhdecho/errors.hpp"
#include "mhdecho/model.hpp"
#include "mhdecho/stepper.hpp"

namespace mhdecho {

namespace {
constexpr double kPi = std::numbers::pi;

// Same diagonal shape as the mode current, with kappa k^2 -> K and the
// resonance shifted to s = 0.
class PropagatorSystem final : public StiffPairSystem {
  public:
    PropagatorSystem(double beta, double K) : beta_(beta), K_(K) {}

    int n_slow() const override { return 1; }
    int n_stiff() const override { return 1; }

    void slow_rhs(double, std::span<const double>, std::span<const double> j,
                  std::span<double> du) const override {
        du[0] = -j[0];
    }
    void stiff_source(double, std::span<const double> u, std::span<double> s) const override {
        s[0] = K_ / beta_ * u[0];
    }
    void stiff_coeffs(double t, std::span<double> b) const override {
        b[0] = coefficient_b(1, t, 0.0, K_);
    }
    void stiff_coeff_derivs(double t, std::span<double> db) const override {
        db[0] = coefficient_b_deriv(1, t, 0.0, K_);
    }
    void stiff_log_decays(double t0, double t1, std::span<double> out) const override {
        out[0] = coefficient_b_integral(1, t0, t1, 0.0, K_);
    }
    double stiff_coeff(int, double t) const override { return coefficient_b(1, t, 0.0, K_); }
    double stiff_log_decay(int, double t0, double t1) const override {
        return coefficient_b_integral(1, t0, t1, 0.0, K_);
    }
    double max_step_hint(double t) const override { return 0.1 * std::sqrt(1.0 + t * t); }
    bool stiff_positive_window(int, double& lo, double& hi) const override {
        return b_positive_window(K_, 0.0, lo, hi);
    }

  private:
    double beta_, K_;
};

} // namespace

GrowthFactorQuery::GrowthFactorQuery(double beta_, double K_, double c_)
    : beta(beta_), K(K_), c(c_) {
    if (!(beta > 0.0)) throw validation_error("GrowthFactorQuery: beta must be > 0");
    if (!(K > 0.0)) throw validation_error("GrowthFactorQuery: K must be > 0");
    if (!(c > 0.0)) throw validation_error("GrowthFactorQuery: c must be > 0");
}

bool GrowthFactorQuery::certifying() const {
    return c <= std::pow(8.0 * kPi, -4.0 / 3.0) * std::pow(beta, 16.0 / 3.0);
}

double L_analytic(const GrowthFactorQuery& q) {
    const double t_mid_hi = 0.5 * std::pow(q.c, 0.75);
    const double t_mid_lo = (2.0 * kPi / q.beta) * q.c * q.c * q.c;
    double best = 0.0;
    if (q.K >= 1.0) best = std::max(best, 1.0);
    if (q.K >= t_mid_hi && q.K <= 1.0) best = std::max(best, std::sqrt(q.d()));
    if (q.K >= t_mid_lo && q.K <= t_mid_hi) best = std::max(best, 2.0 * (1.0 + kPi / q.beta));
    if (q.K <= t_mid_lo) best = std::max(best, 1.0);
    return best;
}

double U_sup_numeric(const GrowthFactorQuery& q, int grid, double rtol) {
    if (grid < 8) throw validation_error("U_sup_numeric: grid must be >= 8");
    const double d = q.d();
    PropagatorSystem sys(q.beta, q.K);
    double sup = 1.0; // the initial condition u(tau) = 1 itself
    for (int i = 0; i < grid; ++i) {
        const double tau = -d + (2.0 * d) * i / (grid - 1);
        if (tau >= d) break;
        StepperOptions opts;
        opts.rtol = rtol;
        ExpRk32 stepper(opts);
        std::vector<double> u{1.0}, j{0.0};
        double local = 1.0;
        stepper.integrate(sys, u, j, tau, d,
                          [&](double, std::span<const double> us, std::span<const double>) {
                              local = std::max(local, std::abs(us[0]));
                          });
        sup = std::max(sup, local);
    }
    return sup;
}

} // namespace mhdecho
