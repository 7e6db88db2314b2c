#include "mhdecho/single_mode.hpp"

#include <cmath>
#include <numbers>

#include "mhdecho/errors.hpp"
#include "mhdecho/stepper.hpp"

namespace mhdecho {

namespace {

class SingleModeSystem final : public StiffPairSystem {
  public:
    SingleModeSystem(int k, double xi, double alpha, double kappa)
        : k_(k), xi_(xi), alpha_(alpha), kappa_(kappa) {}

    int n_slow() const override { return 1; }
    int n_stiff() const override { return 1; }

    void slow_rhs(double, std::span<const double>, std::span<const double> j,
                  std::span<double> dw) const override {
        dw[0] = -alpha_ * k_ * j[0];
    }
    void stiff_source(double, std::span<const double> w, std::span<double> s) const override {
        s[0] = alpha_ * k_ * w[0];
    }
    void stiff_coeffs(double t, std::span<double> b) const override {
        b[0] = coefficient_b(k_, t, xi_, kappa_);
    }
    void stiff_coeff_derivs(double t, std::span<double> db) const override {
        db[0] = coefficient_b_deriv(k_, t, xi_, kappa_);
    }
    void stiff_log_decays(double t0, double t1, std::span<double> out) const override {
        out[0] = coefficient_b_integral(k_, t0, t1, xi_, kappa_);
    }
    double stiff_coeff(int, double t) const override {
        return coefficient_b(k_, t, xi_, kappa_);
    }
    double stiff_log_decay(int, double t0, double t1) const override {
        return coefficient_b_integral(k_, t0, t1, xi_, kappa_);
    }
    double max_step_hint(double t) const override {
        const double delta = t - xi_ / k_;
        return 0.1 * std::sqrt(1.0 + delta * delta);
    }
    bool stiff_positive_window(int, double& lo, double& hi) const override {
        return b_positive_window(kappa_ * k_ * k_, xi_ / k_, lo, hi);
    }

  private:
    int k_;
    double xi_, alpha_, kappa_;
};

} // namespace

std::vector<SingleModeState> evolve_single_mode(const ModeIndex& mode,
                                                const PhysParams& params, double w0,
                                                double j0, double t_end, double rtol,
                                                double t_start) {
    if (mode.k < 1) throw validation_error("evolve_single_mode: k must be >= 1");
    if (!(t_end > t_start)) throw validation_error("evolve_single_mode: t_end must exceed t_start");
    SingleModeSystem sys(mode.k, mode.xi, params.alpha, params.kappa);
    StepperOptions opts;
    opts.rtol = rtol;
    ExpRk32 stepper(opts);
    std::vector<double> w{w0}, j{j0};
    std::vector<SingleModeState> out{{t_start, w0, j0}};
    stepper.integrate(sys, w, j, t_start, t_end,
                      [&](double t, std::span<const double> ws, std::span<const double> js) {
                          out.push_back({t, ws[0], js[0]});
                      });
    return out;
}

double default_single_mode_horizon(const ModeIndex& mode, const PhysParams& params) {
    const double kk = static_cast<double>(mode.k);
    return mode.xi / kk + 10.0 * std::pow(params.kappa * kk * kk, -1.0 / 3.0);
}

double stability_ratio(const ModeIndex& mode, const PhysParams& params, int samples,
                       double t_end, double rtol) {
    if (samples < 1) throw validation_error("stability_ratio: samples must be >= 1");
    double worst = 1.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / samples;
        const auto traj = evolve_single_mode(mode, params, std::cos(theta),
                                             std::sin(theta), t_end, rtol);
        for (const auto& s : traj) worst = std::max(worst, s.energy());
    }
    return worst;
}

} // namespace mhdecho
