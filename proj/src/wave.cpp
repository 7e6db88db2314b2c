#include "mhdecho/wave.hpp"

#include <cmath>
#include <limits>

#include "mhdecho/errors.hpp"
#include "mhdecho/stepper.hpp"

namespace mhdecho {

namespace {

// The wave diagonal 2t/(1+t^2) - kappa(1+t^2) is coefficient_b with k=1, xi=0.
class WaveSystem final : public StiffPairSystem {
  public:
    WaveSystem(double alpha, double kappa, bool reversed, double t_anchor)
        : alpha_(alpha), kappa_(kappa), reversed_(reversed), anchor_(t_anchor) {}

    int n_slow() const override { return 1; }
    int n_stiff() const override { return 1; }

    void slow_rhs(double /*t*/, std::span<const double> /*w*/, std::span<const double> j,
                  std::span<double> dw) const override {
        dw[0] = (reversed_ ? alpha_ : -alpha_) * j[0];
    }

    void stiff_source(double /*t*/, std::span<const double> w,
                      std::span<double> s) const override {
        s[0] = (reversed_ ? -alpha_ : alpha_) * w[0];
    }

    void stiff_coeffs(double t, std::span<double> b) const override {
        b[0] = stiff_coeff(0, t);
    }
    void stiff_coeff_derivs(double t, std::span<double> db) const override {
        db[0] = reversed_ ? coefficient_b_deriv(1, real_time(t), 0.0, kappa_)
                          : coefficient_b_deriv(1, t, 0.0, kappa_);
    }
    void stiff_log_decays(double t0, double t1, std::span<double> out) const override {
        out[0] = stiff_log_decay(0, t0, t1);
    }
    double stiff_coeff(int, double t) const override {
        const double b = coefficient_b(1, real_time(t), 0.0, kappa_);
        return reversed_ ? -b : b;
    }
    double stiff_log_decay(int, double t0, double t1) const override {
        if (!reversed_) return coefficient_b_integral(1, t0, t1, 0.0, kappa_);
        return -coefficient_b_integral(1, real_time(t1), real_time(t0), 0.0, kappa_);
    }
    double max_step_hint(double t) const override {
        const double tt = real_time(t);
        return 0.1 * std::sqrt(1.0 + tt * tt);
    }
    bool stiff_positive_window(int, double& lo, double& hi) const override {
        double rlo, rhi;
        if (!b_positive_window(kappa_, 0.0, rlo, rhi)) {
            if (!reversed_) return false;
            // Reversed diagonal is -b; its positive region is where b < 0,
            // i.e. essentially everywhere. The reversed wave run is short and
            // non-stiff, so just forbid the asymptotic branch entirely.
            lo = -std::numeric_limits<double>::infinity();
            hi = std::numeric_limits<double>::infinity();
            return true;
        }
        if (!reversed_) {
            lo = rlo;
            hi = rhi;
        } else {
            lo = -std::numeric_limits<double>::infinity();
            hi = std::numeric_limits<double>::infinity();
        }
        return true;
    }

  private:
    double real_time(double t) const { return reversed_ ? anchor_ - t : t; }

    double alpha_, kappa_;
    bool reversed_;
    double anchor_;
};

} // namespace

std::vector<WaveState> evolve_wave(const WaveState& initial, const PhysParams& params,
                                   double t_end, double rtol) {
    if (!(t_end > initial.t))
        throw validation_error("evolve_wave: t_end must exceed the initial time");
    WaveSystem sys(params.alpha, params.kappa, false, 0.0);
    StepperOptions opts;
    opts.rtol = rtol;
    ExpRk32 stepper(opts);
    std::vector<double> f{initial.f}, g{initial.g};
    std::vector<WaveState> out{initial};
    stepper.integrate(sys, f, g, initial.t, t_end,
                      [&](double t, std::span<const double> fw, std::span<const double> gj) {
                          out.push_back({t, fw[0], gj[0]});
                      });
    return out;
}

WaveState wave_special_data(const PhysParams& params, double rtol) {
    const double t0 = 4.0 / params.beta();
    WaveSystem sys(params.alpha, params.kappa, true, t0);
    StepperOptions opts;
    opts.rtol = rtol;
    ExpRk32 stepper(opts);
    std::vector<double> f{1.0}, g{0.0};
    // tau runs from 0 to t0; real time runs from t0 down to 0.
    stepper.integrate(sys, f, g, 0.0, t0);
    return WaveState{0.0, f[0], g[0]};
}

} // namespace mhdecho
