#include "mhdecho/toy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mhdecho/errors.hpp"
#include "mhdecho/stepper.hpp"

namespace mhdecho {

namespace {
constexpr double kPi = std::numbers::pi;

// slow block: (w_k, w_km1); stiff block: (j_k, j_km1).
class ToySystem final : public StiffPairSystem {
  public:
    ToySystem(const PhysParams& p, int k, double xi)
        : alpha_(p.alpha), kappa_(p.kappa), c_(p.c), k_(k), xi_(xi),
          damp_km1_(-p.kappa * xi * xi / (double(k) * double(k))) {}

    int n_slow() const override { return 2; }
    int n_stiff() const override { return 2; }

    void slow_rhs(double t, std::span<const double> w, std::span<const double> j,
                  std::span<double> dw) const override {
        dw[0] = -alpha_ * k_ * j[0];
        dw[1] = -alpha_ * (k_ - 1) * j[1] + coefficient_a(k_, t, xi_, c_) * w[0];
    }
    void stiff_source(double, std::span<const double> w, std::span<double> s) const override {
        s[0] = alpha_ * k_ * w[0];
        s[1] = alpha_ * (k_ - 1) * w[1];
    }
    void stiff_coeffs(double t, std::span<double> b) const override {
        b[0] = coefficient_b(k_, t, xi_, kappa_);
        b[1] = damp_km1_;
    }
    void stiff_coeff_derivs(double t, std::span<double> db) const override {
        db[0] = coefficient_b_deriv(k_, t, xi_, kappa_);
        db[1] = 0.0;
    }
    void stiff_log_decays(double t0, double t1, std::span<double> out) const override {
        out[0] = coefficient_b_integral(k_, t0, t1, xi_, kappa_);
        out[1] = damp_km1_ * (t1 - t0);
    }
    double stiff_coeff(int i, double t) const override {
        return i == 0 ? coefficient_b(k_, t, xi_, kappa_) : damp_km1_;
    }
    double stiff_log_decay(int i, double t0, double t1) const override {
        return i == 0 ? coefficient_b_integral(k_, t0, t1, xi_, kappa_)
                      : damp_km1_ * (t1 - t0);
    }
    double max_step_hint(double t) const override {
        const double delta = t - xi_ / k_;
        return 0.1 * std::sqrt(1.0 + delta * delta);
    }
    bool stiff_positive_window(int i, double& lo, double& hi) const override {
        if (i != 0) return false;
        return b_positive_window(kappa_ * k_ * k_, xi_ / k_, lo, hi);
    }

  private:
    double alpha_, kappa_, c_;
    int k_;
    double xi_;
    double damp_km1_;
};

} // namespace

ToyResult evolve_toy(const PhysParams& params, int k, double xi, double rtol) {
    if (k < 2) throw validation_error("evolve_toy: k must be >= 2");
    if (!(xi > 0.0)) throw validation_error("evolve_toy: xi must be > 0");

    ToyResult res;
    res.eta = xi / (double(k) * double(k));
    res.upper_bound = 2.0 * kPi * params.c * res.eta;
    res.lower_bound = 0.5 * kPi * params.c * res.eta;
    res.hypotheses_met = params.beta() >= kPi &&
                         xi >= 10.0 * std::max(1.0 / params.kappa,
                                               double(k) * double(k) / params.c);

    const double t_k = 0.5 * xi * (1.0 / (k + 1.0) + 1.0 / k);
    const double t_km1 = 0.5 * xi * (1.0 / k + 1.0 / (k - 1.0));

    ToySystem sys(params, k, xi);
    StepperOptions opts;
    opts.rtol = rtol;
    ExpRk32 stepper(opts);
    std::vector<double> w{1.0, 0.0}, j{0.0, 0.0};
    res.trajectory.push_back({t_k, 1.0, 0.0, 0.0, 0.0});
    stepper.integrate(sys, w, j, t_k, t_km1,
                      [&](double t, std::span<const double> ws, std::span<const double> js) {
                          res.trajectory.push_back({t, ws[0], js[0], ws[1], js[1]});
                      });
    return res;
}

double toy_w_relation_residual(const ToyResult& result, const PhysParams& params, int k,
                               double xi) {
    const auto& traj = result.trajectory;
    if (traj.size() < 2) throw validation_error("toy_w_relation_residual: empty trajectory");
    const double beta = params.beta();
    const double kk2 = params.kappa * double(k) * double(k);
    const double t_res = xi / k;

    // shifted times and the integrand numerator w(k,tau)/(1+tau^2)
    const size_t n = traj.size();
    std::vector<double> s(n), base(n);
    for (size_t i = 0; i < n; ++i) {
        s[i] = traj[i].t - t_res;
        base[i] = traj[i].w_k / (1.0 + s[i] * s[i]);
    }

    auto kernel = [&](double sm, double tau) {
        // 1 - exp(-kappa k^2 ((sm-tau) + (sm^3-tau^3)/3)), argument >= 0 for tau <= sm
        const double dt = sm - tau;
        const double cubic = dt * (sm * sm + sm * tau + tau * tau) / 3.0;
        return -std::expm1(-kk2 * (dt + cubic));
    };

    // The kernel depends on the outer time, so the inner quadrature cannot be
    // accumulated incrementally; subsample the outer loop to keep this O(n).
    const size_t stride = std::max<size_t>(1, n / 800);
    std::vector<size_t> outer;
    for (size_t m = 1; m + 1 < n; m += stride) outer.push_back(m);
    outer.push_back(n - 1);

    double worst = 0.0;
    for (const size_t m : outer) {
        const double sm = s[m];
        double integral = 0.0;
        for (size_t i = 0; i + 1 <= m; ++i) {
            const double f0 = base[i] * kernel(sm, s[i]);
            const double f1 = base[i + 1] * kernel(sm, s[i + 1]);
            integral += 0.5 * (s[i + 1] - s[i]) * (f0 + f1);
        }
        const double rhs = 1.0 - integral / beta;
        worst = std::max(worst, std::abs(traj[m].w_k - rhs));
    }
    return worst;
}

} // namespace mhdecho
