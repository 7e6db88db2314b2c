#include "mhdecho/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdecho/errors.hpp"
#include "mhdecho/stepper.hpp"

namespace mhdecho {

namespace {

// Internal state vectors hold modes k = 1..k_max (index k-1); the k = 0 mode
// is pinned and never stored.
class LatticeSystem final : public StiffPairSystem {
  public:
    LatticeSystem(const PhysParams& p, double xi, int k_max)
        : alpha_(p.alpha), kappa_(p.kappa), c_(p.c), xi_(xi), k_max_(k_max),
          a_buf_(static_cast<size_t>(k_max) + 2) {}

    int n_slow() const override { return k_max_; }
    int n_stiff() const override { return k_max_; }

    void slow_rhs(double t, std::span<const double> w, std::span<const double> j,
                  std::span<double> dw) const override {
        // a(k, t) for k = 1..k_max+1 (a(0) = 0 by pinning, w(k_max+1) = 0)
        for (int k = 1; k <= k_max_ + 1; ++k)
            a_buf_[static_cast<size_t>(k)] = coefficient_a(k, t, xi_, c_);
        for (int k = 1; k <= k_max_; ++k) {
            const int i = k - 1;
            double v = -alpha_ * k * j[i];
            if (k + 1 <= k_max_) v -= a_buf_[static_cast<size_t>(k) + 1] * w[i + 1];
            if (k - 1 >= 1) v += a_buf_[static_cast<size_t>(k) - 1] * w[i - 1];
            dw[i] = v;
        }
    }

    void stiff_source(double, std::span<const double> w, std::span<double> s) const override {
        for (int k = 1; k <= k_max_; ++k) s[k - 1] = alpha_ * k * w[k - 1];
    }

    void stiff_coeffs(double t, std::span<double> b) const override {
        for (int k = 1; k <= k_max_; ++k) b[k - 1] = coefficient_b(k, t, xi_, kappa_);
    }
    void stiff_coeff_derivs(double t, std::span<double> db) const override {
        for (int k = 1; k <= k_max_; ++k) db[k - 1] = coefficient_b_deriv(k, t, xi_, kappa_);
    }
    void stiff_log_decays(double t0, double t1, std::span<double> out) const override {
        for (int k = 1; k <= k_max_; ++k)
            out[k - 1] = coefficient_b_integral(k, t0, t1, xi_, kappa_);
    }
    double stiff_coeff(int i, double t) const override {
        return coefficient_b(i + 1, t, xi_, kappa_);
    }
    double stiff_log_decay(int i, double t0, double t1) const override {
        return coefficient_b_integral(i + 1, t0, t1, xi_, kappa_);
    }

    double max_step_hint(double t) const override {
        // resolve the core of the currently resonant mode
        int k_star = k_max_;
        if (t > 0.0) {
            const double q = xi_ / t;
            k_star = std::clamp(static_cast<int>(std::llround(q)), 1, k_max_);
        }
        const double delta = t - xi_ / k_star;
        return 0.1 * std::sqrt(1.0 + delta * delta);
    }

    bool stiff_positive_window(int i, double& lo, double& hi) const override {
        const int k = i + 1;
        return b_positive_window(kappa_ * k * k, xi_ / k, lo, hi);
    }

  private:
    double alpha_, kappa_, c_, xi_;
    int k_max_;
    mutable std::vector<double> a_buf_;
};

} // namespace

ModeLattice ModeLattice::zero(double xi, int k_max, double t0) {
    if (!(xi > 0.0)) throw validation_error("ModeLattice: xi must be > 0");
    if (k_max < 1) throw validation_error("ModeLattice: k_max must be >= 1");
    ModeLattice l;
    l.xi = xi;
    l.k_max = k_max;
    l.t = t0;
    l.w.assign(static_cast<size_t>(k_max) + 1, 0.0);
    l.j.assign(static_cast<size_t>(k_max) + 1, 0.0);
    return l;
}

double x_norm(const ModeLattice& state, const SpectralWeight& weight,
              const PhysParams& params, NormVariant variant) {
    return x_norm(std::span<const double>(state.w), std::span<const double>(state.j),
                  weight, params, variant);
}

void evolve_lattice(ModeLattice& state, const PhysParams& params,
                    const SpectralWeight& weight, double t_end,
                    const TruncationPolicy& policy, double rtol,
                    const std::function<void(const ModeLattice&)>& on_step) {
    if (!(t_end > state.t)) throw validation_error("evolve_lattice: t_end must exceed state.t");
    if (state.k_max != policy.k_max && policy.k_max != 0)
        throw validation_error("evolve_lattice: policy k_max does not match state");
    if (static_cast<int>(weight.lambda.size()) < state.k_max + 1)
        throw validation_error("evolve_lattice: weight does not cover the lattice k-range");
    if (state.w[0] != 0.0 || state.j[0] != 0.0)
        throw validation_error("evolve_lattice: k = 0 mode must stay pinned to zero");

    LatticeSystem sys(params, state.xi, state.k_max);
    StepperOptions opts;
    opts.rtol = rtol;
    ExpRk32 stepper(opts);

    std::vector<double> w(state.w.begin() + 1, state.w.end());
    std::vector<double> j(state.j.begin() + 1, state.j.end());

    const int km = state.k_max;
    auto tail_check = [&](double t, std::span<const double> ws, std::span<const double> js) {
        double total = 0.0, tail = 0.0;
        for (int k = 1; k <= km; ++k) {
            const double m =
                weight.lambda[static_cast<size_t>(k)] * (ws[k - 1] * ws[k - 1] + js[k - 1] * js[k - 1]);
            total += m;
            if (k > km - 3) tail += m;
        }
        if (total > 0.0 && tail > policy.tail_monitor_threshold * total)
            throw tail_alarm(t, tail / total);
        if (on_step) {
            ModeLattice snap = state;
            snap.t = t;
            std::copy(ws.begin(), ws.end(), snap.w.begin() + 1);
            std::copy(js.begin(), js.end(), snap.j.begin() + 1);
            on_step(snap);
        }
    };

    stepper.integrate(sys, w, j, state.t, t_end, tail_check);

    state.t = t_end;
    std::copy(w.begin(), w.end(), state.w.begin() + 1);
    std::copy(j.begin(), j.end(), state.j.begin() + 1);
}

ChainResult run_echo_chain(const PhysParams& params, double xi, int k_start,
                           const SpectralWeight& weight, const TruncationPolicy& policy,
                           const ChainOptions& opts) {
    if (k_start < 1) throw validation_error("run_echo_chain: k_start must be >= 1");
    if (policy.k_max < k_start + 5)
        throw validation_error("run_echo_chain: policy.k_max must be >= k_start + 5");
    if (opts.k_stop < 1) throw validation_error("run_echo_chain: k_stop must be >= 1");

    const auto part = interval_partition(xi, k_start);

    ChainResult res;
    res.state = ModeLattice::zero(xi, policy.k_max, part.boundaries[static_cast<size_t>(k_start)]);
    res.state.w[static_cast<size_t>(k_start)] = 1.0;

    const auto env_start = interval_envelopes(params, weight, k_start, xi);
    const bool certifying_start = env_start.lower_kappa_ok && env_start.beta_ok;

    res.k_end = k_start;
    for (int k = k_start; k >= std::max(1, opts.k_stop); --k) {
        const auto env = interval_envelopes(params, weight, k, xi);
        if (opts.stop_on_hypothesis_failure && certifying_start &&
            !(env.lower_kappa_ok && env.beta_ok))
            break; // k is the first mode whose lower-bound hypotheses fail

        IntervalReport rep;
        rep.k = k;
        rep.t_start = part.boundaries[static_cast<size_t>(k)];
        rep.t_end = part.boundaries[static_cast<size_t>(k) - 1];
        rep.eta = env.eta;
        rep.envelope_upper = env.upper_value();
        rep.envelope_lower = env.lower_value();
        rep.log_scale_in = res.state.log_scale;
        rep.norm_in = x_norm(res.state, weight, params);
        rep.w_in = std::abs(res.state.w[static_cast<size_t>(k)]);
        double peak = 0.0;
        for (int l = 1; l <= res.state.k_max; ++l)
            peak = std::max({peak, std::abs(res.state.w[static_cast<size_t>(l)]),
                             std::abs(res.state.j[static_cast<size_t>(l)])});
        rep.echo_cond_in = rep.w_in >= 0.5 * peak;
        rep.lower_hypotheses_met = env.lower_kappa_ok && env.beta_ok && rep.echo_cond_in;

        evolve_lattice(res.state, params, weight, rep.t_end, policy, opts.rtol);

        rep.norm_out = x_norm(res.state, weight, params);
        rep.w_out = k >= 2 ? std::abs(res.state.w[static_cast<size_t>(k) - 1]) : 0.0;
        rep.amplification = rep.norm_in > 0.0 ? rep.norm_out / rep.norm_in : 0.0;
        res.reports.push_back(rep);
        res.k_end = k - 1;

        if (opts.on_boundary) opts.on_boundary(res.state);

        // keep the state representable over long chains
        if (rep.norm_out > 1e6) {
            const double s = rep.norm_out;
            for (auto& v : res.state.w) v /= s;
            for (auto& v : res.state.j) v /= s;
            res.state.log_scale += std::log(s);
        }
    }

    const double w_terminal =
        res.k_end >= 1 ? std::abs(res.state.w[static_cast<size_t>(res.k_end)]) : 0.0;
    res.log_amp_terminal =
        w_terminal > 0.0 ? std::log(w_terminal) + res.state.log_scale
                         : -std::numeric_limits<double>::infinity();
    return res;
}

} // namespace mhdecho
