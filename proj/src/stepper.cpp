#include "mhdecho/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "mhdecho/errors.hpp"

namespace mhdecho {

namespace {

// 7-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[7] = {
    -0.9491079123427585245262, -0.7415311855993944398639, -0.4058451513773971669066,
    0.0,
    0.4058451513773971669066,  0.7415311855993944398639,  0.9491079123427585245262};
constexpr double kGlWeight[7] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551,
    0.3818300505051189449504, 0.2797053914892766679015, 0.1294849661688696932706};

constexpr double kExpFloor = -745.0; // exp underflows to 0 below this

inline double safe_exp(double x) { return x < kExpFloor ? 0.0 : std::exp(x); }

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Quadratic Newton-form source model p(tau) fitted at t0, t0+h/2, t0+3h/4.
struct SourceModel {
    double t0, tm; // nodes t0 and t0+h/2
    double s0, d1, d2;

    double value(double tau) const {
        return s0 + d1 * (tau - t0) + d2 * (tau - t0) * (tau - tm);
    }
    double deriv(double tau) const { return d1 + d2 * (2.0 * tau - t0 - tm); }
};

} // namespace

struct ExpRk32::Work {
    std::vector<double> k1, k2, k3, k4, w2s, w3s, w1, w1e, wmid;
    std::vector<double> sig1, sig2, sig3, sigm, sige;
    std::vector<double> b0, bh, b34, b1, db0, dbh, db34, db1;
    std::vector<double> dBh, dB34, dB1;
    std::vector<double> j2s, j3s, j1n, j1e, jerr;
    std::vector<JClass> cls;
    std::vector<int> panels;

    void resize(int nw, int nj) {
        for (auto* v : {&k1, &k2, &k3, &k4, &w2s, &w3s, &w1, &w1e, &wmid})
            v->assign(static_cast<size_t>(nw), 0.0);
        for (auto* v : {&sig1, &sig2, &sig3, &sigm, &sige, &b0, &bh, &b34, &b1, &db0,
                        &dbh, &db34, &db1, &dBh, &dB34, &dB1, &j2s, &j3s, &j1n, &j1e,
                        &jerr})
            v->assign(static_cast<size_t>(nj), 0.0);
        cls.assign(static_cast<size_t>(nj), JClass::quad);
        panels.assign(static_cast<size_t>(nj), 1);
    }
};

namespace {

// integral_{a}^{e} exp(int_tau^e b) p(tau) dtau by composite Gauss-Legendre.
double quad_kernel_integral(const StiffPairSystem& sys, int i, double a, double e,
                            const SourceModel& p, int m) {
    double acc = 0.0;
    const double panel = (e - a) / m;
    for (int q = 0; q < m; ++q) {
        const double pa = a + q * panel;
        const double mid = pa + 0.5 * panel;
        const double half = 0.5 * panel;
        double local = 0.0;
        for (int g = 0; g < 7; ++g) {
            const double x = mid + half * kGlNode[g];
            local += kGlWeight[g] * safe_exp(sys.stiff_log_decay(i, x, e)) * p.value(x);
        }
        acc += local * half;
    }
    return acc;
}

// Slaved-manifold update: j(e) = Phi (j(a) - js(a) + w2(a)) + js(e) - w2(e),
// js = p/(-b), w2 = p'/b^2 - p b'/b^3. Returns the new value; *err_out gets an
// estimate of the neglected remainder.
double slaved_update(double j_a, double phi, const SourceModel& p, double a, double e,
                     double b_a, double db_a, double b_e, double db_e, double* err_out) {
    const double p_a = p.value(a), dp_a = p.deriv(a);
    const double p_e = p.value(e), dp_e = p.deriv(e);
    const double js_a = -p_a / b_a;
    const double js_e = -p_e / b_e;
    const double w2_a = dp_a / (b_a * b_a) - p_a * db_a / (b_a * b_a * b_a);
    const double w2_e = dp_e / (b_e * b_e) - p_e * db_e / (b_e * b_e * b_e);
    if (err_out) {
        const double span = e - a;
        const double kernel_mass = std::min(span, 2.0 / std::min(std::abs(b_a), std::abs(b_e)));
        *err_out = std::abs(w2_e - w2_a) / span * kernel_mass;
    }
    return phi * (j_a - js_a + w2_a) + js_e - w2_e;
}

} // namespace

void ExpRk32::integrate(const StiffPairSystem& sys, std::vector<double>& w,
                        std::vector<double>& j, double t0, double t1,
                        const StepCallback& on_accept) {
    const int nw = sys.n_slow();
    const int nj = sys.n_stiff();
    if (static_cast<int>(w.size()) != nw || static_cast<int>(j.size()) != nj)
        throw validation_error("ExpRk32: state size does not match system");
    if (!(t1 > t0)) throw validation_error("ExpRk32: require t1 > t0");

    Work wk;
    wk.resize(nw, nj);

    double t = t0;
    double t_comp = 0.0; // Kahan compensation for the time accumulator
    double h = opts_.h_init > 0 ? opts_.h_init
                                : std::min({opts_.h_max, sys.max_step_hint(t0), t1 - t0, 1.0});

    auto kahan_advance = [&](double dt) {
        const double y = dt - t_comp;
        const double tt = t + y;
        t_comp = (tt - t) - y;
        t = tt;
    };

    std::uint64_t steps = 0;
    while (t < t1) {
        if (++steps > opts_.max_steps)
            throw numerical_error("ExpRk32: max step count exceeded", t);

        h = std::min({h, opts_.h_max, sys.max_step_hint(t)});
        bool last = false;
        if (t + 1.05 * h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (!(h > 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)))
            throw step_underflow(t);

        const double th = t + 0.5 * h;
        const double t34 = t + 0.75 * h;
        const double te = t + h;

        sys.stiff_coeffs(t, wk.b0);
        sys.stiff_coeffs(th, wk.bh);
        sys.stiff_coeffs(t34, wk.b34);
        sys.stiff_coeffs(te, wk.b1);
        sys.stiff_coeff_derivs(t, wk.db0);
        sys.stiff_coeff_derivs(th, wk.dbh);
        sys.stiff_coeff_derivs(t34, wk.db34);
        sys.stiff_coeff_derivs(te, wk.db1);
        sys.stiff_log_decays(t, th, wk.dBh);
        sys.stiff_log_decays(t, t34, wk.dB34);
        sys.stiff_log_decays(t, te, wk.dB1);

        // Classify each stiff component for this step.
        bool need_split = false;
        for (int i = 0; i < nj && !need_split; ++i) {
            const double absint =
                std::max(std::abs(wk.dB1[i]),
                         (std::abs(wk.b0[i]) + 4.0 * std::abs(wk.bh[i]) + std::abs(wk.b1[i])) * h / 6.0);
            if (absint <= 34.0) {
                wk.cls[i] = JClass::quad;
                wk.panels[i] = std::clamp(static_cast<int>(std::ceil(absint / 2.5)), 1, 16);
                continue;
            }
            double lo, hi;
            const bool bump = sys.stiff_positive_window(i, lo, hi) && lo < te && t < hi;
            if (!bump && wk.b0[i] <= -1.0 && wk.bh[i] <= -1.0 && wk.b1[i] <= -1.0)
                wk.cls[i] = JClass::slaved;
            else
                need_split = true;
        }
        if (need_split) {
            h *= 0.5;
            ++stats_.rejected;
            continue;
        }

        // Stage 1.
        sys.stiff_source(t, w, wk.sig1);
        sys.slow_rhs(t, w, j, wk.k1);
        stats_.rhs_evals++;

        // Stage 2 at t + h/2; constant source model.
        for (int i = 0; i < nw; ++i) wk.w2s[i] = w[i] + 0.5 * h * wk.k1[i];
        for (int i = 0; i < nj; ++i) {
            const SourceModel p{t, th, wk.sig1[i], 0.0, 0.0};
            if (wk.cls[i] == JClass::quad)
                wk.j2s[i] = safe_exp(wk.dBh[i]) * j[i] +
                            quad_kernel_integral(sys, i, t, th, p, wk.panels[i]);
            else
                wk.j2s[i] = slaved_update(j[i], safe_exp(wk.dBh[i]), p, t, th, wk.b0[i],
                                          wk.db0[i], wk.bh[i], wk.dbh[i], nullptr);
        }
        sys.stiff_source(th, wk.w2s, wk.sig2);
        sys.slow_rhs(th, wk.w2s, wk.j2s, wk.k2);
        stats_.rhs_evals++;

        // Stage 3 at t + 3h/4; linear source model.
        for (int i = 0; i < nw; ++i) wk.w3s[i] = w[i] + 0.75 * h * wk.k2[i];
        for (int i = 0; i < nj; ++i) {
            const double d1 = (wk.sig2[i] - wk.sig1[i]) / (0.5 * h);
            const SourceModel p{t, th, wk.sig1[i], d1, 0.0};
            if (wk.cls[i] == JClass::quad)
                wk.j3s[i] = safe_exp(wk.dB34[i]) * j[i] +
                            quad_kernel_integral(sys, i, t, t34, p, wk.panels[i]);
            else
                wk.j3s[i] = slaved_update(j[i], safe_exp(wk.dB34[i]), p, t, t34, wk.b0[i],
                                          wk.db0[i], wk.b34[i], wk.db34[i], nullptr);
        }
        sys.stiff_source(t34, wk.w3s, wk.sig3);
        sys.slow_rhs(t34, wk.w3s, wk.j3s, wk.k3);
        stats_.rhs_evals++;

        // Third-order slow combination; predictor j from the stage-sampled
        // quadratic source model.
        for (int i = 0; i < nw; ++i)
            wk.w1[i] = w[i] + h * (2.0 * wk.k1[i] + 3.0 * wk.k2[i] + 4.0 * wk.k3[i]) / 9.0;
        for (int i = 0; i < nj; ++i) {
            const double d1 = (wk.sig2[i] - wk.sig1[i]) / (0.5 * h);
            const double d2 = ((wk.sig3[i] - wk.sig2[i]) / (0.25 * h) - d1) / (0.75 * h);
            const SourceModel pq{t, th, wk.sig1[i], d1, d2};
            if (wk.cls[i] == JClass::quad)
                wk.j1e[i] = safe_exp(wk.dB1[i]) * j[i] +
                            quad_kernel_integral(sys, i, t, te, pq, wk.panels[i]);
            else
                wk.j1e[i] = slaved_update(j[i], safe_exp(wk.dB1[i]), pq, t, te, wk.b0[i],
                                          wk.db0[i], wk.b1[i], wk.db1[i], nullptr);
        }
        sys.slow_rhs(te, wk.w1, wk.j1e, wk.k4);
        stats_.rhs_evals++;
        for (int i = 0; i < nw; ++i)
            wk.w1e[i] = w[i] + h * (7.0 * wk.k1[i] / 24.0 + wk.k2[i] / 4.0 +
                                    wk.k3[i] / 3.0 + wk.k4[i] / 8.0);

        // Corrector: re-fit the source through third-order-accurate samples
        // taken from the cubic Hermite dense output of the slow block. The
        // stage-sampled predictor doubles as the embedded j value.
        for (int i = 0; i < nw; ++i)
            wk.wmid[i] = 0.5 * (w[i] + wk.w1[i]) + h * (wk.k1[i] - wk.k4[i]) / 8.0;
        sys.stiff_source(th, wk.wmid, wk.sigm);
        sys.stiff_source(te, wk.w1, wk.sige);
        for (int i = 0; i < nj; ++i) {
            // quadratic through (t, sig1), (t+h/2, sigm), (t+h, sige)
            const double d1 = (wk.sigm[i] - wk.sig1[i]) / (0.5 * h);
            const double d2 = ((wk.sige[i] - wk.sigm[i]) / (0.5 * h) - d1) / h;
            const SourceModel pc{t, th, wk.sig1[i], d1, d2};
            double extra = 0.0;
            if (wk.cls[i] == JClass::quad)
                wk.j1n[i] = safe_exp(wk.dB1[i]) * j[i] +
                            quad_kernel_integral(sys, i, t, te, pc, wk.panels[i]);
            else
                wk.j1n[i] = slaved_update(j[i], safe_exp(wk.dB1[i]), pc, t, te, wk.b0[i],
                                          wk.db0[i], wk.b1[i], wk.db1[i], &extra);
            wk.jerr[i] = std::abs(wk.j1n[i] - wk.j1e[i]) + extra;
        }

        // Scaled RMS error over both blocks. The floor references the overall
        // state scale so that components passing through zero stay controlled
        // relative to the dominant amplitudes.
        double wmax = 0.0, jmax = 0.0;
        for (int i = 0; i < nw; ++i) wmax = std::max(wmax, std::abs(w[i]));
        for (int i = 0; i < nj; ++i) jmax = std::max(jmax, std::abs(j[i]));
        const double state_max = std::max(wmax, jmax);
        wmax = jmax = state_max;
        double err_sq = 0.0;
        int n_err = 0;
        bool bad = false;
        auto add_err = [&](double e, double y_old, double y_new, double block_max) {
            if (!std::isfinite(e) || !std::isfinite(y_new)) {
                bad = true;
                return;
            }
            const double mag = std::max({std::abs(y_old), std::abs(y_new),
                                         opts_.scale_floor * block_max});
            const double sc = opts_.atol + opts_.rtol * mag;
            if (sc > 0.0) {
                const double q = e / sc;
                err_sq += q * q;
                ++n_err;
            }
        };
        for (int i = 0; i < nw; ++i) add_err(wk.w1[i] - wk.w1e[i], w[i], wk.w1[i], wmax);
        for (int i = 0; i < nj; ++i) add_err(wk.jerr[i], j[i], wk.j1n[i], jmax);
        const double err = bad ? 1e10 : (n_err ? std::sqrt(err_sq / n_err) : 0.0);

        if (err <= 1.0) {
            if (last) {
                t = t1;
                t_comp = 0.0;
            } else {
                kahan_advance(h);
            }
            w.swap(wk.w1);
            j.swap(wk.j1n);
            if (!all_finite(w) || !all_finite(j)) throw nonfinite_state(t);
            ++stats_.accepted;
            if (on_accept) on_accept(t, w, j);
            const double fac = err > 0.0 ? 0.9 * std::pow(err, -1.0 / 3.0) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            ++stats_.rejected;
            const double fac = 0.9 * std::pow(err, -1.0 / 3.0);
            h *= std::clamp(fac, 0.02, 0.9);
        }
    }
}

} // namespace mhdecho
