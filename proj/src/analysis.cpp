#include "mhdecho/analysis.hpp"

#include <cmath>
#include <numbers>

#include "mhdecho/errors.hpp"
#include "mhdecho/growth_factor.hpp"

namespace mhdecho {

namespace {
constexpr double kPi = std::numbers::pi;
}

double EnvelopeSpec::upper_value() const {
    return upper_constant * std::pow(c_eta, exponent);
}

double EnvelopeSpec::lower_value() const {
    return lower_constant * std::pow(c_eta, exponent);
}

EnvelopeSpec interval_envelopes(const PhysParams& params, const SpectralWeight& weight,
                                int k, double xi) {
    if (k < 1) throw validation_error("interval_envelopes: k must be >= 1");
    if (!(xi > 0.0)) throw validation_error("interval_envelopes: xi must be > 0");
    if (!(params.c > 0.0))
        throw validation_error("interval_envelopes: c must be > 0 (envelopes are void at c = 0)");

    const double beta = params.beta();
    const double kappa_k2 = params.kappa * double(k) * double(k);
    const double eta = xi / (double(k) * double(k));
    const GrowthFactorQuery q(beta, kappa_k2, params.c);

    EnvelopeSpec env;
    env.eta = eta;
    env.c_eta = params.c * eta;
    env.upper_constant = 18.0 * kPi * L_analytic(q) * weight.lambda_hat;
    env.exponent = GammaExponents::from_c(params.c).gamma;
    env.lower_constant = std::min(beta, kPi);
    env.c_ok = params.upper_bound_regime();
    env.xi_ok = xi >= 10.0 / params.kappa * (1.0 + 1.0 / beta);
    env.eta_ok = eta >= 10.0 * params.d();
    env.lower_kappa_ok = kappa_k2 * std::min(beta, 1.0) >= params.d();
    env.beta_ok = beta >= 0.2;
    return env;
}

ChainPrediction chain_prediction(const PhysParams& params, double xi, double C_prime) {
    if (!(C_prime > 0.0)) throw validation_error("chain_prediction: C' must be > 0");
    if (!(xi > 0.0)) throw validation_error("chain_prediction: xi must be > 0");
    const double x = C_prime * params.c * xi;
    ChainPrediction pred;
    pred.k_opt = static_cast<int>(std::llround(std::sqrt(x)));
    pred.stirling_sqrt = std::sqrt(x);
    pred.no_chain = pred.k_opt < 1;
    pred.log_product_exact =
        pred.no_chain ? 0.0 : pred.k_opt * std::log(x) - 2.0 * std::lgamma(pred.k_opt + 1.0);
    return pred;
}

namespace {

ScalingFit fit_impl(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 4)
        throw validation_error("fit_sqrt_scaling: insufficient data points (need >= 4)");
    const int n = static_cast<int>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [xi, y] : pts) {
        if (!(xi > 0.0)) throw validation_error("fit_sqrt_scaling: xi must be > 0");
        const double x = std::sqrt(xi);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (!(std::abs(det) > 1e-12 * n * sxx))
        throw validation_error("fit_sqrt_scaling: degenerate design matrix (all xi equal)");
    ScalingFit fit;
    fit.n_points = n;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& [xi, y] : pts) {
        const double yhat = fit.intercept + fit.slope * std::sqrt(xi);
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace

ScalingFit fit_sqrt_scaling(const std::vector<std::pair<double, double>>& xi_amp) {
    std::vector<std::pair<double, double>> logged;
    logged.reserve(xi_amp.size());
    for (const auto& [xi, amp] : xi_amp) {
        if (!(amp > 0.0))
            throw validation_error("fit_sqrt_scaling: amplifications must be > 0");
        logged.emplace_back(xi, std::log(amp));
    }
    return fit_impl(logged);
}

ScalingFit fit_sqrt_scaling_log(const std::vector<std::pair<double, double>>& xi_logamp) {
    return fit_impl(xi_logamp);
}

} // namespace mhdecho
