#include "mhdecho/model.hpp"

#include <algorithm>
#include <cmath>

#include "mhdecho/errors.hpp"

namespace mhdecho {

PhysParams::PhysParams(double alpha_, double kappa_, double c_)
    : alpha(alpha_), kappa(kappa_), c(c_) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw validation_error("PhysParams: alpha must be >= 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw validation_error("PhysParams: kappa must be > 0");
    if (!(c >= 0.0) || !std::isfinite(c))
        throw validation_error("PhysParams: c must be >= 0");
}

PhysParams PhysParams::from_beta(double beta, double kappa, double c) {
    if (!(beta > 0.0)) throw validation_error("PhysParams: beta must be > 0");
    if (!(kappa > 0.0)) throw validation_error("PhysParams: kappa must be > 0");
    return PhysParams(std::sqrt(kappa / beta), kappa, c);
}

double PhysParams::beta() const {
    if (alpha == 0.0)
        throw validation_error("PhysParams: beta undefined for alpha = 0");
    return kappa / (alpha * alpha);
}

double PhysParams::d() const {
    if (c == 0.0) throw validation_error("PhysParams: d undefined for c = 0");
    return 1.0 / c;
}

bool PhysParams::upper_bound_regime() const {
    const double b = beta();
    return c <= std::min(1e-3 * std::pow(b, 16.0 / 3.0), 1e-4);
}

bool PhysParams::lower_bound_regime() const {
    return upper_bound_regime() && beta() >= 0.2;
}

ModeIndex::ModeIndex(int k_, double xi_) : k(k_), xi(xi_) {
    if (k < 0) throw validation_error("ModeIndex: k must be >= 0");
    if (!(xi > 0.0)) throw validation_error("ModeIndex: xi must be > 0");
}

SpectralWeight SpectralWeight::ell2(int k_max) {
    if (k_max < 0) throw validation_error("SpectralWeight: k_max must be >= 0");
    SpectralWeight w;
    w.lambda.assign(static_cast<size_t>(k_max) + 1, 1.0);
    w.lambda_hat = 1.0;
    return w;
}

SpectralWeight SpectralWeight::sobolev(int k_max, double s) {
    if (k_max < 0) throw validation_error("SpectralWeight: k_max must be >= 0");
    std::vector<double> lam(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        lam[static_cast<size_t>(k)] = std::pow(1.0 + double(k) * double(k), s);
    return from_sequence(std::move(lam));
}

SpectralWeight SpectralWeight::from_sequence(std::vector<double> lambda) {
    if (lambda.empty()) throw validation_error("SpectralWeight: empty weight");
    double hat = 1.0;
    for (const double l : lambda)
        if (!(l > 0.0)) throw validation_error("SpectralWeight: weights must be > 0");
    for (size_t k = 0; k + 1 < lambda.size(); ++k) {
        const double r = lambda[k + 1] / lambda[k];
        hat = std::max(hat, std::max(r, 1.0 / r));
    }
    if (!(hat < 10.0))
        throw validation_error("SpectralWeight: adjacent ratio bound lambda_hat must be < 10");
    SpectralWeight w;
    w.lambda = std::move(lambda);
    w.lambda_hat = hat;
    return w;
}

GammaExponents GammaExponents::from_c(double c) {
    const double c2 = c * c;
    if (!(8.0 * c2 <= 1.0))
        throw validation_error("GammaExponents: require 8 c^2 <= 1");
    GammaExponents g;
    g.gamma = std::sqrt(1.0 - 8.0 * c2);
    g.gamma1 = 0.5 * (1.0 + g.gamma);
    g.gamma2 = 4.0 * c2 / (1.0 + g.gamma); // = (1-gamma)/2 without cancellation
    return g;
}

IntervalPartition interval_partition(double xi, int k_max) {
    if (!(xi > 0.0)) throw validation_error("interval_partition: xi must be > 0");
    if (k_max < 1) throw validation_error("interval_partition: k_max must be >= 1");
    IntervalPartition part;
    part.xi = xi;
    part.boundaries.resize(static_cast<size_t>(k_max) + 1);
    part.boundaries[0] = 2.0 * xi;
    for (int k = 1; k <= k_max; ++k)
        part.boundaries[static_cast<size_t>(k)] = 0.5 * xi * (1.0 / (k + 1.0) + 1.0 / k);
    part.intervals.reserve(static_cast<size_t>(k_max));
    for (int k = k_max; k >= 1; --k)
        part.intervals.push_back({k, part.boundaries[static_cast<size_t>(k)],
                                  part.boundaries[static_cast<size_t>(k) - 1]});
    return part;
}

double coefficient_a(int k, double t, double xi, double c) {
    if (k == 0) return 0.0; // pinned average mode
    const double kk = static_cast<double>(k);
    const double delta = xi / kk - t;
    return c * (xi / (kk * kk)) / (1.0 + delta * delta);
}

double coefficient_b(int k, double t, double xi, double kappa) {
    const double kk = static_cast<double>(k);
    const double delta = t - xi / kk;
    const double one_p = 1.0 + delta * delta;
    return 2.0 * delta / one_p - kappa * kk * kk * one_p;
}

double coefficient_b_deriv(int k, double t, double xi, double kappa) {
    const double kk = static_cast<double>(k);
    const double delta = t - xi / kk;
    const double one_p = 1.0 + delta * delta;
    return 2.0 * (1.0 - delta * delta) / (one_p * one_p) - 2.0 * kappa * kk * kk * delta;
}

double coefficient_b_integral(int k, double t0, double t1, double xi, double kappa) {
    const double kk = static_cast<double>(k);
    const double d0 = t0 - xi / kk;
    const double d1 = t1 - xi / kk;
    const double dt = t1 - t0;
    // log((1+d1^2)/(1+d0^2)) = log1p((d1-d0)(d1+d0)/(1+d0^2))
    const double log_ratio = std::log1p(dt * (d1 + d0) / (1.0 + d0 * d0));
    const double cubic = dt * (d1 * d1 + d1 * d0 + d0 * d0) / 3.0;
    return log_ratio - kappa * kk * kk * (dt + cubic);
}

bool b_positive_window(double kappa_k2, double t_res, double& lo, double& hi) {
    // max over d of 2d/(1+d^2)^2 is attained at d = 1/sqrt(3) with value
    // 3 sqrt(3)/8; no sign change for stronger dissipation.
    if (kappa_k2 >= 0.6495) return false;
    lo = t_res - 0.01;
    hi = t_res + std::cbrt(2.0 / kappa_k2) + 0.01;
    return true;
}

double x_norm(std::span<const double> w, std::span<const double> j,
              const SpectralWeight& weight, const PhysParams& params,
              NormVariant variant) {
    if (w.size() != j.size())
        throw validation_error("x_norm: w and j length mismatch");
    if (weight.lambda.size() < w.size())
        throw validation_error("x_norm: weight does not cover the lattice k-range");
    double sum = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
        double jfac = 1.0;
        if (variant == NormVariant::rescaled) {
            if (k == 0) {
                sum += weight.lambda[k] * w[k] * w[k];
                continue;
            }
            jfac = params.beta() / (params.kappa * double(k) * double(k));
        }
        sum += weight.lambda[k] * (w[k] * w[k] + jfac * j[k] * j[k]);
    }
    return std::sqrt(sum);
}

double gevrey_functional(std::vector<std::pair<double, double>> per_xi_norms, double C) {
    if (per_xi_norms.size() < 2)
        throw validation_error("gevrey_functional: need at least 2 samples");
    std::sort(per_xi_norms.begin(), per_xi_norms.end());
    for (size_t i = 0; i < per_xi_norms.size(); ++i) {
        const auto& [xi, nrm] = per_xi_norms[i];
        if (!(xi > 0.0)) throw validation_error("gevrey_functional: xi samples must be > 0");
        if (nrm < 0.0) throw validation_error("gevrey_functional: norms must be >= 0");
        if (i > 0 && !(xi > per_xi_norms[i - 1].first))
            throw validation_error("gevrey_functional: xi samples must be distinct");
    }
    auto f = [C](const std::pair<double, double>& p) {
        return std::exp(C * std::sqrt(p.first)) * p.second * p.second;
    };
    double acc = 0.0;
    for (size_t i = 0; i + 1 < per_xi_norms.size(); ++i) {
        const double dx = per_xi_norms[i + 1].first - per_xi_norms[i].first;
        acc += 0.5 * dx * (f(per_xi_norms[i]) + f(per_xi_norms[i + 1]));
    }
    return acc;
}

} // namespace mhdecho
