#ifndef MHDECHO_ANALYSIS_HPP
#define MHDECHO_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "mhdecho/model.hpp"

namespace mhdecho {

/// Analytic per-interval amplification envelopes and the hypothesis flags of
/// the upper/lower bound theorem, evaluated at eta = xi/k^2.
struct EnvelopeSpec {
    double upper_constant; // 18 pi L lambda_hat
    double exponent;       // gamma = sqrt(1-8c^2)
    double lower_constant; // min(beta, pi)
    double eta;
    double c_eta;

    bool c_ok;           // c <= min(1e-3 beta^{16/3}, 1e-4)
    bool xi_ok;          // xi >= 10 kappa^{-1} (1 + 1/beta)
    bool eta_ok;         // eta >= 10 d
    bool lower_kappa_ok; // kappa k^2 min(beta,1) >= 1/c
    bool beta_ok;        // beta >= 1/5

    double upper_value() const;
    double lower_value() const;
    bool upper_hypotheses() const { return c_ok && xi_ok && eta_ok; }
    bool lower_hypotheses() const { return upper_hypotheses() && lower_kappa_ok && beta_ok; }
};

EnvelopeSpec interval_envelopes(const PhysParams& params, const SpectralWeight& weight,
                                int k, double xi);

/// Optimal chain length and exact log of the heuristic resonance product
/// prod_{k=1}^{k0} C' c xi / k^2, plus its square-root approximation.
struct ChainPrediction {
    int k_opt;
    double log_product_exact; // k_opt log(C' c xi) - 2 log(k_opt!)
    double stirling_sqrt;     // sqrt(C' c xi)
    bool no_chain;            // k_opt < 1
};

ChainPrediction chain_prediction(const PhysParams& params, double xi, double C_prime);

/// Least-squares fit of log(amplification) against sqrt(xi).
struct ScalingFit {
    double slope;
    double intercept;
    double r_squared;
    int n_points;
};

ScalingFit fit_sqrt_scaling(const std::vector<std::pair<double, double>>& xi_amp);

/// Same fit with amplifications already given as logs (large chains overflow
/// the direct representation).
ScalingFit fit_sqrt_scaling_log(const std::vector<std::pair<double, double>>& xi_logamp);

} // namespace mhdecho

#endif
