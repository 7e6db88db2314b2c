#ifndef MHDECHO_TOY_HPP
#define MHDECHO_TOY_HPP

#include <vector>

#include "mhdecho/model.hpp"

namespace mhdecho {

/// State of the 4-variable reduced resonance model: resonant pair
/// (w_k, j_k) and downstream pair (w_km1, j_km1).
struct ToyState {
    double t;
    double w_k;
    double j_k;
    double w_km1;
    double j_km1;
};

struct ToyResult {
    std::vector<ToyState> trajectory; // accepted steps, t_k .. t_{k-1}
    bool hypotheses_met;              // beta >= pi, k >= 2, xi >= 10 max(1/kappa, k^2/c)
    double upper_bound;               // 2 pi c xi / k^2
    double lower_bound;               // (pi/2) c xi / k^2
    double eta;                       // xi / k^2

    const ToyState& terminal() const { return trajectory.back(); }
};

/// Integrate the toy model over the resonant interval (t_k, t_{k-1}) with
/// initial data w_k = 1 and zeros elsewhere. Hypothesis violations mark the
/// result non-certifying (hypotheses_met = false) but do not abort.
ToyResult evolve_toy(const PhysParams& params, int k, double xi, double rtol = 1e-9);

/// Maximum absolute residual of the integral identity
///   w(k,s) = 1 - (1/beta) int_{s0}^{s} w(k,tau)/(1+tau^2)
///                (1 - exp(-kappa k^2 ((s-tau) + (s^3-tau^3)/3))) dtau
/// evaluated by trapezoidal quadrature along the trajectory (shifted time
/// s = t - xi/k).
double toy_w_relation_residual(const ToyResult& result, const PhysParams& params, int k,
                               double xi);

} // namespace mhdecho

#endif
