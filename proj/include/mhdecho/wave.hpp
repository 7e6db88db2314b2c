#ifndef MHDECHO_WAVE_HPP
#define MHDECHO_WAVE_HPP

#include <vector>

#include "mhdecho/model.hpp"

namespace mhdecho {

/// Traveling-wave amplitude pair (f, g) at time t, solving
///   f' = -alpha g,   g' = -kappa (1+t^2) g + alpha f + 2t/(1+t^2) g.
struct WaveState {
    double t;
    double f;
    double g;

    double energy() const { return f * f + g * g; }
};

/// Integrate the wave ODE forward from `initial` to t_end, sampled on the
/// integrator's accepted steps (first entry is the initial state).
std::vector<WaveState> evolve_wave(const WaveState& initial, const PhysParams& params,
                                   double t_end, double rtol = 1e-10);

/// Special data of the large-time wave estimates: integrates backward from
/// (f, g) = (1, 0) at t0 = 4/beta to t = 0 and returns the state at t = 0.
/// Forward re-integration from the result recovers (1, 0) at t0.
WaveState wave_special_data(const PhysParams& params, double rtol = 1e-10);

} // namespace mhdecho

#endif
