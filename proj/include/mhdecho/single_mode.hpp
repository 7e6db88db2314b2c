#ifndef MHDECHO_SINGLE_MODE_HPP
#define MHDECHO_SINGLE_MODE_HPP

#include <vector>

#include "mhdecho/model.hpp"

namespace mhdecho {

/// One Fourier mode of the decoupled linearized system around the stationary
/// state, in the relabeled real variables:
///   w' = -alpha k j,   j' = b(k,t) j + alpha k w.
struct SingleModeState {
    double t;
    double w;
    double j;

    double energy() const { return w * w + j * j; }
};

std::vector<SingleModeState> evolve_single_mode(const ModeIndex& mode,
                                                const PhysParams& params, double w0,
                                                double j0, double t_end,
                                                double rtol = 1e-10, double t_start = 0.0);

/// Horizon past which the mode energy is provably non-increasing:
/// xi/k + 10 (kappa k^2)^{-1/3}.
double default_single_mode_horizon(const ModeIndex& mode, const PhysParams& params);

/// Maximum of energy(t)/energy(0) over `samples` equally spaced unit-energy
/// initial angles and over t in [0, t_end].
double stability_ratio(const ModeIndex& mode, const PhysParams& params, int samples,
                       double t_end, double rtol = 1e-10);

} // namespace mhdecho

#endif
