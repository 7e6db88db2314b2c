#ifndef MHDECHO_LATTICE_HPP
#define MHDECHO_LATTICE_HPP

#include <functional>
#include <vector>

#include "mhdecho/analysis.hpp"
#include "mhdecho/model.hpp"

namespace mhdecho {

/// Truncated mode lattice for a fixed xi: real amplitudes w(k), j(k) over
/// k = 0..k_max with the k = 0 average mode pinned to zero. log_scale records
/// factors divided out of the state to keep it representable; the physical
/// amplitudes are exp(log_scale) times the stored values.
struct ModeLattice {
    double xi = 0.0;
    int k_max = 0;
    double t = 0.0;
    std::vector<double> w; // index k = 0..k_max
    std::vector<double> j;
    double log_scale = 0.0;

    static ModeLattice zero(double xi, int k_max, double t0);
};

struct TruncationPolicy {
    int k_max;
    double tail_monitor_threshold = 1e-8;
};

/// Per-resonant-interval amplification record. Norms and mode values are in
/// the rescaled frame; log_scale_in restores absolute magnitudes.
struct IntervalReport {
    int k;
    double t_start, t_end;
    double norm_in, norm_out;
    double amplification; // norm_out / norm_in
    double eta;           // xi / k^2
    double envelope_upper;
    double envelope_lower;
    bool lower_hypotheses_met;

    double w_in;       // |w(k, t_k)|
    double w_out;      // |w(k-1, t_{k-1})|, 0 for k = 1 (pinned target)
    bool echo_cond_in; // w(k, t_k) >= 1/2 max_l max(|w|, |j|)
    double log_scale_in;
};

/// Advance the lattice to t_end. The stiff current diagonal uses its exact
/// integrating factor; a tail alarm is raised when the lambda-weighted mass of
/// the top three modes exceeds policy.tail_monitor_threshold of the total.
void evolve_lattice(ModeLattice& state, const PhysParams& params,
                    const SpectralWeight& weight, double t_end,
                    const TruncationPolicy& policy, double rtol,
                    const std::function<void(const ModeLattice&)>& on_step = {});

struct ChainOptions {
    double rtol = 1e-9;
    /// Stop at the first interval whose lower-bound hypotheses fail, provided
    /// they held at k_start (otherwise the chain runs to k = 1).
    bool stop_on_hypothesis_failure = true;
    int k_stop = 1; // do not descend below this mode
    /// Called at every interval boundary with the current state.
    std::function<void(const ModeLattice&)> on_boundary = {};
};

struct ChainResult {
    std::vector<IntervalReport> reports;
    ModeLattice state;     // final state
    int k_end = 0;         // mode at which the chain stopped
    double log_amp_terminal = 0.0; // log |w(k_end, t_{k_end})| incl. scale
};

/// Run the echo chain: w = delta_{k_start}, j = 0 at t_{k_start}, evolving
/// interval by interval and emitting one report per I^k.
ChainResult run_echo_chain(const PhysParams& params, double xi, int k_start,
                           const SpectralWeight& weight, const TruncationPolicy& policy,
                           const ChainOptions& opts = {});

/// X norm of the lattice state in the rescaled frame (excludes log_scale).
double x_norm(const ModeLattice& state, const SpectralWeight& weight,
              const PhysParams& params, NormVariant variant = NormVariant::unscaled);

} // namespace mhdecho

#endif
