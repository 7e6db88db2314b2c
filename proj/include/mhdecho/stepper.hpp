#ifndef MHDECHO_STEPPER_HPP
#define MHDECHO_STEPPER_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace mhdecho {

/// Right-hand side description for systems of the form
///   w' = f(t, w, j)                    (slow block)
///   j_i' = b_i(t) j_i + s_i(t, w)      (stiff block, diagonal in j)
/// where each b_i has a closed-form antiderivative. All model systems of this
/// project (traveling wave, single mode, toy model, echo lattice, growth
/// factor propagator) fit this shape.
class StiffPairSystem {
  public:
    virtual ~StiffPairSystem() = default;

    virtual int n_slow() const = 0;
    virtual int n_stiff() const = 0;

    virtual void slow_rhs(double t, std::span<const double> w,
                          std::span<const double> j, std::span<double> dw) const = 0;

    /// s_i(t, w), the source feeding the stiff block.
    virtual void stiff_source(double t, std::span<const double> w,
                              std::span<double> s) const = 0;

    virtual void stiff_coeffs(double t, std::span<double> b) const = 0;
    virtual void stiff_coeff_derivs(double t, std::span<double> db) const = 0;

    /// Batched integral of b_i from t0 to t1 in a cancellation-free form.
    virtual void stiff_log_decays(double t0, double t1, std::span<double> out) const = 0;

    virtual double stiff_coeff(int i, double t) const = 0;
    virtual double stiff_log_decay(int i, double t0, double t1) const = 0;

    /// Upper bound on the step size near t (resonance-core resolution etc.).
    virtual double max_step_hint(double /*t*/) const {
        return std::numeric_limits<double>::infinity();
    }

    /// If the stiff coefficient i has a sign change (growth bump), return the
    /// bump's time window [lo, hi]; used to keep asymptotic steps off it.
    /// Default: no bump.
    virtual bool stiff_positive_window(int /*i*/, double& /*lo*/, double& /*hi*/) const {
        return false;
    }
};

struct StepperOptions {
    double rtol = 1e-8;
    double atol = 0.0;
    /// Error-scale floor as a fraction of the block maximum: components are
    /// controlled relative to max(|y_i|, floor * max_block |y|), which keeps
    /// modes being born from zero from stalling the controller.
    double scale_floor = 1e-3;
    double h_init = 0.0; // 0 = automatic
    double h_max = std::numeric_limits<double>::infinity();
    std::uint64_t max_steps = 200'000'000;
};

struct StepperStats {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t rhs_evals = 0;
};

/// Called after every accepted step with the new time and state.
using StepCallback = std::function<void(double t, std::span<const double> w,
                                        std::span<const double> j)>;

/// Embedded 3(2) exponential Runge-Kutta stepper (Bogacki-Shampine weights on
/// the slow block). The stiff diagonal is propagated by its exact integrating
/// factor; the stiff source is integrated against the exact decay kernel,
/// either by panelled Gauss-Legendre quadrature or, when the decay over the
/// step is strong, by an integration-by-parts expansion around the slaved
/// solution j = -s/b. Steps land exactly on t_end.
class ExpRk32 {
  public:
    explicit ExpRk32(StepperOptions opts = {}) : opts_(opts) {}

    /// Advance (w, j) in place from t0 to t1 (t1 > t0). Throws step_underflow,
    /// nonfinite_state or numerical_error on failure.
    void integrate(const StiffPairSystem& sys, std::vector<double>& w,
                   std::vector<double>& j, double t0, double t1,
                   const StepCallback& on_accept = {});

    const StepperStats& stats() const { return stats_; }
    StepperOptions& options() { return opts_; }

  private:
    enum class JClass : unsigned char { quad, slaved, split };

    struct Work; // per-integration scratch

    StepperOptions opts_;
    StepperStats stats_;
};

} // namespace mhdecho

#endif
