#ifndef MHDECHO_MODEL_HPP
#define MHDECHO_MODEL_HPP

#include <span>
#include <utility>
#include <vector>

namespace mhdecho {

/// Physical/model constants of the linearized system around a traveling wave.
/// alpha is the magnetic field strength, kappa the magnetic resistivity and c
/// the wave amplitude. beta = kappa/alpha^2 and d = 1/c are derived.
struct PhysParams {
    double alpha;
    double kappa;
    double c;

    PhysParams(double alpha_, double kappa_, double c_);

    /// Construct from (beta, kappa, c) with alpha = sqrt(kappa/beta).
    static PhysParams from_beta(double beta, double kappa, double c);

    double beta() const; // throws validation_error if alpha == 0
    double d() const;    // = 1/c, throws validation_error if c == 0

    /// Hypothesis of the upper-bound theorem: c <= min(1e-3 beta^{16/3}, 1e-4).
    bool upper_bound_regime() const;
    /// Lower-bound (echo) regime additionally requires beta >= 1/5.
    bool lower_bound_regime() const;
};

/// Horizontal wavenumber k >= 0 and vertical frequency xi > 0.
/// k = 0 is only used as the pinned average mode.
struct ModeIndex {
    int k;
    double xi;

    ModeIndex(int k_, double xi_);
};

/// Weight sequence lambda_k > 0 defining the X norm, with the adjacent-ratio
/// bound lambda_hat = sup_k lambda_{k+-1}/lambda_k < 10 checked at construction.
struct SpectralWeight {
    std::vector<double> lambda; // indexed by k = 0..k_max
    double lambda_hat;

    static SpectralWeight ell2(int k_max);
    /// Polynomial weight lambda_k = (1+k^2)^s.
    static SpectralWeight sobolev(int k_max, double s);
    static SpectralWeight from_sequence(std::vector<double> lambda);
};

/// gamma = sqrt(1-8c^2), gamma1 = (1+gamma)/2, gamma2 = (1-gamma)/2.
/// gamma2 is evaluated as 4c^2/(1+gamma) to avoid cancellation, so that
/// gamma1*gamma2 = 2c^2 holds to machine precision.
struct GammaExponents {
    double gamma;
    double gamma1;
    double gamma2;

    static GammaExponents from_c(double c);
};

/// Resonant-interval boundaries t_k for a fixed xi > 0:
/// t_k = (xi/2)(1/(k+1) + 1/k) for k >= 1, t_0 = 2 xi.
/// The interval I^k = (t_k, t_{k-1}) contains the resonant time xi/k.
struct IntervalPartition {
    struct Interval {
        int k;
        double t_start; // = t_k
        double t_end;   // = t_{k-1}
    };

    double xi;
    std::vector<double> boundaries; // boundaries[k] = t_k, k = 0..k_max
    std::vector<Interval> intervals; // time-ascending, i.e. k = k_max down to 1
};

IntervalPartition interval_partition(double xi, int k_max);

/// Coupling coefficient a(k,t) = c (xi/k^2) / (1 + (xi/k - t)^2).
/// Multiplies w(k) in the equations for its neighbors w(k -+ 1).
/// k = 0 returns 0 by the pinned-average convention.
double coefficient_a(int k, double t, double xi, double c);

/// Current damping/growth coefficient
/// b(k,t) = 2 (t - xi/k)/(1 + (xi/k - t)^2) - kappa k^2 (1 + (xi/k - t)^2).
double coefficient_b(int k, double t, double xi, double kappa);

/// db/dt, used by the stiff-source expansion in the integrator.
double coefficient_b_deriv(int k, double t, double xi, double kappa);

/// Integral of b(k,.) from t0 to t1 in closed form, evaluated without
/// cancellation for large times:
///   log((1+d1^2)/(1+d0^2)) - kappa k^2 ((t1-t0) + (d1^3-d0^3)/3),  d = t - xi/k.
double coefficient_b_integral(int k, double t0, double t1, double xi, double kappa);

/// Conservative time window containing the region where a coefficient of the
/// form 2 d/(1+d^2) - kappa_k2 (1+d^2), d = t - t_res, is positive. Returns
/// false when kappa_k2 >= 2/(3 sqrt(3)) * ... i.e. no positive region exists.
bool b_positive_window(double kappa_k2, double t_res, double& lo, double& hi);

enum class NormVariant {
    unscaled, // sqrt(sum lambda_k (w^2 + j^2))
    rescaled  // sqrt(sum lambda_k (w^2 + beta/(kappa k^2) j^2)), k=0 term uses w only
};

/// Weighted X norm over mode amplitude spans. w and j must have equal length
/// and the weight must cover that range (throws validation_error otherwise).
double x_norm(std::span<const double> w, std::span<const double> j,
              const SpectralWeight& weight, const PhysParams& params,
              NormVariant variant = NormVariant::unscaled);

/// Trapezoidal approximation of the Gevrey-2 energy functional
/// integral exp(C sqrt(xi)) norm(xi)^2 dxi over the sampled grid.
/// Requires >= 2 samples with distinct positive xi and norms >= 0.
double gevrey_functional(std::vector<std::pair<double, double>> per_xi_norms, double C);

} // namespace mhdecho

#endif
