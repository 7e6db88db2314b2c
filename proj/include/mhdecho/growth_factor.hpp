#ifndef MHDECHO_GROWTH_FACTOR_HPP
#define MHDECHO_GROWTH_FACTOR_HPP

namespace mhdecho {

/// Query point for the resonant-mode growth factor. K plays the role of the
/// effective dissipation kappa k^2; d = 1/c is the core interval half-width.
struct GrowthFactorQuery {
    double beta;
    double K;
    double c;

    GrowthFactorQuery(double beta_, double K_, double c_);

    double d() const { return 1.0 / c; }
    /// c <= (8 pi)^{-4/3} beta^{16/3}, required for certifying queries.
    bool certifying() const;
};

/// Piecewise analytic bound on the propagator supremum:
///   1                for K >= 1
///   sqrt(d)          for (1/2) c^{3/4} <= K <= 1
///   2 (1 + pi/beta)  for (2 pi/beta) c^3 <= K <= (1/2) c^{3/4}
///   1                for K <= (2 pi/beta) c^3
/// At exact branch boundaries the maximum of the adjacent branches is taken.
double L_analytic(const GrowthFactorQuery& q);

/// Brute-force oracle: for tau on a `grid`-point mesh of [-d, d], integrates
///   u' = -j,  j' = (K/beta) u + (2s/(1+s^2) - K(1+s^2)) j
/// from tau to d with u(tau) = 1, j(tau) = 0, and returns the maximum of
/// |u(s)| over all tau and s.
double U_sup_numeric(const GrowthFactorQuery& q, int grid, double rtol = 1e-8);

} // namespace mhdecho

#endif
