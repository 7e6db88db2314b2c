#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhdecho/errors.hpp"
#include "mhdecho/growth_factor.hpp"

using namespace mhdecho;

namespace {
constexpr double kPi = std::numbers::pi;

double cb_limit(double beta) { return std::pow(8.0 * kPi, -4.0 / 3.0) * std::pow(beta, 16.0 / 3.0); }
} // namespace

TEST_CASE("L_analytic branch values") {
    // K = 2, any beta -> 1
    CHECK(L_analytic({0.7, 2.0, 1e-4}) == 1.0);
    // middle branch: beta = 0.5, c = 1e-4, K = 1e-4
    // boundaries: (1/2) c^{3/4} = 5e-4, (2 pi/beta) c^3 = 1.26e-11
    CHECK(L_analytic({0.5, 1e-4, 1e-4}) == doctest::Approx(2.0 * (1.0 + kPi / 0.5)));
    // K below (2 pi / beta) c^3 -> 1
    CHECK(L_analytic({0.5, 1e-12, 1e-4}) == 1.0);
    // sqrt(d) branch
    CHECK(L_analytic({0.5, 1e-3, 1e-4}) == doctest::Approx(100.0));
    // boundary K = 1 takes the max of adjacent branches
    CHECK(L_analytic({0.5, 1.0, 1e-4}) == doctest::Approx(100.0));
}

TEST_CASE("L_analytic global bounds under the certifying restriction") {
    for (double beta : {0.3, 0.5, 1.0, 2.0, 4.0}) {
        const double c = std::min(1e-2, cb_limit(beta));
        for (double K = 1e-14; K < 4.0; K *= 7.3) {
            const GrowthFactorQuery q(beta, K, c);
            CHECK(q.certifying());
            CHECK(L_analytic(q) >= 1.0);
            CHECK(L_analytic(q) <= std::sqrt(q.d()) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("U oracle: energy branches stay at 1") {
    // K >= 1 -> |U| <= 1 + 1e-6
    CHECK(U_sup_numeric({0.4, 1.5, 1e-2}, 8, 1e-9) <= 1.0 + 1e-6);
    // beta >= pi/2 -> |U| <= 1 + 1e-6
    CHECK(U_sup_numeric({2.0, 1e-3, 1e-2}, 8, 1e-9) <= 1.0 + 1e-6);
}

TEST_CASE("U oracle stays below the analytic bound") {
    for (double beta : {0.35, 0.8}) {
        const double c = std::min(1e-2, cb_limit(beta));
        for (double K : {1e-5, 1e-3, 0.2}) {
            const GrowthFactorQuery q(beta, K, c);
            const double u = U_sup_numeric(q, 8, 1e-8);
            CHECK(u <= L_analytic(q) * (1.0 + 1e-3));
        }
    }
}

TEST_CASE("query validation") {
    CHECK_THROWS_AS(GrowthFactorQuery(-1.0, 1.0, 1e-2), validation_error);
    CHECK_THROWS_AS(U_sup_numeric({1.0, 1.0, 1e-2}, 4, 1e-8), validation_error);
}
