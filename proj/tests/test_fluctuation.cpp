#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace leland;

namespace {
const double kQ = 0.075;
const double kLambda = 4.0;
} // namespace

TEST_CASE("gamma: passage transform below zero") {
    FluctuationContext simple(LevyModel(std::sqrt(2.0), 0.0));
    // Phi(1) = 1 for psi = theta^2
    CHECK(gamma_fn(simple, std::log(2.0), 1.0) == doctest::Approx(0.5).epsilon(1e-12));

    FluctuationContext ctx(baseline_model());
    CHECK(gamma_fn(ctx, 0.0, kQ) == 0.0);
    double prev = -1.0;
    for (double x = 0.0; x <= 5.0; x += 0.25) {
        double g = gamma_fn(ctx, x, kQ);
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
        CHECK(g > prev);
        prev = g;
    }
    for (double x : {0.2, 1.0, 3.0}) {
        double h = 1e-6;
        double fd = (gamma_fn(ctx, x + h, kQ) - gamma_fn(ctx, x - h, kQ)) / (2.0 * h);
        CHECK(gamma_deriv(ctx, x, kQ) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK_THROWS_AS(gamma_fn(ctx, -0.1, kQ), std::domain_error);
}

TEST_CASE("g: occupation above a level until passage") {
    FluctuationContext ctx(baseline_model());
    double a = 0.7;

    // zero time elapsed when started at the boundary
    CHECK(g_fn(ctx, 0.0, kQ, a) == doctest::Approx(0.0).epsilon(1e-12));
    // a <= 0 counts all time before passage: g = gamma / q
    for (double x : {0.5, 1.5}) {
        CHECK(g_fn(ctx, x, kQ, 0.0) ==
              doctest::Approx(gamma_fn(ctx, x, kQ) / kQ).epsilon(1e-12));
        CHECK(g_fn(ctx, x, kQ, -2.0) ==
              doctest::Approx(gamma_fn(ctx, x, kQ) / kQ).epsilon(1e-12));
    }
    // bounds and monotonicity in x
    double prev = -1.0;
    for (double x = 0.0; x <= 4.0; x += 0.2) {
        double g = g_fn(ctx, x, kQ, a);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0 / kQ + 1e-12);
        CHECK(g >= prev);
        prev = g;
    }
    // derivative against central differences away from the kink
    for (double x : {0.3, 1.3, 2.6}) {
        double h = 1e-6;
        double fd = (g_fn(ctx, x + h, kQ, a) - g_fn(ctx, x - h, kQ, a)) / (2.0 * h);
        CHECK(g_deriv(ctx, x, kQ, a) == doctest::Approx(fd).epsilon(1e-6));
    }
    // closed form at x = 0
    double phi = phi_inverse(baseline_model(), kQ);
    auto rep = build_scale_function(baseline_model(), kQ);
    CHECK(g_deriv(ctx, 0.0, kQ, a) ==
          doctest::Approx(phi / kQ + phi * rep.W_bar(a) - rep.W(a)).epsilon(1e-12));
    // one-sided values at the kink agree for an unbounded-variation model
    CHECK(g_deriv(ctx, a, kQ, a, Side::Right) ==
          doctest::Approx(g_deriv(ctx, a, kQ, a, Side::Left)).epsilon(1e-9));
}

TEST_CASE("J: first observed passage transform") {
    FluctuationContext ctx(baseline_model());
    double phi_q = ctx.phi(kQ);
    double phi_lq = ctx.phi(kLambda + kQ);

    CHECK(J_fn(ctx, 0.0, kQ, 0.0, kLambda) ==
          doctest::Approx((phi_lq - phi_q) / phi_lq).epsilon(1e-12));
    // decreasing in beta, bounded in (0,1)
    double prev = 2.0;
    for (double beta : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        double j = J_fn(ctx, 0.4, kQ, beta, kLambda);
        CHECK(j > 0.0);
        CHECK(j < 1.0);
        CHECK(j < prev);
        prev = j;
    }
    for (double x : {0.1, 0.8, 2.0}) {
        double h = 1e-7;
        double fd =
            (J_fn(ctx, x + h, kQ, 1.0, kLambda) - J_fn(ctx, x - h, kQ, 1.0, kLambda)) /
            (2.0 * h);
        CHECK(J_deriv(ctx, x, kQ, 1.0, kLambda) == doctest::Approx(fd).epsilon(1e-7));
        CHECK(J_deriv(ctx, x, kQ, 1.0, kLambda) ==
              doctest::Approx(-phi_q * J_fn(ctx, x, kQ, 1.0, kLambda)).epsilon(1e-12));
    }
    // frequent observation recovers the continuous passage transform
    for (double x : {0.2, 1.0, 2.5}) {
        double j = J_fn(ctx, x, kQ, 0.0, 1e7);
        CHECK(j == doctest::Approx(1.0 - gamma_fn(ctx, x, kQ)).epsilon(1e-3));
    }
    CHECK_THROWS_AS(J_fn(ctx, -0.1, kQ, 0.0, kLambda), std::domain_error);
    CHECK_THROWS_AS(J_fn(ctx, 1.0, kQ, 0.0, 0.0), std::domain_error);
}

TEST_CASE("Lambda: occupation above the tax threshold, observed passage") {
    FluctuationContext ctx(baseline_model());
    double z = std::log(36.0), V_T = 58.3;

    // V_T = 0 counts all time: (1 - J)/q
    for (double x : {z, z + 0.5, z + 2.0}) {
        CHECK(Lambda_fn(ctx, x, z, kQ, kLambda, 0.0) ==
              doctest::Approx((1.0 - J_fn(ctx, x - z, kQ, 0.0, kLambda)) / kQ)
                  .epsilon(1e-12));
    }
    CHECK(Lambda_diag(ctx, z, kQ, kLambda, 0.0) ==
          doctest::Approx(ctx.phi(kQ) / (kQ * ctx.phi(kLambda + kQ))).epsilon(1e-12));

    // diagonal consistency between the two code paths
    for (double zz : {std::log(20.0), std::log(36.0), std::log(80.0)}) {
        CHECK(Lambda_fn(ctx, zz, zz, kQ, kLambda, V_T) ==
              doctest::Approx(Lambda_diag(ctx, zz, kQ, kLambda, V_T)).epsilon(1e-12));
    }

    // bounds and monotonicity in the start point
    double prev = -1.0;
    for (double x = z; x <= z + 4.0; x += 0.2) {
        double v = Lambda_fn(ctx, x, z, kQ, kLambda, V_T);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 / kQ + 1e-12);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    // raising the threshold can only shrink the occupation
    double lo = Lambda_fn(ctx, z + 1.0, z, kQ, kLambda, 30.0);
    double hi = Lambda_fn(ctx, z + 1.0, z, kQ, kLambda, 90.0);
    CHECK(hi <= lo);

    // frequent observation recovers the continuous-passage occupation g
    for (double x : {z + 0.3, z + 1.0, z + 2.0}) {
        double lam = 1e6;
        double v = Lambda_fn(ctx, x, z, kQ, lam, V_T);
        double expect = g_fn(ctx, x - z, kQ, std::log(V_T) - z);
        CHECK(v == doctest::Approx(expect).epsilon(2e-3));
    }

    CHECK_THROWS_AS(Lambda_fn(ctx, z - 0.1, z, kQ, kLambda, V_T), std::domain_error);
}

TEST_CASE("R: resolvent below the barrier") {
    FluctuationContext ctx(baseline_model());
    double phi_q = ctx.phi(kQ);
    double phi_lq = ctx.phi(kLambda + kQ);

    // for y > 0 the scale-function term drops and R is a pure exponential
    for (double x : {-2.0, -0.5, 0.0}) {
        for (double y : {0.5, 1.5}) {
            double expect = (phi_lq - phi_q) / kLambda * std::exp(phi_q * x - phi_lq * y);
            CHECK(R_fn(ctx, x, y, kQ, kLambda) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    // densities are non-negative
    for (double x : {-1.5, -0.7, -0.1}) {
        for (double y = -4.0; y <= 3.0; y += 0.25) {
            CHECK(R_fn(ctx, x, y, kQ, kLambda) >= -1e-12);
        }
    }
    // total discounted mass before the first observed passage stays below 1/q
    // (domain clipped at -10: further out the two exponentially growing terms
    // cancel beyond double precision)
    for (double x : {-1.0, -0.3}) {
        double total = simpson(
            [&](double y) { return R_fn(ctx, x, y, kQ, kLambda); }, -10.0, 6.0, 6400);
        CHECK(total > 0.0);
        CHECK(total < 1.0 / kQ);
    }
    CHECK_THROWS_AS(R_fn(ctx, 0.1, 0.0, kQ, kLambda), std::domain_error);
}
