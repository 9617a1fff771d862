#include "leland/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace leland {

double K_continuous(const FluctuationContext& ctx, const MarketParams& mkt) {
    return (mkt.rho + mkt.m) / (mkt.r + mkt.m) * ctx.phi(mkt.r + mkt.m) -
           mkt.kappa * mkt.rho / mkt.r * ctx.phi(mkt.r);
}

double C_continuous(const FluctuationContext& ctx, const MarketParams& mkt) {
    return 1.0 + mkt.eta * ctx.phi(mkt.r) + (1.0 - mkt.eta) * ctx.phi(mkt.r + mkt.m);
}

double K_periodic(const FluctuationContext& ctx, const MarketParams& mkt) {
    if (!mkt.lambda) throw std::invalid_argument("K_periodic: lambda is not set");
    double lam = *mkt.lambda;
    return (mkt.rho + mkt.m) / (mkt.r + mkt.m) * ctx.phi(mkt.r + mkt.m) /
               ctx.phi(lam + mkt.r + mkt.m) -
           mkt.kappa * mkt.rho / mkt.r * ctx.phi(mkt.r) / ctx.phi(lam + mkt.r);
}

double C_periodic(const FluctuationContext& ctx, const MarketParams& mkt) {
    if (!mkt.lambda) throw std::invalid_argument("C_periodic: lambda is not set");
    double lam = *mkt.lambda;
    return 1.0 - mkt.eta * J_fn(ctx, 0.0, mkt.r, 1.0, lam) -
           (1.0 - mkt.eta) * J_fn(ctx, 0.0, mkt.r + mkt.m, 1.0, lam);
}

double f_continuous(const FluctuationContext& ctx, const MarketParams& mkt, double v) {
    if (v <= 0.0) throw std::domain_error("f_continuous: v must be > 0");
    double K = K_continuous(ctx, mkt);
    double C = C_continuous(ctx, mkt);
    double bracket = K;
    if (mkt.V_T > 0.0) {
        double y = std::log(mkt.V_T / v);
        const ScaleFunctionRep& rep = ctx.scale(mkt.r);
        bracket += mkt.kappa * mkt.rho * (rep.W(y) - ctx.phi(mkt.r) * rep.W_bar(y));
    }
    return v - bracket * mkt.P / C;
}

namespace {

struct RootResult {
    double root;
    double residual;
    int iterations;
};

// Bisection for a strictly increasing objective on (0, inf).
RootResult bisect_increasing(const std::function<double(double)>& fn, double scale,
                             const char* what) {
    double lo = 1e-8 * scale;
    int shrink = 0;
    while (fn(lo) > 0.0) {
        lo *= 1e-4;
        if (++shrink > 20)
            throw std::runtime_error(std::string(what) + ": no sign change below the bracket");
    }
    double hi = scale;
    while (fn(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error(std::string(what) + ": bracket expansion failed");
    }
    int iter = 0;
    double mid = 0.5 * (lo + hi);
    double value = fn(mid);
    while (hi - lo > 1e-15 * hi && iter < 200) {
        (value <= 0.0 ? lo : hi) = mid;
        mid = 0.5 * (lo + hi);
        value = fn(mid);
        ++iter;
    }
    return {mid, std::abs(value), iter};
}

} // namespace

BarrierSolution solve_barrier_continuous(const FluctuationContext& ctx, const MarketParams& mkt) {
    mkt.validate();
    double K = K_continuous(ctx, mkt);
    if (mkt.V_T == 0.0 && K <= 0.0)
        return {0.0, BarrierRegime::ZeroBarrier, 0.0, 0, ""};
    if (mkt.P == 0.0) return {0.0, BarrierRegime::ZeroBarrier, 0.0, 0, "no debt"};

    double scale = std::max({mkt.P, mkt.V_T, 1.0});
    RootResult res = bisect_increasing([&](double v) { return f_continuous(ctx, mkt, v); },
                                       scale, "solve_barrier_continuous");
    BarrierSolution out{res.root, BarrierRegime::SmoothFitRoot, res.residual, res.iterations, ""};
    // f jumps at V_T in the bounded-variation case; honor the infimum there.
    if (mkt.V_T > 0.0 && res.residual > 1e-10 &&
        std::abs(res.root - mkt.V_T) <= 1e-6 * mkt.V_T) {
        out.barrier = mkt.V_T;
        out.note = "root at the tax-threshold discontinuity; smooth fit not asserted";
    }
    return out;
}

BarrierSolution solve_barrier_periodic(const FluctuationContext& ctx, const MarketParams& mkt) {
    mkt.validate();
    if (!mkt.lambda) throw std::invalid_argument("solve_barrier_periodic: lambda is not set");
    if (mkt.V_T == 0.0 && K_periodic(ctx, mkt) <= 0.0)
        return {0.0, BarrierRegime::ZeroBarrier, 0.0, 0, ""};
    if (mkt.P == 0.0) return {0.0, BarrierRegime::ZeroBarrier, 0.0, 0, "no debt"};

    double scale = std::max({mkt.P, mkt.V_T, 1.0});
    RootResult res = bisect_increasing([&](double v) { return equity_at_barrier(ctx, mkt, v); },
                                       scale, "solve_barrier_periodic");
    return {res.root, BarrierRegime::ContinuousFitRoot, res.residual, res.iterations, ""};
}

namespace {

double golden_max(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

TwoStageSolution two_stage(const FluctuationContext& ctx, MarketParams mkt, double V,
                           ObservationMode mode, TaxThresholdRule vt_rule) {
    if (V <= 0.0) throw std::domain_error("two_stage: V must be > 0");
    bool periodic = (mode == ObservationMode::Periodic);
    if (periodic && !mkt.lambda) throw std::invalid_argument("two_stage: lambda is not set");

    auto with_P = [&](double P) {
        MarketParams m = mkt;
        m.P = P;
        m.V_T = (vt_rule == TaxThresholdRule::ProportionalToP) ? P * m.rho / m.delta : 0.0;
        return m;
    };
    auto barrier_at = [&](double P) -> double {
        if (P <= 0.0) return 0.0;
        MarketParams m = with_P(P);
        return periodic ? solve_barrier_periodic(ctx, m).barrier
                        : solve_barrier_continuous(ctx, m).barrier;
    };
    auto firm_at = [&](double P) -> double {
        if (P <= 0.0) return V;
        MarketParams m = with_P(P);
        double vb = barrier_at(P);
        ValuationResult val = periodic ? value_periodic(ctx, m, V, vb)
                                       : value_continuous(ctx, m, V, vb);
        return val.firm;
    };

    TwoStageSolution out;
    double K = periodic ? K_periodic(ctx, with_P(1.0)) : K_continuous(ctx, with_P(1.0));

    if (vt_rule == TaxThresholdRule::Zero && K <= 0.0) {
        // V(V; 0, P) = V + P kappa rho / r: linear in P, maximal at the cap.
        out.P_star = V;
        out.barrier = 0.0;
        out.firm_value = firm_at(out.P_star);
        out.leverage = out.P_star / V;
        return out;
    }

    double P_max;
    if (vt_rule == TaxThresholdRule::Zero) {
        double C = periodic ? C_periodic(ctx, with_P(1.0)) : C_continuous(ctx, with_P(1.0));
        P_max = V / (K / C); // barrier = (K/C) P stays at or below V
        out.P_star = golden_max(firm_at, 0.0, P_max, 1e-9 * P_max);
    } else {
        P_max = V; // leverage capped at one
        const int n = 40;
        std::vector<double> values(n + 1);
        int best = 0;
        for (int i = 0; i <= n; ++i) {
            values[i] = firm_at(P_max * i / n);
            if (values[i] > values[best]) best = i;
        }
        int maxima = 0;
        for (int i = 1; i < n; ++i)
            if (values[i] > values[i - 1] && values[i] >= values[i + 1]) ++maxima;
        out.non_unimodal_warning = maxima > 1;
        double lo = P_max * std::max(best - 1, 0) / n;
        double hi = P_max * std::min(best + 1, n) / n;
        out.P_star = golden_max(firm_at, lo, hi, 1e-9 * P_max);
    }
    out.barrier = barrier_at(out.P_star);
    out.firm_value = firm_at(out.P_star);
    out.leverage = out.P_star / V;
    return out;
}

} // namespace leland
