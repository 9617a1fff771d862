#include "leland/valuation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leland {

void MarketParams::validate() const {
    if (r <= 0.0) throw std::invalid_argument("market: r must be > 0");
    if (delta < 0.0 || delta >= r) throw std::invalid_argument("market: need 0 <= delta < r");
    if (m <= 0.0) throw std::invalid_argument("market: m must be > 0");
    if (rho <= 0.0) throw std::invalid_argument("market: rho must be > 0");
    if (kappa <= 0.0) throw std::invalid_argument("market: kappa must be > 0");
    if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("market: eta must be in (0,1)");
    if (P < 0.0) throw std::invalid_argument("market: P must be >= 0");
    if (V_T < 0.0) throw std::invalid_argument("market: V_T must be >= 0");
    if (lambda && *lambda <= 0.0) throw std::invalid_argument("market: lambda must be > 0");
}

namespace {

ValuationResult zero_barrier_values(const MarketParams& mkt, double V) {
    // V_B = 0 is only attainable with no tax threshold.
    if (mkt.V_T != 0.0)
        throw std::domain_error("valuation: V_B = 0 requires V_T = 0");
    ValuationResult out;
    out.debt = (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m);
    out.equity = V + (mkt.kappa * mkt.rho / mkt.r - (mkt.rho + mkt.m) / (mkt.r + mkt.m)) * mkt.P;
    out.firm = out.equity + out.debt;
    return out;
}

ValuationResult post_bankruptcy_values(const MarketParams& mkt, double V) {
    ValuationResult out;
    out.firm = (1.0 - mkt.eta) * V;
    out.debt = out.firm;
    out.equity = 0.0;
    return out;
}

} // namespace

ValuationResult value_continuous(const FluctuationContext& ctx, const MarketParams& mkt,
                                 double V, double V_B) {
    mkt.validate();
    if (V <= 0.0) throw std::domain_error("value_continuous: V must be > 0");
    if (V_B < 0.0) throw std::domain_error("value_continuous: V_B must be >= 0");
    if (V_B == 0.0) return zero_barrier_values(mkt, V);
    if (V <= V_B) return post_bankruptcy_values(mkt, V);

    double x = std::log(V / V_B);
    double a = mkt.V_T > 0.0 ? std::log(mkt.V_T / V_B)
                             : -std::numeric_limits<double>::infinity();
    ValuationResult out;
    out.firm = V + mkt.kappa * mkt.rho * mkt.P * g_fn(ctx, x, mkt.r, a) -
               mkt.eta * V_B * (1.0 - gamma_fn(ctx, x, mkt.r));
    double gam_rm = gamma_fn(ctx, x, mkt.r + mkt.m);
    out.debt = (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m) * gam_rm +
               (1.0 - mkt.eta) * V_B * (1.0 - gam_rm);
    out.equity = out.firm - out.debt;
    return out;
}

ValuationResult value_periodic(const FluctuationContext& ctx, const MarketParams& mkt,
                               double V, double V_B) {
    mkt.validate();
    if (!mkt.lambda) throw std::invalid_argument("value_periodic: lambda is not set");
    if (V <= 0.0) throw std::domain_error("value_periodic: V must be > 0");
    if (V_B < 0.0) throw std::domain_error("value_periodic: V_B must be >= 0");
    if (V_B == 0.0) return zero_barrier_values(mkt, V);
    if (V < V_B) return post_bankruptcy_values(mkt, V);

    double lam = *mkt.lambda;
    double x = std::log(V / V_B);
    ValuationResult out;
    out.firm = V +
               mkt.P * mkt.kappa * mkt.rho *
                   Lambda_fn(ctx, std::log(V), std::log(V_B), mkt.r, lam, mkt.V_T) -
               mkt.eta * V_B * J_fn(ctx, x, mkt.r, 1.0, lam);
    out.debt = (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m) *
                   (1.0 - J_fn(ctx, x, mkt.r + mkt.m, 0.0, lam)) +
               (1.0 - mkt.eta) * V_B * J_fn(ctx, x, mkt.r + mkt.m, 1.0, lam);
    out.equity = out.firm - out.debt;
    return out;
}

double equity_at_barrier(const FluctuationContext& ctx, const MarketParams& mkt, double V_B) {
    mkt.validate();
    if (!mkt.lambda) throw std::invalid_argument("equity_at_barrier: lambda is not set");
    if (V_B <= 0.0) throw std::domain_error("equity_at_barrier: V_B must be > 0");
    double lam = *mkt.lambda;
    double c_lambda = 1.0 - mkt.eta * J_fn(ctx, 0.0, mkt.r, 1.0, lam) -
                      (1.0 - mkt.eta) * J_fn(ctx, 0.0, mkt.r + mkt.m, 1.0, lam);
    return V_B * c_lambda +
           mkt.P * mkt.kappa * mkt.rho * Lambda_diag(ctx, std::log(V_B), mkt.r, lam, mkt.V_T) -
           (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m) *
               ctx.phi(mkt.r + mkt.m) / ctx.phi(lam + mkt.r + mkt.m);
}

} // namespace leland
