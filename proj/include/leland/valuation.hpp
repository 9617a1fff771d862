#pragma once

#include <optional>

#include "leland/fluctuation.hpp"

namespace leland {

struct MarketParams {
    double r = 0.0;      // risk-free rate, > 0
    double delta = 0.0;  // payout rate, in [0, r)
    double m = 0.0;      // debt maturity profile rate, > 0
    double rho = 0.0;    // coupon rate, > 0
    double kappa = 0.0;  // tax rate, > 0
    double eta = 0.0;    // bankruptcy loss fraction, in (0,1)
    double P = 0.0;      // total face value of debt, >= 0
    double V_T = 0.0;    // tax benefit threshold, >= 0
    std::optional<double> lambda; // observation rate; absent for continuous mode

    void validate() const;
};

struct ValuationResult {
    double firm = 0.0;
    double debt = 0.0;
    double equity = 0.0;
};

/// Firm/debt/equity under continuous observation of bankruptcy.
ValuationResult value_continuous(const FluctuationContext& ctx, const MarketParams& mkt,
                                 double V, double V_B);

/// Firm/debt/equity when bankruptcy is declared at the first Poisson
/// observation epoch with asset value below the barrier.
ValuationResult value_periodic(const FluctuationContext& ctx, const MarketParams& mkt,
                               double V, double V_B);

/// Equity evaluated at the barrier itself (periodic mode); the continuous-fit
/// objective whose root is the optimal barrier.
double equity_at_barrier(const FluctuationContext& ctx, const MarketParams& mkt, double V_B);

} // namespace leland
