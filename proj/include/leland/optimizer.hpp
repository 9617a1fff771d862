#pragma once

#include <string>

#include "leland/valuation.hpp"

namespace leland {

enum class BarrierRegime { SmoothFitRoot, ZeroBarrier, ContinuousFitRoot };

struct BarrierSolution {
    double barrier = 0.0;
    BarrierRegime regime = BarrierRegime::ZeroBarrier;
    double residual = 0.0; // |f| or |E(V_B;V_B)| at the solution
    int iterations = 0;
    std::string note;
};

enum class ObservationMode { Continuous, Periodic };
enum class TaxThresholdRule { Zero, ProportionalToP };

struct TwoStageSolution {
    double P_star = 0.0;
    double barrier = 0.0;    // optimal barrier at P_star
    double firm_value = 0.0;
    double leverage = 0.0;   // P_star / V
    bool non_unimodal_warning = false;
};

/// Barrier constants: K = (rho+m)/(r+m) Phi(r+m) - kappa rho / r Phi(r),
/// C = 1 + eta Phi(r) + (1-eta) Phi(r+m); K_lambda / C_lambda use the
/// Phi(q)/Phi(lambda+q) ratios instead.
double K_continuous(const FluctuationContext& ctx, const MarketParams& mkt);
double C_continuous(const FluctuationContext& ctx, const MarketParams& mkt);
double K_periodic(const FluctuationContext& ctx, const MarketParams& mkt);
double C_periodic(const FluctuationContext& ctx, const MarketParams& mkt);

/// Smooth-fit objective: dE/dV(V_B+;V_B) = C f(V_B) / V_B.
double f_continuous(const FluctuationContext& ctx, const MarketParams& mkt, double v);

BarrierSolution solve_barrier_continuous(const FluctuationContext& ctx, const MarketParams& mkt);
BarrierSolution solve_barrier_periodic(const FluctuationContext& ctx, const MarketParams& mkt);

/// Two-stage leverage optimization: for each face value P solve the barrier
/// problem, then maximize the firm value over P.  With rule Zero the barrier
/// is epsilon P (golden section on the proven-concave objective); with rule
/// ProportionalToP, V_T = P rho / delta and a coarse grid scan guards the
/// golden-section refinement against non-unimodality.
TwoStageSolution two_stage(const FluctuationContext& ctx, MarketParams mkt, double V,
                           ObservationMode mode, TaxThresholdRule vt_rule);

} // namespace leland
