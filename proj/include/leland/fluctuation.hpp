#pragma once

#include <map>
#include <memory>
#include <shared_mutex>

#include "leland/scale_function.hpp"

namespace leland {

enum class Side { Right, Left };

/// Shared scale-function / Phi caches for one model.  Lazily built per
/// discount rate q; safe for concurrent use.
class FluctuationContext {
public:
    explicit FluctuationContext(LevyModel model) : model_(std::move(model)) {}

    const LevyModel& model() const { return model_; }
    double phi(double q) const;
    const ScaleFunctionRep& scale(double q) const;

private:
    LevyModel model_;
    mutable std::shared_mutex mutex_;
    mutable std::map<double, double> phi_cache_;
    mutable std::map<double, std::shared_ptr<const ScaleFunctionRep>> scale_cache_;
};

/// Laplace transform of the continuous first passage time below 0:
/// gamma(x;q) = 1 - E_x[e^{-q tau_0^-}] = 1 - e^{-Phi(q) x}.
double gamma_fn(const FluctuationContext& ctx, double x, double q);
double gamma_deriv(const FluctuationContext& ctx, double x, double q);

/// Discounted occupation above level a before tau_0^-:
/// g(x;q,a) = (1/q)(1 - e^{-Phi(q)x}) + Wbar^{(q)}(a-x) - e^{-Phi(q)x} Wbar^{(q)}(a).
double g_fn(const FluctuationContext& ctx, double x, double q, double a);
/// d/dx of g_fn; right-hand value at x = 0 and (by default) at the kink x = a.
double g_deriv(const FluctuationContext& ctx, double x, double q, double a,
               Side side = Side::Right);

/// Joint transform of the first observed passage below 0 under Poisson
/// observation with rate lambda: E_x[e^{-q T_0^- + beta X_{T_0^-}}; T_0^- < inf].
double J_fn(const FluctuationContext& ctx, double x, double q, double beta, double lambda);
double J_deriv(const FluctuationContext& ctx, double x, double q, double beta, double lambda);

/// Discounted occupation above log V_T before the first observed passage
/// below z, started at x >= z.
double Lambda_fn(const FluctuationContext& ctx, double x, double z, double q,
                 double lambda, double V_T);
double Lambda_diag(const FluctuationContext& ctx, double z, double q,
                   double lambda, double V_T);

/// Resolvent density under Poisson observation, x <= 0.
double R_fn(const FluctuationContext& ctx, double x, double y, double q, double lambda);

} // namespace leland
