#include "leland/fluctuation.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace leland {

double FluctuationContext::phi(double q) const {
    {
        std::shared_lock lock(mutex_);
        auto it = phi_cache_.find(q);
        if (it != phi_cache_.end()) return it->second;
    }
    double value = phi_inverse(model_, q);
    std::unique_lock lock(mutex_);
    return phi_cache_.emplace(q, value).first->second;
}

const ScaleFunctionRep& FluctuationContext::scale(double q) const {
    {
        std::shared_lock lock(mutex_);
        auto it = scale_cache_.find(q);
        if (it != scale_cache_.end()) return *it->second;
    }
    auto rep = std::make_shared<const ScaleFunctionRep>(build_scale_function(model_, q));
    std::unique_lock lock(mutex_);
    return *scale_cache_.emplace(q, std::move(rep)).first->second;
}

double gamma_fn(const FluctuationContext& ctx, double x, double q) {
    if (x < 0.0) throw std::domain_error("gamma_fn: x must be >= 0");
    return 1.0 - std::exp(-ctx.phi(q) * x);
}

double gamma_deriv(const FluctuationContext& ctx, double x, double q) {
    if (x < 0.0) throw std::domain_error("gamma_deriv: x must be >= 0");
    double phi = ctx.phi(q);
    return phi * std::exp(-phi * x);
}

double g_fn(const FluctuationContext& ctx, double x, double q, double a) {
    if (x < 0.0) throw std::domain_error("g_fn: x must be >= 0");
    if (q <= 0.0) throw std::domain_error("g_fn: q must be > 0");
    double decay = std::exp(-ctx.phi(q) * x);
    const ScaleFunctionRep& rep = ctx.scale(q);
    return (1.0 - decay) / q + rep.W_bar(a - x) - decay * rep.W_bar(a);
}

double g_deriv(const FluctuationContext& ctx, double x, double q, double a, Side side) {
    if (x < 0.0) throw std::domain_error("g_deriv: x must be >= 0");
    if (q <= 0.0) throw std::domain_error("g_deriv: q must be > 0");
    double phi = ctx.phi(q);
    double decay = std::exp(-phi * x);
    const ScaleFunctionRep& rep = ctx.scale(q);
    // W(a-x) is discontinuous at x = a in the bounded-variation case; the
    // side flag selects the one-sided value there.
    double w;
    if (x == a)
        w = (side == Side::Right) ? 0.0 : rep.W(0.0);
    else
        w = rep.W(a - x);
    return decay * phi / q + phi * decay * rep.W_bar(a) - w;
}

double J_fn(const FluctuationContext& ctx, double x, double q, double beta, double lambda) {
    if (x < 0.0 || beta < 0.0) throw std::domain_error("J_fn: x and beta must be >= 0");
    if (q <= 0.0 || lambda <= 0.0) throw std::domain_error("J_fn: q and lambda must be > 0");
    double phi_q = ctx.phi(q);
    double phi_lq = ctx.phi(lambda + q);
    return (phi_lq - phi_q) / (beta + phi_lq) * std::exp(-phi_q * x);
}

double J_deriv(const FluctuationContext& ctx, double x, double q, double beta, double lambda) {
    return -ctx.phi(q) * J_fn(ctx, x, q, beta, lambda);
}

double Lambda_fn(const FluctuationContext& ctx, double x, double z, double q,
                 double lambda, double V_T) {
    if (x < z) throw std::domain_error("Lambda_fn: requires x >= z");
    if (V_T < 0.0) throw std::domain_error("Lambda_fn: V_T must be >= 0");
    double value = (1.0 - J_fn(ctx, x - z, q, 0.0, lambda)) / q;
    if (V_T > 0.0) {
        double phi_q = ctx.phi(q);
        double phi_lq = ctx.phi(lambda + q);
        double log_vt = std::log(V_T);
        double decay = std::exp(phi_q * (z - x));
        const ScaleFunctionRep& rep = ctx.scale(q);
        value -= (phi_lq - phi_q) / phi_lq * decay * rep.W_bar(log_vt - z);
        value -= (phi_lq - phi_q) / (lambda * phi_lq) * decay * rep.Z(log_vt - z, phi_lq);
        value += rep.W_bar(log_vt - x);
    }
    return value;
}

double Lambda_diag(const FluctuationContext& ctx, double z, double q,
                   double lambda, double V_T) {
    if (V_T < 0.0) throw std::domain_error("Lambda_diag: V_T must be >= 0");
    double phi_q = ctx.phi(q);
    double phi_lq = ctx.phi(lambda + q);
    if (V_T == 0.0) return phi_q / (q * phi_lq);
    double log_vt = std::log(V_T);
    const ScaleFunctionRep& rep = ctx.scale(q);
    return phi_q / phi_lq * (1.0 / q + rep.W_bar(log_vt - z)) -
           (phi_lq - phi_q) / (lambda * phi_lq) * rep.Z(log_vt - z, phi_lq);
}

double R_fn(const FluctuationContext& ctx, double x, double y, double q, double lambda) {
    if (x > 0.0) throw std::domain_error("R_fn: x must be <= 0");
    double phi_q = ctx.phi(q);
    double phi_lq = ctx.phi(lambda + q);
    const ScaleFunctionRep& rep = ctx.scale(q);
    return (phi_lq - phi_q) / lambda * std::exp(phi_q * x) * rep.Z(-y, phi_lq) -
           rep.W(x - y);
}

} // namespace leland
