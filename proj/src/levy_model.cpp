#include "leland/levy_model.hpp"

#include <cmath>
#include <stdexcept>

namespace leland {

LevyModel::LevyModel(double sigma, double drift_c, double jump_rate,
                     std::optional<PhaseTypeDistribution> jumps)
    : sigma_(sigma), drift_c_(drift_c), jump_rate_(jump_rate), jumps_(std::move(jumps)) {
    if (sigma_ < 0.0) throw std::invalid_argument("levy model: sigma must be >= 0");
    if (jump_rate_ < 0.0) throw std::invalid_argument("levy model: jump_rate must be >= 0");
    if (jump_rate_ > 0.0 && !jumps_)
        throw std::invalid_argument("levy model: positive jump_rate requires a jump distribution");
    if (sigma_ == 0.0 && drift_c_ >= 0.0)
        throw std::invalid_argument("levy model: bounded-variation case requires c < 0");
}

const PhaseTypeDistribution& LevyModel::jumps() const {
    if (!jumps_) throw std::logic_error("levy model: no jump distribution");
    return *jumps_;
}

LevyModel LevyModel::with_drift(double c) const {
    return LevyModel(sigma_, c, jump_rate_, jumps_);
}

LevyModel LevyModel::with_jump_rate(double rate) const {
    return LevyModel(sigma_, drift_c_, rate, jumps_);
}

std::complex<double> laplace_exponent(const LevyModel& model, std::complex<double> theta) {
    std::complex<double> value =
        -model.drift_c() * theta + 0.5 * model.sigma() * model.sigma() * theta * theta;
    if (model.has_jumps())
        value += model.jump_rate() * (model.jumps().laplace(theta) - 1.0);
    return value;
}

double laplace_exponent(const LevyModel& model, double theta) {
    return laplace_exponent(model, std::complex<double>(theta, 0.0)).real();
}

std::complex<double> laplace_exponent_derivative(const LevyModel& model, std::complex<double> theta) {
    std::complex<double> value = -model.drift_c() + model.sigma() * model.sigma() * theta;
    if (model.has_jumps())
        value += model.jump_rate() * model.jumps().laplace_derivative(theta);
    return value;
}

double laplace_exponent_derivative(const LevyModel& model, double theta) {
    return laplace_exponent_derivative(model, std::complex<double>(theta, 0.0)).real();
}

double phi_inverse(const LevyModel& model, double q) {
    if (q < 0.0) throw std::domain_error("phi_inverse: q must be >= 0");

    // psi is convex with psi(0) = 0 and psi(theta) -> infinity.  Locate the
    // argmin via bisection on psi', then bracket the root to the right of it.
    auto dpsi = [&](double t) { return laplace_exponent_derivative(model, t); };
    auto psi = [&](double t) { return laplace_exponent(model, t); };

    double lo = 0.0;
    if (dpsi(0.0) < 0.0) {
        double hi = 1.0;
        int guard = 0;
        while (dpsi(hi) < 0.0) {
            hi *= 2.0;
            if (++guard > 200) throw std::runtime_error("phi_inverse: psi' never turns positive");
        }
        double a = 0.0, b = hi;
        for (int i = 0; i < 200 && (b - a) > 1e-14 * (1.0 + b); ++i) {
            double m = 0.5 * (a + b);
            (dpsi(m) < 0.0 ? a : b) = m;
        }
        lo = 0.5 * (a + b);
    }

    if (q == 0.0 && dpsi(0.0) >= 0.0) return 0.0;

    double hi = std::max(1.0, 2.0 * lo);
    int guard = 0;
    while (psi(hi) <= q) {
        hi *= 2.0;
        if (++guard > 400)
            throw std::runtime_error("phi_inverse: bracket expansion failed (degenerate model)");
    }

    // safeguarded Newton inside [lo, hi]
    double x = 0.5 * (lo + hi);
    const double tol = 1e-13 * (1.0 + std::abs(q));
    for (int i = 0; i < 200; ++i) {
        double f = psi(x) - q;
        if (std::abs(f) <= tol) break;
        (f < 0.0 ? lo : hi) = x;
        double d = dpsi(x);
        double step = (d > 0.0) ? x - f / d : x;
        x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    return x;
}

LevyModel calibrate_drift(const LevyModel& model, double r, double delta) {
    if (delta < 0.0 || delta >= r)
        throw std::invalid_argument("calibrate_drift: need 0 <= delta < r");
    // -psi(1) = c - sigma^2/2 - rate (phi_U(1) - 1) = r - delta, linear in c.
    double jump_term = model.has_jumps()
        ? model.jump_rate() * (model.jumps().laplace(1.0) - 1.0)
        : 0.0;
    double c = (r - delta) + 0.5 * model.sigma() * model.sigma() + jump_term;
    return model.with_drift(c);
}

VariationClass variation_class(const LevyModel& model) {
    return model.sigma() > 0.0 ? VariationClass::UnboundedVariation
                               : VariationClass::BoundedVariation;
}

} // namespace leland
