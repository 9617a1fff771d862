#pragma once

#include <complex>
#include <optional>

#include "leland/phase_type.hpp"

namespace leland {

enum class VariationClass { BoundedVariation, UnboundedVariation };

/// Spectrally positive Levy process X_t = c t + sigma B_t + sum_{i<=N_t} U_i
/// with compound-Poisson jump rate and phase-type jump sizes.
class LevyModel {
public:
    LevyModel(double sigma, double drift_c, double jump_rate = 0.0,
              std::optional<PhaseTypeDistribution> jumps = std::nullopt);

    double sigma() const { return sigma_; }
    double drift_c() const { return drift_c_; }
    double jump_rate() const { return jump_rate_; }
    bool has_jumps() const { return jump_rate_ > 0.0; }
    const PhaseTypeDistribution& jumps() const;

    LevyModel with_drift(double c) const;
    LevyModel with_jump_rate(double rate) const;

private:
    double sigma_;
    double drift_c_;
    double jump_rate_;
    std::optional<PhaseTypeDistribution> jumps_;
};

/// psi(theta) = -c theta + sigma^2 theta^2 / 2 + rate (phi_U(theta) - 1),
/// where E[exp(-theta X_t)] = exp(t psi(theta)).
std::complex<double> laplace_exponent(const LevyModel& model, std::complex<double> theta);
double laplace_exponent(const LevyModel& model, double theta);
std::complex<double> laplace_exponent_derivative(const LevyModel& model, std::complex<double> theta);
double laplace_exponent_derivative(const LevyModel& model, double theta);

/// Largest positive root of psi(p) = q (right-continuous inverse of psi).
double phi_inverse(const LevyModel& model, double q);

/// Replace the drift so that -psi(1) = r - delta holds exactly.
LevyModel calibrate_drift(const LevyModel& model, double r, double delta);

VariationClass variation_class(const LevyModel& model);

} // namespace leland
