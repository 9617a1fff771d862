#pragma once

#include <complex>
#include <vector>

#include "leland/levy_model.hpp"

namespace leland {

/// Partial-fraction representation of the q-scale function of the dual
/// spectrally negative process: W^(q)(x) = sum_j w_j exp(zeta_j x) on x >= 0,
/// where the zeta_j are the (simple) roots of psi(s) = q and w_j = 1/psi'(zeta_j).
class ScaleFunctionRep {
public:
    double q() const { return q_; }
    double phi_q() const { return phi_q_; }
    const std::vector<std::complex<double>>& roots() const { return roots_; }
    const std::vector<std::complex<double>>& weights() const { return weights_; }
    VariationClass variation() const { return variation_; }

    /// W^(q)(x); zero on x < 0.
    double W(double x) const;
    /// Antiderivative of W over [0, x]; zero on x <= 0.
    double W_bar(double x) const;
    /// Analytic derivative on x > 0, right-hand limit at x = 0.
    double W_prime(double x) const;
    /// Second scale function Z^(q)(x; theta); exp(theta x) on x < 0.
    double Z(double x, double theta) const;

private:
    friend ScaleFunctionRep build_scale_function(const LevyModel&, double);

    double q_ = 0.0;
    double phi_q_ = 0.0;
    double drift_c_ = 0.0;
    VariationClass variation_ = VariationClass::UnboundedVariation;
    std::vector<std::complex<double>> roots_;
    std::vector<std::complex<double>> weights_;
    double psi_real(double theta) const; // for Z's (q - psi(theta)) factor
    double sigma_ = 0.0;
    double jump_rate_ = 0.0;
    std::vector<double> jump_num_, jump_den_; // rational phi_U for evaluation
};

/// Builds the representation by rooting the numerator polynomial of
/// psi(s) - q (companion-matrix eigenvalues, then Newton polish).
/// Throws on near-multiple roots (separation below 1e-8).
ScaleFunctionRep build_scale_function(const LevyModel& model, double q);

} // namespace leland
