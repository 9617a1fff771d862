#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace leland {

/// Distribution of the absorption time of a finite-state Markov chain with
/// sub-generator T and initial distribution alpha.  A defect 1 - sum(alpha)
/// is an atom at zero.
class PhaseTypeDistribution {
public:
    PhaseTypeDistribution(Eigen::VectorXd alpha, Eigen::MatrixXd subgenerator);

    int order() const { return static_cast<int>(alpha_.size()); }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    const Eigen::MatrixXd& subgenerator() const { return subgen_; }
    const Eigen::VectorXd& exit_rates() const { return exit_; }
    double total_mass() const { return alpha_.sum(); }

    double mean() const;

    // E[exp(-theta U)] = alpha (theta I - T)^{-1} t + (1 - sum(alpha)).
    // Requires theta I - T invertible.
    std::complex<double> laplace(std::complex<double> theta) const;
    double laplace(double theta) const;
    std::complex<double> laplace_derivative(std::complex<double> theta) const;

    // laplace(s) = numerator(s) / denominator(s) with denominator(s) = det(sI - T)
    // monic of degree n.  Coefficients are in ascending order.
    const std::vector<double>& numerator() const { return num_; }
    const std::vector<double>& denominator() const { return den_; }

private:
    Eigen::VectorXd alpha_;
    Eigen::MatrixXd subgen_;
    Eigen::VectorXd exit_;
    std::vector<double> num_;
    std::vector<double> den_;
};

} // namespace leland
