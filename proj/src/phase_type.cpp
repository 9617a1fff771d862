#include "leland/phase_type.hpp"

#include <stdexcept>

namespace leland {

namespace {

// Faddeev-LeVerrier: characteristic polynomial det(sI - A) and the matrix
// coefficients of adj(sI - A) = sum_k s^k M_{n-k}.
void faddeev_leverrier(const Eigen::MatrixXd& A,
                       std::vector<double>& charpoly,
                       std::vector<Eigen::MatrixXd>& adj_coeffs) {
    const int n = static_cast<int>(A.rows());
    charpoly.assign(n + 1, 0.0);
    charpoly[n] = 1.0;
    adj_coeffs.assign(n, Eigen::MatrixXd::Zero(n, n)); // adj_coeffs[k] multiplies s^k

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        M = A * M + charpoly[n - k + 1] * Eigen::MatrixXd::Identity(n, n);
        charpoly[n - k] = -(A * M).trace() / k;
        adj_coeffs[n - k] = M;
    }
}

} // namespace

PhaseTypeDistribution::PhaseTypeDistribution(Eigen::VectorXd alpha,
                                             Eigen::MatrixXd subgenerator)
    : alpha_(std::move(alpha)), subgen_(std::move(subgenerator)) {
    const int n = static_cast<int>(alpha_.size());
    if (n == 0 || subgen_.rows() != n || subgen_.cols() != n)
        throw std::invalid_argument("phase-type: alpha and T dimensions disagree");
    const double mass = alpha_.sum();
    if (alpha_.minCoeff() < 0.0 || mass <= 0.0 || mass > 1.0 + 1e-12)
        throw std::invalid_argument("phase-type: alpha must be sub-stochastic with positive mass");
    bool strict_row = false;
    for (int i = 0; i < n; ++i) {
        if (subgen_(i, i) >= 0.0)
            throw std::invalid_argument("phase-type: diagonal of T must be strictly negative");
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i && subgen_(i, j) < 0.0)
                throw std::invalid_argument("phase-type: off-diagonal of T must be non-negative");
            row += subgen_(i, j);
        }
        if (row > 1e-12)
            throw std::invalid_argument("phase-type: row sums of T must be <= 0");
        if (row < -1e-12) strict_row = true;
    }
    if (!strict_row)
        throw std::invalid_argument("phase-type: T must have at least one strictly negative row sum");

    exit_ = -subgen_.rowwise().sum();
    for (int i = 0; i < n; ++i)
        if (exit_(i) < 0.0) exit_(i) = 0.0; // clamp roundoff

    std::vector<Eigen::MatrixXd> adj;
    faddeev_leverrier(subgen_, den_, adj);
    // numerator of alpha (sI - T)^{-1} t, plus the defect atom at zero
    num_.assign(den_.size(), 0.0);
    const double defect = 1.0 - mass;
    for (int k = 0; k < n; ++k)
        num_[k] = alpha_.dot(adj[k] * exit_);
    for (std::size_t k = 0; k < den_.size(); ++k)
        num_[k] += defect * den_[k];
}

double PhaseTypeDistribution::mean() const {
    // E[U] = alpha (-T)^{-1} 1
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(order());
    Eigen::VectorXd sol = (-subgen_).partialPivLu().solve(ones);
    return alpha_.dot(sol);
}

std::complex<double> PhaseTypeDistribution::laplace(std::complex<double> theta) const {
    const int n = order();
    Eigen::MatrixXcd M = theta * Eigen::MatrixXcd::Identity(n, n) - subgen_.cast<std::complex<double>>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    if (std::abs(lu.determinant()) < 1e-300)
        throw std::domain_error("phase-type: theta I - T is singular");
    Eigen::VectorXcd sol = lu.solve(exit_.cast<std::complex<double>>());
    std::complex<double> value = alpha_.cast<std::complex<double>>().dot(sol);
    return value + (1.0 - alpha_.sum());
}

double PhaseTypeDistribution::laplace(double theta) const {
    return laplace(std::complex<double>(theta, 0.0)).real();
}

std::complex<double> PhaseTypeDistribution::laplace_derivative(std::complex<double> theta) const {
    // d/dtheta alpha (theta I - T)^{-1} t = -alpha (theta I - T)^{-2} t
    const int n = order();
    Eigen::MatrixXcd M = theta * Eigen::MatrixXcd::Identity(n, n) - subgen_.cast<std::complex<double>>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    Eigen::VectorXcd sol = lu.solve(exit_.cast<std::complex<double>>());
    Eigen::VectorXcd sol2 = lu.solve(sol);
    return -alpha_.cast<std::complex<double>>().dot(sol2);
}

} // namespace leland
