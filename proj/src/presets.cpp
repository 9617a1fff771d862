#include "leland/presets.hpp"

#include <cmath>

namespace leland {

PhaseTypeDistribution folded_normal_ph6() {
    const double nu1 = 1.744779496876;
    const double nu2 = 5.422579203653;
    const double nu3 = 2.904001259466;
    const double w1 = 0.497210028540;
    const double w2 = 0.001014624010;
    const double w3 = 1.0 - w1 - w2;

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(6);
    alpha(0) = w1;
    alpha(1) = w2;
    alpha(3) = w3;

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(6, 6);
    // Erlang(1, nu1)
    T(0, 0) = -nu1;
    // Erlang(2, nu2)
    T(1, 1) = -nu2; T(1, 2) = nu2;
    T(2, 2) = -nu2;
    // Erlang(3, nu3)
    T(3, 3) = -nu3; T(3, 4) = nu3;
    T(4, 4) = -nu3; T(4, 5) = nu3;
    T(5, 5) = -nu3;

    return PhaseTypeDistribution(std::move(alpha), std::move(T));
}

double folded_normal_laplace(double theta) {
    return std::exp(0.5 * theta * theta) * std::erfc(theta / std::sqrt(2.0));
}

} // namespace leland
