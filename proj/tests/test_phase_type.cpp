#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace leland;

namespace {

PhaseTypeDistribution exponential_ph(double rate) {
    Eigen::VectorXd alpha(1);
    alpha << 1.0;
    Eigen::MatrixXd T(1, 1);
    T << -rate;
    return PhaseTypeDistribution(alpha, T);
}

} // namespace

TEST_CASE("phase-type constructor validates its invariants") {
    Eigen::VectorXd alpha(2);
    Eigen::MatrixXd T(2, 2);
    alpha << 0.5, 0.5;
    T << -2.0, 1.0, 0.0, -3.0;
    CHECK_NOTHROW(PhaseTypeDistribution(alpha, T));

    Eigen::VectorXd bad_alpha(2);
    bad_alpha << -0.1, 0.5;
    CHECK_THROWS_AS(PhaseTypeDistribution(bad_alpha, T), std::invalid_argument);
    bad_alpha << 0.7, 0.7; // mass > 1
    CHECK_THROWS_AS(PhaseTypeDistribution(bad_alpha, T), std::invalid_argument);

    Eigen::MatrixXd bad_T = T;
    bad_T(0, 0) = 0.5; // non-negative diagonal
    CHECK_THROWS_AS(PhaseTypeDistribution(alpha, bad_T), std::invalid_argument);
    bad_T = T;
    bad_T(0, 1) = -0.5; // negative off-diagonal
    CHECK_THROWS_AS(PhaseTypeDistribution(alpha, bad_T), std::invalid_argument);
    bad_T = T;
    bad_T(0, 1) = 3.0; // positive row sum
    CHECK_THROWS_AS(PhaseTypeDistribution(alpha, bad_T), std::invalid_argument);

    Eigen::VectorXd a1(1);
    a1 << 1.0;
    CHECK_THROWS_AS(PhaseTypeDistribution(a1, T), std::invalid_argument);
}

TEST_CASE("exponential special case") {
    auto dist = exponential_ph(3.0);
    CHECK(dist.mean() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // E[e^{-theta U}] = rate / (rate + theta)
    for (double theta : {0.0, 0.5, 2.0, 10.0})
        CHECK(dist.laplace(theta) == doctest::Approx(3.0 / (3.0 + theta)).epsilon(1e-13));
}

TEST_CASE("rational transform matches the matrix transform") {
    auto dist = folded_normal_ph6();
    for (double theta : {0.3, 0.7, 1.3, 2.5, 5.0}) {
        double num = 0.0, den = 0.0, p = 1.0;
        for (std::size_t k = 0; k < dist.denominator().size(); ++k) {
            if (k < dist.numerator().size()) num += dist.numerator()[k] * p;
            den += dist.denominator()[k] * p;
            p *= theta;
        }
        CHECK(num / den == doctest::Approx(dist.laplace(theta)).epsilon(1e-10));
    }
}

TEST_CASE("laplace transform basics") {
    auto dist = folded_normal_ph6();
    CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dist.laplace(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // singular when theta is an eigenvalue of T
    CHECK_THROWS_AS(dist.laplace(std::complex<double>(dist.subgenerator()(0, 0), 0.0)),
                    std::domain_error);
    // derivative at 0 is -mean
    CHECK(dist.laplace_derivative(std::complex<double>(0.0, 0.0)).real() ==
          doctest::Approx(-dist.mean()).epsilon(1e-10));
}

TEST_CASE("folded-normal preset reproduces the exact transform to 1e-3") {
    auto dist = folded_normal_ph6();
    // mean of |N(0,1)| is sqrt(2/pi); the transform fit is not moment-matched,
    // so only a loose agreement is expected here
    CHECK(dist.mean() == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(2e-2));
    double worst = 0.0;
    for (double theta = 0.05; theta <= 6.0; theta += 0.05) {
        double exact = folded_normal_laplace(theta);
        worst = std::max(worst, std::abs(dist.laplace(theta) - exact) / exact);
    }
    CHECK(worst < 1e-3);
}
