#include "leland/scale_function.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leland {

namespace {

using cdouble = std::complex<double>;

// ascending-coefficient polynomial helpers
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

void poly_axpy(std::vector<double>& acc, double scale, const std::vector<double>& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

cdouble poly_eval(const std::vector<double>& p, cdouble s) {
    cdouble v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * s + p[i];
    return v;
}

cdouble poly_eval_deriv(const std::vector<double>& p, cdouble s) {
    cdouble v = 0.0;
    for (std::size_t i = p.size(); i-- > 1;) v = v * s + static_cast<double>(i) * p[i];
    return v;
}

std::vector<cdouble> companion_roots(const std::vector<double>& p) {
    // trim tiny leading coefficients
    std::size_t deg = p.size() - 1;
    while (deg > 0 && std::abs(p[deg]) < 1e-14 * std::abs(p[deg ? deg - 1 : 0]) + 1e-300) --deg;
    if (deg == 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (std::size_t i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / p[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<cdouble> roots(deg);
    for (std::size_t i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return roots;
}

} // namespace

double ScaleFunctionRep::psi_real(double theta) const {
    double v = -drift_c_ * theta + 0.5 * sigma_ * sigma_ * theta * theta;
    if (jump_rate_ > 0.0) {
        double num = poly_eval(jump_num_, theta).real();
        double den = poly_eval(jump_den_, theta).real();
        v += jump_rate_ * (num / den - 1.0);
    }
    return v;
}

double ScaleFunctionRep::W(double x) const {
    if (x < 0.0) return 0.0;
    // factor out the dominant exponential exp(phi_q x)
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < roots_.size(); ++j)
        sum += weights_[j] * std::exp((roots_[j] - phi_q_) * x);
    if (std::abs(sum.imag()) > 1e-9 * (1.0 + std::abs(sum.real())))
        throw std::runtime_error("scale function: conjugate cancellation failed (imaginary leak)");
    return std::exp(phi_q_ * x) * sum.real();
}

double ScaleFunctionRep::W_prime(double x) const {
    if (x < 0.0) return 0.0;
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < roots_.size(); ++j)
        sum += weights_[j] * roots_[j] * std::exp((roots_[j] - phi_q_) * x);
    return std::exp(phi_q_ * x) * sum.real();
}

double ScaleFunctionRep::W_bar(double x) const {
    if (x <= 0.0) return 0.0;
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < roots_.size(); ++j) {
        const cdouble z = roots_[j];
        if (std::abs(z) < 1e-12)
            sum += weights_[j] * x;
        else
            sum += (weights_[j] / z) * (std::exp(z * x) - 1.0);
    }
    return sum.real();
}

double ScaleFunctionRep::Z(double x, double theta) const {
    if (theta < 0.0) throw std::domain_error("Z: theta must be >= 0");
    if (x < 0.0) return std::exp(theta * x);
    double gap = q_ - psi_real(theta);
    // psi(theta) = q only at theta = Phi(q), where Z is a pure exponential.
    if (std::abs(gap) < 1e-10 * (1.0 + q_)) return std::exp(theta * x);
    // Cancellation-free partial-fraction form: the naive
    // exp(theta x) (1 + (q - psi) int_0^x e^{-theta z} W dz) loses all digits
    // for theta > Phi(q) and large x because sum_j w_j/(theta - zeta_j)
    // equals 1/(psi(theta) - q) exactly.
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < roots_.size(); ++j)
        sum += weights_[j] * std::exp(roots_[j] * x) / (roots_[j] - theta);
    return gap * sum.real();
}

ScaleFunctionRep build_scale_function(const LevyModel& model, double q) {
    if (q < 0.0) throw std::domain_error("build_scale_function: q must be >= 0");

    ScaleFunctionRep rep;
    rep.q_ = q;
    rep.drift_c_ = model.drift_c();
    rep.sigma_ = model.sigma();
    rep.jump_rate_ = model.has_jumps() ? model.jump_rate() : 0.0;
    rep.variation_ = variation_class(model);
    rep.phi_q_ = phi_inverse(model, q);

    // numerator polynomial of psi(s) - q over den(s) = det(sI - T):
    //   N(s) = (sigma^2/2 s^2 - c s - q) den(s) + rate (num_phi(s) - den(s))
    std::vector<double> den{1.0};
    std::vector<double> N;
    std::vector<double> quad{-q, -model.drift_c(), 0.5 * model.sigma() * model.sigma()};
    while (!quad.empty() && quad.back() == 0.0) quad.pop_back();
    if (model.has_jumps()) {
        den = model.jumps().denominator();
        rep.jump_num_ = model.jumps().numerator();
        rep.jump_den_ = den;
        N = poly_mul(quad, den);
        poly_axpy(N, model.jump_rate(), rep.jump_num_);
        poly_axpy(N, -model.jump_rate(), den);
    } else {
        N = quad;
    }

    std::vector<cdouble> roots = companion_roots(N);
    if (roots.empty())
        throw std::runtime_error("build_scale_function: degenerate numerator polynomial");

    // Newton polish on the numerator polynomial
    for (auto& z : roots) {
        for (int it = 0; it < 50; ++it) {
            cdouble f = poly_eval(N, z);
            cdouble d = poly_eval_deriv(N, z);
            if (std::abs(d) == 0.0) break;
            cdouble step = f / d;
            z -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
    }

    // snap the unique positive real root to phi_q and symmetrize conjugate pairs
    std::size_t phi_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
        double dist = std::abs(roots[j] - cdouble(rep.phi_q_, 0.0));
        if (dist < best) { best = dist; phi_idx = j; }
    }
    roots[phi_idx] = cdouble(rep.phi_q_, 0.0);
    const double imag_tol = 1e-9 * (1.0 + rep.phi_q_);
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == phi_idx) continue;
        if (std::abs(roots[j].imag()) < imag_tol) roots[j] = cdouble(roots[j].real(), 0.0);
        if (roots[j].real() >= rep.phi_q_ - 1e-12)
            throw std::runtime_error("build_scale_function: spurious root at or right of phi(q)");
    }
    // exact conjugation: pair each root with positive imaginary part
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (roots[j].imag() <= 0.0) continue;
        std::size_t mate = roots.size();
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < roots.size(); ++k) {
            if (roots[k].imag() >= 0.0) continue;
            double d = std::abs(roots[k] - std::conj(roots[j]));
            if (d < bestd) { bestd = d; mate = k; }
        }
        if (mate == roots.size())
            throw std::runtime_error("build_scale_function: unpaired complex root");
        cdouble mean = 0.5 * (roots[j] + std::conj(roots[mate]));
        roots[j] = mean;
        roots[mate] = std::conj(mean);
    }

    for (std::size_t j = 0; j < roots.size(); ++j)
        for (std::size_t k = j + 1; k < roots.size(); ++k)
            if (std::abs(roots[j] - roots[k]) < 1e-8)
                throw std::runtime_error(
                    "build_scale_function: near-multiple roots of psi(s)=q; "
                    "perturb q by ~1e-6 and retry");

    // weights w_j = 1/psi'(zeta_j) = den(zeta_j)/N'(zeta_j)
    rep.roots_ = roots;
    rep.weights_.resize(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) {
        cdouble denv = poly_eval(den, roots[j]);
        cdouble nder = poly_eval_deriv(N, roots[j]);
        rep.weights_[j] = denv / nder;
    }
    return rep;
}

} // namespace leland
