#pragma once

#include <optional>
#include <string>

#include "leland/optimizer.hpp"

namespace leland {

/// Parsed run configuration (JSON file with model/market/observation/output
/// sections).  Rates are raw decimals (0.075, not 7.5).
struct RunConfig {
    // model
    double sigma = 0.0;
    std::optional<double> drift_c;
    bool calibrate = false; // derive the drift from the martingale condition
    double jump_rate = 0.0;
    std::string jump_preset;            // named preset, or empty when explicit
    std::optional<Eigen::VectorXd> jump_alpha;
    std::optional<Eigen::MatrixXd> jump_T;

    // market
    double r = 0.0, delta = 0.0, m = 0.0, rho = 0.0, kappa = 0.0, eta = 0.0, P = 0.0;
    TaxThresholdRule vt_rule = TaxThresholdRule::Zero;
    std::optional<double> vt_explicit; // set when V_T is a plain number

    // observation
    ObservationMode mode = ObservationMode::Continuous;
    std::optional<double> lambda;

    // output
    std::optional<std::string> csv_path;

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string serialize() const;

    /// Model with the configured (or calibrated) drift.  force_raw_drift
    /// suppresses calibration (the --no-calibrate switch).
    LevyModel build_model(bool force_raw_drift = false) const;
    MarketParams build_market() const;
    double resolved_V_T() const;
};

} // namespace leland
