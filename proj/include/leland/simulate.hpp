#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "leland/valuation.hpp"

namespace leland {

struct SimConfig {
    long paths = 100000;
    std::uint64_t seed = 12345;
    double grid_step = 1e-3; // time step for the continuous-mode approximation
    double horizon = 200.0;  // truncation time
    int substeps = 32;       // occupation sub-grid per observation interval
    double tail_tol = 1e-6;  // required bound on exp(-q * horizon)

    void validate(double q_min) const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long paths_used = 0;
};

/// splitmix64 element i of the stream started at seed; one stream per path so
/// parallel runs reproduce serial results bit-for-bit.
std::uint64_t path_stream_seed(std::uint64_t seed, std::uint64_t path);

double sample_phase_type(const PhaseTypeDistribution& dist, std::mt19937_64& rng);

/// Exact draw of X_{t+dt} - X_t.
double sample_increment(const LevyModel& model, double dt, std::mt19937_64& rng);

/// Exact draw of (T_{i+1} - T_i, X_{T_{i+1}} - X_{T_i}) between observations.
std::pair<double, double> sample_periodic_increment(const LevyModel& model, double lambda,
                                                    std::mt19937_64& rng);

/// Equity value under periodic observation by direct payoff simulation.
McEstimate mc_periodic_equity(const LevyModel& model, const MarketParams& mkt,
                              double V, double V_B, const SimConfig& cfg);

/// E_x[e^{-q T_0^- + beta X_{T_0^-}}; T_0^- < inf] (oracle for J_fn).
McEstimate mc_periodic_passage(const LevyModel& model, double x, double q, double beta,
                               double lambda, const SimConfig& cfg);

/// E_x[int_0^{T_z^-} e^{-qt} 1{X_t >= log V_T} dt] (oracle for Lambda_fn);
/// occupation integrated on the sub-grid, so carries a documented O(1/substeps) bias.
McEstimate mc_periodic_occupation(const LevyModel& model, double x, double z, double q,
                                  double lambda, double V_T, const SimConfig& cfg);

/// E_x[e^{-q tau_0^-}; tau_0^- < inf] on a time grid (oracle for gamma_fn);
/// crossing located by linear interpolation, O(sqrt(grid_step)) bias.
McEstimate mc_continuous_passage(const LevyModel& model, double x, double q,
                                 const SimConfig& cfg);

/// E_x[int_0^{tau_0^-} e^{-qt} 1{X_t >= a} dt] on a time grid (oracle for g_fn).
McEstimate mc_continuous_occupation(const LevyModel& model, double x, double q, double a,
                                    const SimConfig& cfg);

} // namespace leland
