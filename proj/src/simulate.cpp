#include "leland/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace leland {

void SimConfig::validate(double q_min) const {
    if (paths < 1) throw std::invalid_argument("sim config: paths must be >= 1");
    if (grid_step <= 0.0) throw std::invalid_argument("sim config: grid_step must be > 0");
    if (substeps < 1) throw std::invalid_argument("sim config: substeps must be >= 1");
    if (horizon <= 0.0) throw std::invalid_argument("sim config: horizon must be > 0");
    if (std::exp(-q_min * horizon) > tail_tol)
        throw std::invalid_argument(
            "sim config: horizon too short, discount tail exceeds tail_tol");
}

std::uint64_t path_stream_seed(std::uint64_t seed, std::uint64_t path) {
    std::uint64_t z = seed + (path + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double sample_phase_type(const PhaseTypeDistribution& dist, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // pick the starting phase (the defect 1 - sum(alpha) is an atom at zero)
    double u = unif(rng);
    int state = -1;
    double acc = 0.0;
    for (int i = 0; i < dist.order(); ++i) {
        acc += dist.alpha()(i);
        if (u < acc) { state = i; break; }
    }
    if (state < 0) return 0.0;

    double time = 0.0;
    std::exponential_distribution<double> expo;
    while (state >= 0) {
        double rate = -dist.subgenerator()(state, state);
        time += expo(rng) / rate;
        double v = unif(rng) * rate;
        double run = dist.exit_rates()(state);
        if (v < run) break; // absorbed
        int next = -1;
        for (int j = 0; j < dist.order(); ++j) {
            if (j == state) continue;
            run += dist.subgenerator()(state, j);
            if (v < run) { next = j; break; }
        }
        if (next < 0) break; // numerical slack: treat as absorption
        state = next;
    }
    return time;
}

double sample_increment(const LevyModel& model, double dt, std::mt19937_64& rng) {
    double dx = model.drift_c() * dt;
    if (model.sigma() > 0.0) {
        std::normal_distribution<double> norm(0.0, model.sigma() * std::sqrt(dt));
        dx += norm(rng);
    }
    if (model.has_jumps()) {
        std::poisson_distribution<int> pois(model.jump_rate() * dt);
        int n = pois(rng);
        for (int i = 0; i < n; ++i) dx += sample_phase_type(model.jumps(), rng);
    }
    return dx;
}

std::pair<double, double> sample_periodic_increment(const LevyModel& model, double lambda,
                                                    std::mt19937_64& rng) {
    if (lambda <= 0.0) throw std::domain_error("sample_periodic_increment: lambda must be > 0");
    std::exponential_distribution<double> expo(lambda);
    double dt = expo(rng);
    return {dt, sample_increment(model, dt, rng)};
}

namespace {

double pairwise_sum(const double* data, long n) {
    if (n <= 8) {
        double s = 0.0;
        for (long i = 0; i < n; ++i) s += data[i];
        return s;
    }
    long half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

McEstimate run_paths(long paths, const std::function<double(long, std::mt19937_64&)>& payoff,
                     std::uint64_t seed) {
    std::vector<double> results(static_cast<std::size_t>(paths));
    unsigned hw = std::thread::hardware_concurrency();
    long workers = std::clamp<long>(hw ? hw : 1, 1, paths);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (long w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long i = w; i < paths; i += workers) {
                    std::mt19937_64 rng(path_stream_seed(seed, static_cast<std::uint64_t>(i)));
                    results[static_cast<std::size_t>(i)] = payoff(i, rng);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    double mean = pairwise_sum(results.data(), paths) / static_cast<double>(paths);
    std::vector<double> sq(static_cast<std::size_t>(paths));
    for (long i = 0; i < paths; ++i) {
        double d = results[static_cast<std::size_t>(i)] - mean;
        sq[static_cast<std::size_t>(i)] = d * d;
    }
    double var = paths > 1 ? pairwise_sum(sq.data(), paths) / static_cast<double>(paths - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(paths)), paths};
}

// Discounted occupation over one observation interval of length dt, advancing
// the path state in place on a sub-grid of cfg.substeps exact steps.
// Trapezoidal indicator weights, exact discount integral per sub-interval.
double subgrid_occupation(const LevyModel& model, double& x, double t0, double dt,
                          double q, double a, int substeps, std::mt19937_64& rng) {
    double h = dt / substeps;
    double drift = model.drift_c() * h;
    double sig = model.sigma() * std::sqrt(h);
    double mu = model.has_jumps() ? model.jump_rate() * h : 0.0;
    double p0 = std::exp(-mu);
    double step_df = std::exp(-q * h);
    double disc = std::exp(-q * t0); // e^{-q t} at the sub-interval left edge
    double occ = 0.0;
    std::normal_distribution<double> norm;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < substeps; ++i) {
        double ind0 = x >= a ? 1.0 : 0.0;
        x += drift;
        if (sig > 0.0) x += sig * norm(rng);
        if (mu > 0.0) {
            // inverse-cdf Poisson; mu is tiny so this almost always stops at 0
            double u = unif(rng);
            if (u > p0) {
                double p = p0, cum = p0;
                int k = 0;
                while (u > cum && k < 1000) {
                    ++k;
                    p *= mu / k;
                    cum += p;
                }
                for (int j = 0; j < k; ++j) x += sample_phase_type(model.jumps(), rng);
            }
        }
        double ind1 = x >= a ? 1.0 : 0.0;
        double next = disc * step_df;
        occ += 0.5 * (ind0 + ind1) * (disc - next) / q;
        disc = next;
    }
    return occ;
}

} // namespace

McEstimate mc_periodic_equity(const LevyModel& model, const MarketParams& mkt,
                              double V, double V_B, const SimConfig& cfg) {
    mkt.validate();
    if (!mkt.lambda) throw std::invalid_argument("mc_periodic_equity: lambda is not set");
    if (!(V >= V_B) || V_B <= 0.0)
        throw std::domain_error("mc_periodic_equity: requires V >= V_B > 0");
    cfg.validate(mkt.r);
    double lam = *mkt.lambda;
    double x0 = std::log(V / V_B);
    double a = mkt.V_T > 0.0 ? std::log(mkt.V_T / V_B)
                             : -std::numeric_limits<double>::infinity();
    return run_paths(cfg.paths, [&](long, std::mt19937_64& rng) {
        std::exponential_distribution<double> expo(lam);
        double x = x0, t = 0.0, occ = 0.0;
        bool bankrupt = false;
        while (t < cfg.horizon) {
            double dt = expo(rng);
            occ += subgrid_occupation(model, x, t, dt, mkt.r, a, cfg.substeps, rng);
            t += dt;
            if (x < 0.0) { bankrupt = true; break; }
        }
        double payoff = V + mkt.P * mkt.kappa * mkt.rho * occ -
                        (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m);
        if (bankrupt) {
            double v_sigma = V_B * std::exp(x);
            payoff += (mkt.rho + mkt.m) * mkt.P / (mkt.r + mkt.m) *
                          std::exp(-(mkt.r + mkt.m) * t) -
                      mkt.eta * std::exp(-mkt.r * t) * v_sigma -
                      (1.0 - mkt.eta) * std::exp(-(mkt.r + mkt.m) * t) * v_sigma;
        }
        return payoff;
    }, cfg.seed);
}

McEstimate mc_periodic_passage(const LevyModel& model, double x, double q, double beta,
                               double lambda, const SimConfig& cfg) {
    if (x < 0.0 || beta < 0.0)
        throw std::domain_error("mc_periodic_passage: x and beta must be >= 0");
    cfg.validate(q);
    return run_paths(cfg.paths, [&](long, std::mt19937_64& rng) {
        double pos = x, t = 0.0;
        while (t < cfg.horizon) {
            auto [dt, dx] = sample_periodic_increment(model, lambda, rng);
            t += dt;
            pos += dx;
            if (pos < 0.0) return std::exp(-q * t + beta * pos);
        }
        return 0.0;
    }, cfg.seed);
}

McEstimate mc_periodic_occupation(const LevyModel& model, double x, double z, double q,
                                  double lambda, double V_T, const SimConfig& cfg) {
    if (x < z) throw std::domain_error("mc_periodic_occupation: requires x >= z");
    cfg.validate(q);
    double a = V_T > 0.0 ? std::log(V_T) : -std::numeric_limits<double>::infinity();
    return run_paths(cfg.paths, [&](long, std::mt19937_64& rng) {
        std::exponential_distribution<double> expo(lambda);
        double pos = x, t = 0.0, occ = 0.0;
        while (t < cfg.horizon) {
            double dt = expo(rng);
            occ += subgrid_occupation(model, pos, t, dt, q, a, cfg.substeps, rng);
            t += dt;
            if (pos < z) break;
        }
        return occ;
    }, cfg.seed);
}

namespace {

// Advance one grid step of length h with jump epochs resolved inside the
// step; reports the first down-crossing time of level 0 via linear
// interpolation of the continuous part, or a negative value if none.
double step_with_crossing(const LevyModel& model, double& x, double t, double h,
                          std::mt19937_64& rng) {
    int n = 0;
    if (model.has_jumps()) {
        std::poisson_distribution<int> pois(model.jump_rate() * h);
        n = pois(rng);
    }
    std::vector<double> times(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> unif(0.0, h);
    for (int i = 0; i < n; ++i) times[static_cast<std::size_t>(i)] = unif(rng);
    std::sort(times.begin(), times.end());

    double prev = 0.0;
    for (int i = 0; i <= n; ++i) {
        double next = (i == n) ? h : times[static_cast<std::size_t>(i)];
        double seg = next - prev;
        if (seg > 0.0) {
            double x_old = x;
            double dx = model.drift_c() * seg;
            if (model.sigma() > 0.0) {
                std::normal_distribution<double> norm(0.0, model.sigma() * std::sqrt(seg));
                dx += norm(rng);
            }
            x += dx;
            if (x < 0.0) {
                double frac = x_old / (x_old - x); // linear interpolation
                return t + prev + frac * seg;
            }
        }
        if (i < n) x += sample_phase_type(model.jumps(), rng); // upward jump
        prev = next;
    }
    return -1.0;
}

} // namespace

McEstimate mc_continuous_passage(const LevyModel& model, double x, double q,
                                 const SimConfig& cfg) {
    if (x < 0.0) throw std::domain_error("mc_continuous_passage: x must be >= 0");
    cfg.validate(q);
    return run_paths(cfg.paths, [&](long, std::mt19937_64& rng) {
        double pos = x, t = 0.0;
        while (t < cfg.horizon) {
            double tau = step_with_crossing(model, pos, t, cfg.grid_step, rng);
            if (tau >= 0.0) return std::exp(-q * tau);
            t += cfg.grid_step;
        }
        return 0.0;
    }, cfg.seed);
}

McEstimate mc_continuous_occupation(const LevyModel& model, double x, double q, double a,
                                    const SimConfig& cfg) {
    if (x < 0.0) throw std::domain_error("mc_continuous_occupation: x must be >= 0");
    cfg.validate(q);
    return run_paths(cfg.paths, [&](long, std::mt19937_64& rng) {
        double pos = x, t = 0.0, occ = 0.0;
        while (t < cfg.horizon) {
            double ind = pos >= a ? 1.0 : 0.0;
            double tau = step_with_crossing(model, pos, t, cfg.grid_step, rng);
            double t_end = tau >= 0.0 ? tau : t + cfg.grid_step;
            occ += ind * (std::exp(-q * t) - std::exp(-q * t_end)) / q;
            if (tau >= 0.0) break;
            t += cfg.grid_step;
        }
        return occ;
    }, cfg.seed);
}

} // namespace leland
