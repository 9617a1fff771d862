#pragma once

#include "leland/optimizer.hpp"
#include "leland/presets.hpp"

// Canonical parameter set used throughout the tests: sigma=0.2, c=-0.24767,
// jump rate 0.5 with folded-normal phase-type jumps; r=7.5%, delta=7%,
// kappa=35%, eta=50%, rho=8.162%, m=0.2, P=50, V_T=P rho/delta, lambda=4.
inline leland::LevyModel baseline_model() {
    return leland::LevyModel(0.2, -0.24767, 0.5, leland::folded_normal_ph6());
}

inline leland::MarketParams baseline_market(bool periodic) {
    leland::MarketParams mkt;
    mkt.r = 0.075;
    mkt.delta = 0.07;
    mkt.m = 0.2;
    mkt.rho = 0.08162;
    mkt.kappa = 0.35;
    mkt.eta = 0.5;
    mkt.P = 50.0;
    mkt.V_T = mkt.P * mkt.rho / mkt.delta;
    if (periodic) mkt.lambda = 4.0;
    return mkt;
}

// Composite Simpson quadrature on [a, b].
template <typename F>
double simpson(F f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
