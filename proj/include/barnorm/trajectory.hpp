#pragma once

// Extremal trajectories x_{n+1} = A_{sigma_n} x_n where sigma_n maximizes the
// Barabanov gauge of A_i x_n. Iterates are rescaled by 1/rho_hat each step so
// 10^4 steps at rho ~ 1.1 never overflow; the true log-norms are recovered
// from the bookkeeping.

#include <vector>

#include "barnorm/angular.hpp"
#include "barnorm/barabanov.hpp"
#include "barnorm/sequence.hpp"

namespace barnorm {

enum class TieRule : uint8_t { PreferOne, PreferZero };

struct StepResult {
    Vec2 x_next;
    int sigma = 0;
    bool tied = false;
};

struct Trajectory {
    Vec2 start;
    std::vector<double> angles;     // phi_n in [0, 2*pi)
    std::vector<double> log_norms;  // ln of the Barabanov gauge of x_n
    SymbolSequence indices;
    std::vector<int> tie_events;
};

// One application of the generator. Both branches tie when their gauges agree
// to 1e-9 * rho_hat * gauge(x) (the polygon validator scale); the tie_rule
// decides the branch there.
inline StepResult step(const MatrixPair& pair, const BarabanovResult& norm, Vec2 x,
                       TieRule tie_rule = TieRule::PreferOne) {
    if (x.x == 0.0 && x.y == 0.0) throw std::invalid_argument("step: zero vector");
    const double rho = norm.rho_hat();
    const double gx = norm.polygon.gauge(x);
    const double g0 = norm.polygon.gauge(pair.a0 * x);
    const double g1 = norm.polygon.gauge(pair.a1 * x);
    StepResult r;
    r.tied = std::abs(g0 - g1) <= 1e-9 * rho * gx;
    if (r.tied)
        r.sigma = (tie_rule == TieRule::PreferOne) ? 1 : 0;
    else
        r.sigma = (g0 > g1) ? 0 : 1;
    r.x_next = (1.0 / rho) * ((r.sigma == 0 ? pair.a0 : pair.a1) * x);
    return r;
}

inline Trajectory run(const MatrixPair& pair, const BarabanovResult& norm, Vec2 x0, int steps,
                      TieRule tie_rule = TieRule::PreferOne) {
    if (x0.x == 0.0 && x0.y == 0.0) throw std::invalid_argument("run: zero start vector");
    if (steps < 1) throw std::invalid_argument("run: need at least one step");
    const double log_rho = std::log(norm.rho_hat());
    Trajectory traj;
    traj.start = x0;
    traj.angles.reserve(steps + 1);
    traj.log_norms.reserve(steps + 1);
    traj.indices.bits.reserve(steps);
    Vec2 x = x0;  // stored iterate: the true x_n is rho_hat^n times this
    for (int n = 0; n <= steps; ++n) {
        traj.angles.push_back(polar_angle(x));
        traj.log_norms.push_back(std::log(norm.polygon.gauge(x)) + n * log_rho);
        if (n == steps) break;
        const StepResult s = step(pair, norm, x, tie_rule);
        traj.indices.push_back(s.sigma);
        if (s.tied) traj.tie_events.push_back(n);
        x = s.x_next;
    }
    return traj;
}

// Norm-free iteration on the mod-pi circle: the branch is chosen by the same
// exact gauge comparison at the current direction, so the index sequence
// matches run() from the same starting direction.
inline SymbolSequence angular_run(const AngularProfile& prof, double phi0, int steps,
                                  TieRule tie_rule = TieRule::PreferOne) {
    if (steps < 1) throw std::invalid_argument("angular_run: need at least one step");
    double phi = phi0;
    while (phi >= kPi) phi -= kPi;
    while (phi < 0.0) phi += kPi;
    SymbolSequence seq;
    seq.bits.reserve(steps);
    for (int n = 0; n < steps; ++n) {
        const auto [next, sigma] = angular_step(prof, phi, tie_rule == TieRule::PreferOne);
        seq.push_back(sigma);
        phi = next;
    }
    return seq;
}

}  // namespace barnorm
