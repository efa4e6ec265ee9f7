#pragma once

// Angular function of the generator of extremal trajectories. On the mod-pi
// circle the generator acts as phi -> Phi_sigma(phi) where sigma picks the
// branch maximizing gauge(A_i x): this module samples that map, locates the
// switching set, classifies orientation, and estimates the rotation number.

#include <optional>
#include <vector>

#include "barnorm/barabanov.hpp"

namespace barnorm {

// Angular displacement threshold above which a branch change is counted as a
// discontinuity of the mod-pi circle map. Branch crossings where both images
// agree to within this are continuous switchings; the threshold sits well
// above the leftover of a rounded continuity-bifurcation parameter (~1e-3)
// and well below any genuine jump of the studied families (>= 8e-2).
inline constexpr double kJumpTol = 1e-2;

struct AngularProfile {
    std::vector<double> grid;        // phi in [0, pi), uniform
    std::vector<int> branch;         // sigma(phi), ties keep the left limit
    std::vector<double> phi_next;    // Phi(phi) in [0, pi)
    std::vector<double> switching_angles;   // zeros of gauge(A0 x) - gauge(A1 x)
    std::vector<double> discontinuities;    // switching angles with a real jump
    bool orientation_preserving = false;
    std::optional<double> rotation_number;  // in [0, 1); absent if orientation broken

    // Evaluation context, so downstream iteration uses exact gauge
    // comparisons rather than grid interpolation.
    MatrixPair pair;
    SymmetricPolygon ball;
    double rho_hat = 0.0;
};

struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SwitchingSets {
    std::vector<AngleInterval> omega0, omega1;  // angular projections of X0, X1
};

// Angular coordinates of A_i x(phi) on the mod-pi circle.
inline std::array<double, 2> branch_angles(const MatrixPair& pair, double phi) {
    const Vec2 x = from_polar(1.0, phi);
    return {polar_angle_mod_pi(pair.a0 * x), polar_angle_mod_pi(pair.a1 * x)};
}

inline std::optional<double> rotation_number_estimate(const AngularProfile& prof,
                                                      int iterations = 100000,
                                                      int burn_in = 1000, double phi0 = 0.0);

namespace detail {

// gauge(A0 x) - gauge(A1 x) at the unit direction phi.
inline double branch_gap(const MatrixPair& pair, const SymmetricPolygon& ball, double phi) {
    const Vec2 x = from_polar(1.0, phi);
    return ball.gauge(pair.a0 * x) - ball.gauge(pair.a1 * x);
}

// Distance between two points of the circle R/(pi Z).
inline double circle_dist_mod_pi(double a, double b) {
    double d = std::abs(a - b);
    while (d > kPi) d -= kPi;
    return std::min(d, kPi - d);
}

}  // namespace detail

inline AngularProfile angular_function(const MatrixPair& pair, const BarabanovResult& norm,
                                       int grid_size = 8192) {
    if (!norm.converged)
        throw std::invalid_argument("angular_function: norm iteration did not converge");
    if (grid_size < 16) throw std::invalid_argument("angular_function: grid too small");

    AngularProfile prof;
    prof.pair = pair;
    prof.ball = norm.polygon;
    prof.rho_hat = norm.rho_hat();
    const SymmetricPolygon& ball = prof.ball;

    const int n = grid_size;
    prof.grid.resize(n);
    prof.branch.resize(n);
    prof.phi_next.resize(n);
    std::vector<double> gap(n);
    for (int j = 0; j < n; ++j) {
        const double phi = kPi * j / n;
        prof.grid[j] = phi;
        gap[j] = detail::branch_gap(pair, ball, phi);
    }
    // Branch by sign; an exact tie keeps the branch of the left limit.
    for (int j = 0; j < n; ++j) {
        if (gap[j] > 0.0)
            prof.branch[j] = 0;
        else if (gap[j] < 0.0)
            prof.branch[j] = 1;
        else
            prof.branch[j] = (j > 0) ? prof.branch[j - 1] : (gap[n - 1] > 0.0 ? 0 : 1);
        const Vec2 x = from_polar(1.0, prof.grid[j]);
        const Vec2 y = (prof.branch[j] == 0 ? pair.a0 : pair.a1) * x;
        prof.phi_next[j] = polar_angle_mod_pi(y);
    }

    // Switching angles: bisection on sign changes of the gap, grid cell by
    // grid cell (the grid must be fine enough to separate the zeros).
    for (int j = 0; j < n; ++j) {
        const double g0 = gap[j];
        const double g1 = (j + 1 < n) ? gap[j + 1] : gap[0];  // pi-periodic wrap
        const bool s0 = g0 > 0.0 || (g0 == 0.0 && prof.branch[j] == 0);
        const bool s1 = g1 > 0.0 || (g1 == 0.0 && (j + 1 < n ? prof.branch[j + 1] : prof.branch[0]) == 0);
        if (s0 == s1) continue;
        double lo = kPi * j / n, hi = kPi * (j + 1) / n;
        double glo = g0;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            const double gm = detail::branch_gap(pair, ball, mid);
            if ((gm > 0.0) == (glo > 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        prof.switching_angles.push_back(0.5 * (lo + hi));
    }

    // A switching angle is a discontinuity iff the two branch images differ
    // as points of the mod-pi circle.
    for (double w : prof.switching_angles) {
        const auto [b0, b1] = branch_angles(pair, w);
        if (detail::circle_dist_mod_pi(b0, b1) > kJumpTol) prof.discontinuities.push_back(w);
    }

    // Orientation as cyclic order preservation. Both requirements matter:
    // the lift must be nondecreasing away from the branch jumps, and the
    // total displacement over one period, taking each jump forward, must be
    // a single turn. A doubled winding means the two branch image arcs
    // overlap, and cyclic triples through the overlap reverse even though
    // every branch is increasing.
    bool orient = true;
    const double slack = 1e-9;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double phi0 = prof.grid[j];
        const double phi1 = (j + 1 < n) ? prof.grid[j + 1] : kPi;
        bool straddles = false;
        for (double w : prof.switching_angles)
            if (phi0 < w && w <= phi1) straddles = true;
        if (straddles) continue;  // jump contributions are added below
        const double v0 = prof.phi_next[j];
        const double v1 = (j + 1 < n) ? prof.phi_next[j + 1] : prof.phi_next[0];
        double dv = v1 - v0;
        while (dv > kPi / 2) dv -= kPi;
        while (dv < -kPi / 2) dv += kPi;
        if (dv < -slack) orient = false;
        total += dv;
    }
    for (double w : prof.switching_angles) {
        // branch on each side of the crossing, read from the grid
        int j = std::min(n - 1, static_cast<int>(w / kPi * n));
        while (j > 0 && prof.grid[j] >= w) --j;
        const int left = prof.branch[j];
        const int right = prof.branch[(j + 1) % n];
        const auto imgs = branch_angles(pair, w);
        double jump = imgs[right] - imgs[left];
        while (jump < 0.0) jump += kPi;
        while (jump >= kPi) jump -= kPi;
        if (jump > kPi - kJumpTol) jump -= kPi;  // continuous crossing, noise below zero
        total += jump;
    }
    if (!(std::abs(total - kPi) < kPi / 2)) orient = false;
    prof.orientation_preserving = orient;
    if (orient) prof.rotation_number = rotation_number_estimate(prof, 100000, 1000, 0.0);
    return prof;
}

// The angular projections of X0 and X1 as intervals of [0, pi), split at the
// switching angles; interval endpoints are shared switching angles.
inline SwitchingSets switching_sets(const AngularProfile& prof) {
    SwitchingSets sets;
    const auto& sw = prof.switching_angles;
    if (sw.empty()) {
        (prof.branch.front() == 0 ? sets.omega0 : sets.omega1).push_back({0.0, kPi});
        return sets;
    }
    const int n = static_cast<int>(prof.grid.size());
    for (std::size_t i = 0; i < sw.size(); ++i) {
        const double lo = sw[i];
        const double hi = (i + 1 < sw.size()) ? sw[i + 1] : sw[0] + kPi;
        // Branch on this arc, read at its midpoint via the grid.
        double mid = 0.5 * (lo + hi);
        if (mid >= kPi) mid -= kPi;
        const int j = std::min(n - 1, static_cast<int>(mid / kPi * n));
        (prof.branch[j] == 0 ? sets.omega0 : sets.omega1).push_back({lo, hi});
    }
    return sets;
}

// Count of switching angles in [0, pi); each is a full line through the
// origin by central symmetry.
inline int switching_lines(const AngularProfile& prof) {
    return static_cast<int>(prof.switching_angles.size());
}

// Exact one-step angular map: branch by gauge comparison at phi, image angle
// of the selected branch. Tie resolution matches the trajectory module.
inline std::pair<double, int> angular_step(const AngularProfile& prof, double phi,
                                           bool prefer_one_on_tie = true) {
    const Vec2 x = from_polar(1.0, phi);
    const double gx = prof.ball.gauge(x);
    const double g0 = prof.ball.gauge(prof.pair.a0 * x);
    const double g1 = prof.ball.gauge(prof.pair.a1 * x);
    int sigma;
    if (std::abs(g0 - g1) <= 1e-9 * prof.rho_hat * gx)
        sigma = prefer_one_on_tie ? 1 : 0;
    else
        sigma = (g0 > g1) ? 0 : 1;
    const Vec2 y = (sigma == 0 ? prof.pair.a0 : prof.pair.a1) * x;
    return {polar_angle_mod_pi(y), sigma};
}

// Mean lifted displacement over the mod-pi circle, rescaled to [0, 1).
// Defined only for orientation-preserving maps; the non-orientable case
// would need a rotation interval and is reported as absent.
inline std::optional<double> rotation_number_estimate(const AngularProfile& prof,
                                                      int iterations, int burn_in,
                                                      double phi0) {
    if (!prof.orientation_preserving) return std::nullopt;
    if (iterations < 1) throw std::invalid_argument("rotation number: iterations must be >= 1");
    double phi = phi0;
    for (int i = 0; i < burn_in; ++i) phi = angular_step(prof, phi).first;
    double sum = 0.0;
    for (int i = 0; i < iterations; ++i) {
        const double next = angular_step(prof, phi).first;
        double d = next - phi;
        if (d < 0.0) d += kPi;  // forward displacement on the mod-pi circle
        sum += d;
        phi = next;
    }
    return (sum / iterations) / kPi;
}

}  // namespace barnorm
