#pragma once

// Iterative construction of an approximate Barabanov norm as a polygon
// fixed point of (Th)(x) = max_i h(A_i x), with certified two-sided bounds
// on the joint spectral radius at every step.
//
// The bounds come from the ratio g(x) = max_i gauge(A_i x) / gauge(x):
//   min_x g(x)  <=  rho(A)  <=  max_x g(x)
// g is monotone between consecutive vertex directions of P and of T(P),
// so its exact extrema are attained on that finite direction set.

#include <functional>
#include <vector>

#include "barnorm/linalg.hpp"
#include "barnorm/polygon.hpp"

namespace barnorm {

enum class Scheme : uint8_t { PowerNormalize, MaxRelaxation };

struct IterationConfig {
    double tol = 1e-4;          // target rho_upper - rho_lower gap
    int max_iter = 20000;
    int initial_vertices = 64;  // regular 2k-gon start
    double prune_eps = 0.0;     // 0 keeps every iteration exact
    Scheme scheme = Scheme::PowerNormalize;
    Vec2 reference_direction{1.0, 0.0};
    // MaxRelaxation seeds its relaxation scalar with the best spectral-radius
    // lower bound over all words up to this length (0 disables the seed).
    int warm_start_depth = 16;

    void check() const {
        if (!(tol > 0.0)) throw std::invalid_argument("IterationConfig: tol must be > 0");
        if (max_iter < 1) throw std::invalid_argument("IterationConfig: max_iter must be >= 1");
        if (initial_vertices < 4 || initial_vertices % 2 != 0)
            throw std::invalid_argument("IterationConfig: initial_vertices must be even and >= 4");
        if (prune_eps < 0.0) throw std::invalid_argument("IterationConfig: prune_eps must be >= 0");
        if (warm_start_depth < 0 || warm_start_depth > 24)
            throw std::invalid_argument("IterationConfig: warm_start_depth must be in [0, 24]");
    }
};

struct IterationRecord {
    int iteration = 0;
    double lower = 0.0;
    double upper = 0.0;
    int vertex_count = 0;
};

struct BarabanovResult {
    SymmetricPolygon polygon;
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    int iterations = 0;
    double residual = 0.0;  // max_v |max_i gauge(A_i v) - rho_hat| / rho_hat over vertices
    bool converged = false;
    std::vector<IterationRecord> trace;

    double rho_hat() const { return 0.5 * (rho_lower + rho_upper); }
};

struct RatioBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct BruteForceBounds {
    double rho_bar_n = 0.0;        // max over words of length n of specrad^(1/n)
    double rho_lower_env = 0.0;    // max over lengths k <= n of rho_bar_k
    double rho_n = 0.0;            // max over words of length n of opnorm^(1/n)
};

// Unit ball of x -> max_i gauge(P, A_i x): preimages intersected.
inline SymmetricPolygon barabanov_operator(const MatrixPair& pair, const SymmetricPolygon& p) {
    return intersect(p.linear_preimage(pair.a0), p.linear_preimage(pair.a1));
}

namespace detail {

inline RatioBounds ratio_bounds_with(const MatrixPair& pair, const SymmetricPolygon& p,
                                     const SymmetricPolygon& tp) {
    RatioBounds rb{std::numeric_limits<double>::infinity(), 0.0};
    auto scan = [&](const SymmetricPolygon& dirs) {
        for (std::size_t i = 0; i < dirs.half_count(); ++i) {
            const Vec2 v = dirs.vertex(i);
            const double g = std::max(p.gauge(pair.a0 * v), p.gauge(pair.a1 * v)) / p.gauge(v);
            rb.lower = std::min(rb.lower, g);
            rb.upper = std::max(rb.upper, g);
        }
    };
    scan(p);
    scan(tp);
    return rb;
}

}  // namespace detail

inline RatioBounds ratio_bounds(const MatrixPair& pair, const SymmetricPolygon& p) {
    return detail::ratio_bounds_with(pair, p, barabanov_operator(pair, p));
}

// Exhaustive enumeration of all words of length n (and all shorter prefixes).
inline BruteForceBounds brute_force_bounds(const MatrixPair& pair, int n) {
    if (n < 1 || n > 24)
        throw std::invalid_argument("brute_force_bounds: n must be in [1, 24]");
    BruteForceBounds out;
    std::vector<double> bar_by_len(static_cast<std::size_t>(n) + 1, 0.0);
    // Depth-first over prefix products; the stack never exceeds n matrices.
    std::vector<Mat2> stack;
    stack.reserve(n + 1);
    stack.push_back(Mat2::identity());
    std::vector<int> word(static_cast<std::size_t>(n), 0);
    int depth = 0;
    while (true) {
        if (depth < n) {
            const Mat2& top = stack.back();
            const Mat2 next = (word[depth] == 0 ? pair.a0 : pair.a1) * top;
            ++depth;
            stack.push_back(next);
            const double sr = std::pow(spectral_radius(next), 1.0 / depth);
            bar_by_len[depth] = std::max(bar_by_len[depth], sr);
            if (depth == n)
                out.rho_n = std::max(out.rho_n, std::pow(operator_norm(next), 1.0 / n));
            continue;
        }
        // backtrack to the deepest position still holding a 0
        while (depth > 0 && word[depth - 1] == 1) {
            word[depth - 1] = 0;
            stack.pop_back();
            --depth;
        }
        if (depth == 0) break;
        word[depth - 1] = 1;
        stack.pop_back();
        --depth;
    }
    out.rho_bar_n = bar_by_len[n];
    for (int k = 1; k <= n; ++k) out.rho_lower_env = std::max(out.rho_lower_env, bar_by_len[k]);
    return out;
}

namespace detail {

inline void guard_ball(const SymmetricPolygon& p) {
    if (p.min_vertex_radius() < kMinVertexRadius || p.max_vertex_radius() > 1e12)
        throw DegenerateBallError("norm ball degenerated; the pair is likely reducible");
}

inline double ball_residual(const MatrixPair& pair, const SymmetricPolygon& p, double rho_hat) {
    double resid = 0.0;
    for (std::size_t i = 0; i < p.half_count(); ++i) {
        const Vec2 v = p.vertex(i);
        const double m = std::max(p.gauge(pair.a0 * v), p.gauge(pair.a1 * v)) / p.gauge(v);
        resid = std::max(resid, std::abs(m - rho_hat) / rho_hat);
    }
    return resid;
}

// Plain power iteration on unit balls: P <- normalize(T(P)). The scale
// stripped by the normalization is the running rho estimate. Monotone in the
// bound gap but can cycle indefinitely for rotation-like pairs.
inline void run_power_normalize(const MatrixPair& pair, const IterationConfig& cfg,
                                BarabanovResult& res, SymmetricPolygon& p) {
    for (int k = res.iterations + 1; k <= cfg.max_iter; ++k) {
        const SymmetricPolygon tp = barabanov_operator(pair, p);
        const RatioBounds rb = ratio_bounds_with(pair, p, tp);
        res.rho_lower = std::max(res.rho_lower, rb.lower);
        res.rho_upper = std::min(res.rho_upper, rb.upper);
        res.iterations = k;
        res.trace.push_back({k, res.rho_lower, res.rho_upper, static_cast<int>(p.vertex_count())});
        // The stop looks at the current polygon's own ratio range, not the
        // accumulated bounds, so the returned ball is an honest tol-level
        // Barabanov ball and the residual inherits the same bound.
        if (rb.upper - rb.lower <= cfg.tol) {
            res.converged = true;
            return;
        }
        if (k == cfg.max_iter) return;
        SymmetricPolygon next = tp;
        if (cfg.prune_eps > 0.0) next = next.pruned(cfg.prune_eps);
        p = next.normalized(cfg.reference_direction).first;
        guard_ball(p);
    }
}

// Max-relaxation: two stages.
//
// Stage 1 iterates the shrinking envelope B <- B /\ r*T(B) with r the best
// certified lower bound (the ball of max(h, (1/r) Th)). This tightens the
// certified bounds quickly but converges to an extremal ball that need not
// be Barabanov: wherever max_i h(A_i x) < rho h(x) the envelope stalls.
//
// Stage 2 removes that transient slack with a windowed tail envelope, the
// finite-horizon version of the classical limsup construction of Barabanov
// norms: over a window of W scalar-normalized power iterates C_{j+1} =
// rho_t * T(C_j), intersect all iterates. A rotating error profile of the
// power orbit is flattened by the window intersection, and the measured
// growth over the window corrects the scalar rho_t for the next one.
inline void run_max_relaxation(const MatrixPair& pair, const IterationConfig& cfg,
                               BarabanovResult& res, SymmetricPolygon& p) {
    const Vec2 e = cfg.reference_direction;
    const double structural_eps = std::max(cfg.prune_eps, 1e-13);
    const double inradius0 = p.inradius();
    int k = 0;

    auto record = [&](const RatioBounds& rb, const SymmetricPolygon& witness) {
        res.rho_lower = std::max(res.rho_lower, rb.lower);
        res.rho_upper = std::min(res.rho_upper, rb.upper);
        res.iterations = k;
        res.trace.push_back({k, res.rho_lower, res.rho_upper,
                             static_cast<int>(witness.vertex_count())});
    };

    // Stage 1: shrinking envelope with the certified lower bound as scalar.
    const int stage1_cap = std::min(cfg.max_iter, 80);
    double prev_gap = std::numeric_limits<double>::infinity();
    int stalled = 0;
    while (k < stage1_cap) {
        ++k;
        const SymmetricPolygon tp = barabanov_operator(pair, p);
        const RatioBounds rb = ratio_bounds_with(pair, p, tp);
        record(rb, p);
        if (rb.upper - rb.lower <= cfg.tol) {
            res.converged = true;
            return;
        }
        double r = res.rho_lower;
        if (p.inradius() > 10.0 * inradius0 && std::isfinite(res.rho_upper))
            r = res.rho_upper;  // divergence guard; raises the relaxation scalar
        p = intersect(p, tp.scaled(r)).pruned(structural_eps).normalized(e).first;
        guard_ball(p);
        const double gap = res.rho_upper - res.rho_lower;
        stalled = (gap > 0.97 * prev_gap) ? stalled + 1 : 0;
        prev_gap = gap;
        if (stalled >= 8) break;  // certified bounds no longer improving
    }

    // Stage 2: windowed tail envelope over a free-running power orbit. The
    // orbit itself heals the transient slack (it converges outright when the
    // angular dynamics is mode-locked); the window intersection flattens the
    // rotating error profile in the quasi-periodic regime. Either the orbit
    // or the envelope reaching a tol-wide ratio band ends the iteration.
    double rho_t = std::isfinite(res.rho_upper) ? res.rho_hat() : res.rho_lower;
    SymmetricPolygon c = p.normalized(e).first;
    int window = 16;
    while (k < cfg.max_iter) {
        SymmetricPolygon envelope = c;
        const int w = std::min(window, cfg.max_iter - k);
        for (int j = 0; j < w; ++j) {
            ++k;
            const SymmetricPolygon tc = barabanov_operator(pair, c);
            const RatioBounds rb = ratio_bounds_with(pair, c, tc);
            record(rb, c);
            if (rb.upper - rb.lower <= cfg.tol) {
                p = c;
                res.converged = true;
                return;
            }
            c = tc.scaled(rho_t).pruned(structural_eps);
            guard_ball(c);
            envelope = intersect(envelope, c).pruned(structural_eps);
        }
        const SymmetricPolygon te = barabanov_operator(pair, envelope);
        const RatioBounds rbe = ratio_bounds_with(pair, envelope, te);
        record(rbe, envelope);
        if (rbe.upper - rbe.lower <= cfg.tol) {
            p = envelope;
            res.converged = true;
            return;
        }
        p = envelope;
        // Growth measured across the window corrects the scalar: the window
        // started from gauge(c, e) == 1, so the drift at e is the accumulated
        // mismatch between rho_t and the true growth rate.
        const double drift = c.gauge(e);
        if (drift > 0.0 && std::isfinite(drift))
            rho_t = std::clamp(rho_t * std::pow(drift, 1.0 / w), res.rho_lower, res.rho_upper);
        c = c.normalized(e).first;
        window = std::min(2 * window, 256);
    }
}

}  // namespace detail

inline BarabanovResult compute_barabanov(const MatrixPair& pair, const IterationConfig& cfg) {
    cfg.check();
    const Vec2 e = cfg.reference_direction;
    if (e.x == 0.0 && e.y == 0.0)
        throw std::invalid_argument("IterationConfig: zero reference direction");

    SymmetricPolygon p = SymmetricPolygon::regular(cfg.initial_vertices);

    BarabanovResult res;
    res.rho_lower = 0.0;
    res.rho_upper = std::numeric_limits<double>::infinity();
    if (cfg.scheme == Scheme::MaxRelaxation && cfg.warm_start_depth > 0)
        res.rho_lower = brute_force_bounds(pair, cfg.warm_start_depth).rho_lower_env;

    if (cfg.scheme == Scheme::PowerNormalize)
        detail::run_power_normalize(pair, cfg, res, p);
    else
        detail::run_max_relaxation(pair, cfg, res, p);

    res.polygon = p;
    res.residual = detail::ball_residual(pair, p, res.rho_hat());
    return res;
}

}  // namespace barnorm
