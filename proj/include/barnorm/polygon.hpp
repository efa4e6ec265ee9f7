#pragma once

// Centrally symmetric convex polygons used as unit balls of norms.
// A polygon stores 2k vertices in CCW order; vertex[i+k] == -vertex[i]
// exactly, because only the first half is stored independently and the
// second half is materialized by negation. All operations preserve that
// pairing by construction.

#include <algorithm>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "barnorm/linalg.hpp"

namespace barnorm {

// Centralized geometric tolerances.
inline constexpr double kGeomTol = 1e-10;       // operation-level comparisons
inline constexpr double kValidatorTol = 1e-9;   // invariant checks in tests
inline constexpr double kAngleMergeTol = 1e-11; // vertices closer than this in angle collapse
inline constexpr double kMinVertexRadius = 1e-9;

struct GaugeResult {
    double value = 0.0;
    int edge_index = -1;
};

class SymmetricPolygon {
public:
    SymmetricPolygon() = default;

    // Public constructor ("new_polygon"): symmetrizes the input, takes the
    // convex hull and orders vertices CCW by polar angle.
    static SymmetricPolygon from_points(std::span<const Vec2> points);

    static SymmetricPolygon regular(int vertex_count);

    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t half_count() const { return verts_.size() / 2; }
    Vec2 vertex(std::size_t i) const { return verts_[i]; }
    const std::vector<Vec2>& vertices() const { return verts_; }
    const std::vector<double>& vertex_angles() const { return angs_; }

    // Minkowski functional: smallest t >= 0 with x in t*P.
    double gauge(Vec2 x) const { return gauge_full(x).value; }
    GaugeResult gauge_full(Vec2 x) const;

    // {x : A x in P} = A^{-1} P.
    SymmetricPolygon linear_preimage(const Mat2& a) const;

    SymmetricPolygon scaled(double s) const;

    // Scales so that gauge(direction) == 1; returns the applied scale.
    std::pair<SymmetricPolygon, double> normalized(Vec2 direction) const;

    // Removes antipodal vertex pairs whose perpendicular deviation from the
    // chord of their neighbors is < eps. Only non-adjacent vertices are
    // removed in one pass, so the Hausdorff distance to the original is < eps.
    SymmetricPolygon pruned(double eps) const;

    double min_vertex_radius() const;
    double max_vertex_radius() const;
    // Distance from the origin to the nearest edge.
    double inradius() const;

    void serialize(std::ostream& os) const;
    static SymmetricPolygon deserialize(std::istream& is);

    // Internal entry point for points already known to lie on the boundary
    // of a symmetric convex body (no hull pass). Used by the norm iteration.
    static SymmetricPolygon from_boundary_points(std::vector<Vec2> points);

    // Index of the edge whose angular cell [ang_i, ang_{i+1}) contains angle.
    std::size_t edge_at(double angle) const;

private:
    std::vector<Vec2> verts_;   // size 2k, CCW, second half = negated first half
    std::vector<double> angs_;  // cached polar angles, strictly increasing

    void build_from_half(std::vector<std::pair<double, Vec2>> half);
};

SymmetricPolygon intersect(const SymmetricPolygon& p, const SymmetricPolygon& q);

// Invariant check used by tests after every operation; nullopt means valid.
std::optional<std::string> validate(const SymmetricPolygon& p);

// ---------------------------------------------------------------------------

inline void SymmetricPolygon::build_from_half(std::vector<std::pair<double, Vec2>> half) {
    std::sort(half.begin(), half.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge clusters of nearly identical direction: they are one corner
    // numerically, and leaving them in would create zero-length gauge cells.
    // The merged point's angle is recomputed so that the cached angle is
    // always polar_angle(vertex), independent of construction history.
    std::vector<std::pair<double, Vec2>> merged;
    for (const auto& [a, p] : half) {
        if (!merged.empty() && a - merged.back().first < kAngleMergeTol) {
            auto& [a0, p0] = merged.back();
            p0 = {0.5 * (p0.x + p.x), 0.5 * (p0.y + p.y)};
            a0 = polar_angle(p0);
            continue;
        }
        merged.emplace_back(a, p);
    }
    // Wraparound cluster: a corner straddling the angle-0 seam appears once
    // near 0 and once (negated) near pi. Keep the front representative.
    if (merged.size() > 1 && merged.front().first + kPi - merged.back().first < kAngleMergeTol)
        merged.pop_back();

    // Convexity repair: intersecting nearly coincident boundaries can leave
    // vertices a few ulp inside the chord of their neighbors. A strictly
    // concave vertex is never a corner of a convex body, so dropping it
    // perturbs the boundary only by that noise depth.
    auto neighbor = [&](std::size_t i, std::ptrdiff_t step) {
        const std::size_t k = merged.size();
        const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + step;
        if (j < 0) return Vec2{-merged[j + k].second.x, -merged[j + k].second.y};
        if (j >= static_cast<std::ptrdiff_t>(k))
            return Vec2{-merged[j - k].second.x, -merged[j - k].second.y};
        return merged[j].second;
    };
    for (bool changed = true; changed && merged.size() > 2;) {
        changed = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            const Vec2 v = merged[i].second;
            if (cross(v - neighbor(i, -1), neighbor(i, +1) - v) < 0.0) {
                merged.erase(merged.begin() + i);
                changed = true;
                break;
            }
        }
    }
    if (merged.size() < 2)
        throw DegenerateBallError("polygon degenerated to fewer than 4 vertices");
    const std::size_t k = merged.size();
    verts_.clear();
    angs_.clear();
    verts_.reserve(2 * k);
    angs_.reserve(2 * k);
    for (const auto& [a, p] : merged) {
        if (std::hypot(p.x, p.y) < kMinVertexRadius)
            throw DegenerateBallError("polygon vertex collapsed toward the origin");
        verts_.push_back(p);
        angs_.push_back(a);
    }
    for (std::size_t i = 0; i < k; ++i) {
        verts_.push_back(-verts_[i]);
        angs_.push_back(angs_[i] + kPi);
    }
}

inline SymmetricPolygon SymmetricPolygon::from_boundary_points(std::vector<Vec2> points) {
    std::vector<std::pair<double, Vec2>> half;
    half.reserve(points.size());
    for (Vec2 p : points) {
        if (p.x == 0.0 && p.y == 0.0) continue;
        double a = polar_angle(p);
        if (a >= kPi) {
            p = -p;
            a -= kPi;
        }
        half.emplace_back(a, p);
    }
    SymmetricPolygon poly;
    poly.build_from_half(std::move(half));
    return poly;
}

inline SymmetricPolygon SymmetricPolygon::from_points(std::span<const Vec2> points) {
    std::vector<Vec2> sym;
    sym.reserve(2 * points.size());
    for (Vec2 p : points) {
        if (!finite(p)) throw std::invalid_argument("polygon: non-finite input point");
        if (p.x == 0.0 && p.y == 0.0) continue;
        sym.push_back(p);
        sym.push_back(-p);
    }
    if (sym.size() < 4)
        throw std::invalid_argument("polygon: need at least 2 distinct non-antipodal points");

    // Andrew monotone chain; strict turns only, so collinear interior points drop.
    std::sort(sym.begin(), sym.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
    auto build = [&](auto begin, auto end, std::vector<Vec2>& out) {
        for (auto it = begin; it != end; ++it) {
            while (out.size() >= 2 &&
                   cross(out.back() - out[out.size() - 2], *it - out.back()) <= 0.0)
                out.pop_back();
            out.push_back(*it);
        }
    };
    std::vector<Vec2> lower, upper;
    build(sym.begin(), sym.end(), lower);
    build(sym.rbegin(), sym.rend(), upper);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 4)
        throw DegenerateBallError("polygon: all points collinear through the origin");
    return from_boundary_points(std::move(lower));
}

inline SymmetricPolygon SymmetricPolygon::regular(int vertex_count) {
    if (vertex_count < 4 || vertex_count % 2 != 0)
        throw std::invalid_argument("regular polygon: vertex count must be even and >= 4");
    std::vector<Vec2> pts;
    pts.reserve(vertex_count / 2);
    for (int i = 0; i < vertex_count / 2; ++i)
        pts.push_back(from_polar(1.0, kTau * i / vertex_count));
    return from_boundary_points(std::move(pts));
}

inline std::size_t SymmetricPolygon::edge_at(double angle) const {
    // Edge i spans directions [angs_[i], angs_[i+1]); the last edge wraps.
    if (angle < angs_.front() || angle >= angs_.back()) return angs_.size() - 1;
    std::size_t lo = 0, hi = angs_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (angs_[mid] <= angle ? lo : hi) = mid;
    }
    return lo;
}

inline GaugeResult SymmetricPolygon::gauge_full(Vec2 x) const {
    if (x.x == 0.0 && x.y == 0.0) return {0.0, -1};
    const std::size_t i = edge_at(polar_angle(x));
    const Vec2 v1 = verts_[i];
    const Vec2 v2 = verts_[(i + 1) % verts_.size()];
    // x/t lies on the edge line through v1, v2; both cross products are
    // transversal, so this form stays accurate even in very thin cells.
    const Vec2 e = v2 - v1;
    return {cross(e, x) / cross(e, v1), static_cast<int>(i)};
}

inline SymmetricPolygon SymmetricPolygon::linear_preimage(const Mat2& a) const {
    const Mat2 ai = invert(a);
    std::vector<Vec2> pts;
    pts.reserve(half_count());
    for (std::size_t i = 0; i < half_count(); ++i) pts.push_back(ai * verts_[i]);
    return from_boundary_points(std::move(pts));
}

inline SymmetricPolygon SymmetricPolygon::scaled(double s) const {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("polygon scale must be positive and finite");
    SymmetricPolygon p = *this;
    for (Vec2& v : p.verts_) v = s * v;  // angles are unchanged
    if (p.min_vertex_radius() < kMinVertexRadius)
        throw DegenerateBallError("polygon collapsed under scaling");
    return p;
}

inline std::pair<SymmetricPolygon, double> SymmetricPolygon::normalized(Vec2 direction) const {
    if (direction.x == 0.0 && direction.y == 0.0)
        throw std::invalid_argument("normalize: zero direction");
    const double g = gauge(direction);
    return {scaled(g), g};
}

inline SymmetricPolygon SymmetricPolygon::pruned(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("prune: eps must be >= 0");
    if (eps == 0.0) return *this;
    const std::size_t k = half_count();
    if (k <= 2) return *this;

    // Full-polygon neighbors of half vertex u_i: u_{i-1} and u_{i+1}, with
    // the wrap realized through the antipodal copy.
    auto at = [&](std::ptrdiff_t i) -> Vec2 {
        const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
        if (i < 0) return -verts_[i + kk];
        if (i >= kk) return -verts_[i - kk];
        return verts_[i];
    };
    auto deviation = [&](std::size_t i) {
        const Vec2 a = at(static_cast<std::ptrdiff_t>(i) - 1);
        const Vec2 b = at(static_cast<std::ptrdiff_t>(i) + 1);
        const Vec2 ab = b - a;
        const double len = ab.norm();
        if (len == 0.0) return 0.0;
        return std::abs(cross(ab, verts_[i] - a)) / len;
    };

    std::vector<bool> removed(k, false);
    std::size_t alive = k;
    for (std::size_t i = 0; i < k && alive > 2; ++i) {
        if (deviation(i) >= eps) continue;
        const bool prev_removed = removed[(i + k - 1) % k];
        const bool next_removed = removed[(i + 1) % k];
        if (prev_removed || next_removed) continue;  // keep chords single-gap
        removed[i] = true;
        --alive;
    }
    if (alive == k) return *this;
    std::vector<std::pair<double, Vec2>> half;
    half.reserve(alive);
    for (std::size_t i = 0; i < k; ++i)
        if (!removed[i]) half.emplace_back(angs_[i], verts_[i]);
    SymmetricPolygon p;
    p.build_from_half(std::move(half));
    return p;
}

inline double SymmetricPolygon::min_vertex_radius() const {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < half_count(); ++i) r = std::min(r, verts_[i].norm());
    return r;
}

inline double SymmetricPolygon::max_vertex_radius() const {
    double r = 0.0;
    for (std::size_t i = 0; i < half_count(); ++i) r = std::max(r, verts_[i].norm());
    return r;
}

inline double SymmetricPolygon::inradius() const {
    double r = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < half_count(); ++i) {
        const Vec2 a = verts_[i];
        const Vec2 b = verts_[(i + 1) % n];
        const Vec2 e = b - a;
        const double len = e.norm();
        if (len > 0.0) r = std::min(r, std::abs(cross(e, a)) / len);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Intersection of two symmetric convex polygons (both contain the origin).
// Corners of the result are: vertices of one polygon inside the other, plus
// boundary crossings. Crossings are found with one angular sweep over the
// merged vertex directions, O(n + m) line intersections.

inline SymmetricPolygon intersect(const SymmetricPolygon& p, const SymmetricPolygon& q) {
    std::vector<Vec2> cand;
    cand.reserve(p.half_count() + q.half_count() + 8);
    for (std::size_t i = 0; i < p.half_count(); ++i)
        if (q.gauge(p.vertex(i)) <= 1.0 + 1e-12) cand.push_back(p.vertex(i));
    for (std::size_t i = 0; i < q.half_count(); ++i)
        if (p.gauge(q.vertex(i)) <= 1.0 + 1e-12) cand.push_back(q.vertex(i));

    const auto& ap = p.vertex_angles();
    const auto& aq = q.vertex_angles();
    std::vector<double> brk;
    brk.reserve(ap.size() + aq.size());
    std::merge(ap.begin(), ap.end(), aq.begin(), aq.end(), std::back_inserter(brk));
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [](double a, double b) { return b - a < 1e-15; }),
              brk.end());

    const std::size_t np = p.vertex_count(), nq = q.vertex_count();
    for (std::size_t s = 0; s < brk.size(); ++s) {
        const double a0 = brk[s];
        const double a1 = brk[(s + 1) % brk.size()];
        double span = a1 - a0;
        if (span <= 0.0) span += kTau;
        double mid = a0 + span / 2.0;
        if (mid >= kTau) mid -= kTau;
        // Within this sector each boundary is a single edge.
        const std::size_t ie = p.edge_at(mid);
        const std::size_t je = q.edge_at(mid);
        const Vec2 p1 = p.vertex(ie), p2 = p.vertex((ie + 1) % np);
        const Vec2 q1 = q.vertex(je), q2 = q.vertex((je + 1) % nq);
        const Vec2 dp = p2 - p1, dq = q2 - q1;
        const double den = cross(dp, dq);
        if (std::abs(den) < 1e-18) continue;  // parallel edge lines
        const double t = cross(q1 - p1, dq) / den;
        const Vec2 z = p1 + t * dp;
        if (z.x == 0.0 && z.y == 0.0) continue;
        const double az = polar_angle(z);
        double off = az - a0;
        if (off < 0.0) off += kTau;
        if (off > span + 1e-15) continue;  // crossing outside this sector
        if (std::abs(p.gauge(z) - 1.0) < kValidatorTol && std::abs(q.gauge(z) - 1.0) < kValidatorTol)
            cand.push_back(z);
    }
    return SymmetricPolygon::from_boundary_points(std::move(cand));
}

// ---------------------------------------------------------------------------

inline std::optional<std::string> validate(const SymmetricPolygon& p) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    if (n < 4 || n % 2 != 0) return "vertex count must be even and >= 4";
    const std::size_t k = n / 2;
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 d = v[i] + v[i + k];
        if (std::abs(d.x) > kGeomTol || std::abs(d.y) > kGeomTol)
            return "central symmetry violated at vertex " + std::to_string(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = v[(i + 1) % n] - v[i];
        const Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(e1, e2) <= -1e-12)
            return "convexity violated at vertex " + std::to_string((i + 1) % n);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (v[i].norm() <= kMinVertexRadius)
            return "vertex radius not > 1e-9 at vertex " + std::to_string(i);
    const auto& a = p.vertex_angles();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(a[i] < a[i + 1])) return "vertex angles not strictly increasing";
    if (!(a.back() - a.front() < kTau)) return "vertex angles exceed one turn";
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Versioned text serialization; %.17g round-trips doubles exactly.

inline void SymmetricPolygon::serialize(std::ostream& os) const {
    os << "barnorm-polygon v1\n";
    os << "vertices " << verts_.size() << "\n";
    char buf[64];
    for (const Vec2& v : verts_) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x, v.y);
        os << buf;
    }
}

inline SymmetricPolygon SymmetricPolygon::deserialize(std::istream& is) {
    std::string header, tag;
    std::getline(is, header);
    if (header != "barnorm-polygon v1")
        throw std::invalid_argument("polygon file: unsupported header '" + header + "'");
    std::size_t n = 0;
    is >> tag >> n;
    if (tag != "vertices" || n < 4 || n % 2 != 0)
        throw std::invalid_argument("polygon file: bad vertex count line");
    std::vector<Vec2> pts(n);
    for (auto& v : pts)
        if (!(is >> v.x >> v.y)) throw std::invalid_argument("polygon file: truncated vertex list");
    // Bit-exact round trip: keep the stored first half verbatim, mirror the rest.
    const std::size_t k = n / 2;
    SymmetricPolygon p;
    p.verts_.assign(pts.begin(), pts.begin() + k);
    p.angs_.clear();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 d = pts[i] + pts[i + k];
        if (std::abs(d.x) > kGeomTol || std::abs(d.y) > kGeomTol)
            throw std::invalid_argument("polygon file: vertices not centrally symmetric");
        p.angs_.push_back(polar_angle(p.verts_[i]));
    }
    for (std::size_t i = 0; i < k; ++i) {
        p.verts_.push_back(-p.verts_[i]);
        p.angs_.push_back(p.angs_[i] + kPi);
    }
    for (std::size_t i = 0; i + 1 < p.angs_.size(); ++i)
        if (!(p.angs_[i] < p.angs_[i + 1]))
            throw std::invalid_argument("polygon file: vertices not sorted CCW from angle 0");
    if (auto err = validate(p)) throw std::invalid_argument("polygon file: " + *err);
    return p;
}

}  // namespace barnorm
