#pragma once

// Minimal deterministic SVG emission for the three figure roles: the unit
// sphere of the computed norm with branch level sets and switching lines,
// a trajectory on that sphere shaded by branch, and the graph of the
// angular function with its discontinuities marked.

#include <sstream>
#include <string>
#include <vector>

#include "barnorm/angular.hpp"
#include "barnorm/barabanov.hpp"
#include "barnorm/trajectory.hpp"

namespace barnorm {

class SvgCanvas {
public:
    SvgCanvas(double x0, double y0, double x1, double y1, int px = 640)
        : x0_(x0), y0_(y0), x1_(x1), y1_(y1), px_(px) {}

    void polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width,
                  const std::string& dash = "", bool close = false) {
        if (pts.size() < 2) return;
        body_ << (close ? "<polygon" : "<polyline") << " points=\"";
        for (const Vec2& p : pts) body_ << fx(p.x) << "," << fy(p.y) << " ";
        body_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
    }

    void line(Vec2 a, Vec2 b, const std::string& stroke, double width,
              const std::string& dash = "") {
        body_ << "<line x1=\"" << fx(a.x) << "\" y1=\"" << fy(a.y) << "\" x2=\"" << fx(b.x)
              << "\" y2=\"" << fy(b.y) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
              << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
    }

    void dot(Vec2 p, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << fx(p.x) << "\" cy=\"" << fy(p.y) << "\" r=\"" << r
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(Vec2 p, const std::string& s, int size = 12) {
        body_ << "<text x=\"" << fx(p.x) << "\" y=\"" << fy(p.y) << "\" font-size=\"" << size
              << "\" font-family=\"monospace\">" << s << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_ << "\" height=\"" << px_
            << "\" viewBox=\"0 0 " << px_ << " " << px_ << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double x0_, y0_, x1_, y1_;
    int px_;
    std::ostringstream body_;

    std::string fmt(double v) const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return buf;
    }
    std::string fx(double x) const { return fmt((x - x0_) / (x1_ - x0_) * px_); }
    std::string fy(double y) const { return fmt((y1_ - y) / (y1_ - y0_) * px_); }
};

namespace detail {

inline std::vector<Vec2> closed_vertices(const SymmetricPolygon& p, double scale = 1.0) {
    std::vector<Vec2> pts;
    pts.reserve(p.vertex_count());
    for (const Vec2& v : p.vertices()) pts.push_back(scale * v);
    return pts;
}

inline void draw_switch_lines(SvgCanvas& svg, const std::vector<double>& angles, double radius) {
    for (double w : angles) {
        const Vec2 u = from_polar(radius, w);
        svg.line(-u, u, "#444444", 1.0, "8,3,2,3");  // dash-dot
    }
}

}  // namespace detail

// Unit sphere of the norm (solid), the level sets gauge(A_i x) = rho_hat
// (dotted for A0, dashed for A1), and the switching lines (dash-dot).
inline std::string figure_norm(const MatrixPair& pair, const BarabanovResult& norm,
                               const std::vector<double>& switching_angles) {
    const double r = 1.25 * norm.polygon.max_vertex_radius();
    SvgCanvas svg(-r, -r, r, r);
    const double rho = norm.rho_hat();
    // {x : gauge(A_i x) = rho} is rho times the preimage of the unit ball.
    const auto lvl0 = norm.polygon.linear_preimage(pair.a0).scaled(rho);
    const auto lvl1 = norm.polygon.linear_preimage(pair.a1).scaled(rho);
    svg.polyline(detail::closed_vertices(lvl0), "#1f77b4", 1.0, "2,3", true);
    svg.polyline(detail::closed_vertices(lvl1), "#d62728", 1.0, "7,4", true);
    detail::draw_switch_lines(svg, switching_angles, r);
    svg.polyline(detail::closed_vertices(norm.polygon), "black", 1.8, "", true);
    svg.text({-r * 0.98, r * 0.94}, "unit sphere; dotted: |A0 x|=rho, dashed: |A1 x|=rho");
    return svg.str();
}

// Trajectory points projected to the unit sphere of the norm, colored by the
// branch applied at each point.
inline std::string figure_trajectory(const BarabanovResult& norm, const Trajectory& traj,
                                     const std::vector<double>& switching_angles) {
    const double r = 1.25 * norm.polygon.max_vertex_radius();
    SvgCanvas svg(-r, -r, r, r);
    svg.polyline(detail::closed_vertices(norm.polygon), "black", 1.2, "", true);
    detail::draw_switch_lines(svg, switching_angles, r);
    const std::size_t count = std::min<std::size_t>(traj.indices.size(), 400);
    std::vector<Vec2> path;
    path.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const Vec2 u = from_polar(1.0, traj.angles[n]);
        const Vec2 x = (1.0 / norm.polygon.gauge(u)) * u;
        path.push_back(x);
        svg.dot(x, 2.2, traj.indices[n] == 0 ? "#1f77b4" : "#d62728");
    }
    svg.polyline(path, "#999999", 0.5);
    svg.text({-r * 0.98, r * 0.94}, "trajectory on the unit sphere; blue: A0 step, red: A1 step");
    return svg.str();
}

// Graph of Phi over [0, pi), split at its discontinuities.
inline std::string figure_angular(const AngularProfile& prof) {
    SvgCanvas svg(0.0, 0.0, kPi, kPi);
    svg.line({0, 0}, {kPi, kPi}, "#bbbbbb", 0.8);  // identity for reference
    std::vector<Vec2> seg;
    const std::size_t n = prof.grid.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 p{prof.grid[j], prof.phi_next[j]};
        const bool jump = !seg.empty() && std::abs(p.y - seg.back().y) > kPi / 8;
        bool at_disc = false;
        if (j > 0)
            for (double w : prof.discontinuities)
                if (prof.grid[j - 1] < w && w <= prof.grid[j]) at_disc = true;
        if (jump || at_disc) {
            svg.polyline(seg, "black", 1.5);
            seg.clear();
        }
        seg.push_back(p);
    }
    svg.polyline(seg, "black", 1.5);
    for (double w : prof.discontinuities)
        svg.line({w, 0}, {w, kPi}, "#d62728", 0.8, "4,3");
    for (double w : prof.switching_angles) svg.dot({w, 0.03}, 3.0, "#444444");
    svg.text({0.05, kPi * 0.97}, "angular function on [0, pi)");
    return svg.str();
}

}  // namespace barnorm
