#pragma once

// 2x2 linear algebra for the norm iteration: vectors, matrices, polar
// coordinates, spectral radii, word products, and the two matrix families.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace barnorm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTau = 2.0 * kPi;

// A matrix is treated as singular below this determinant magnitude;
// polygon preimages need inverses, so such matrices are rejected outright.
inline constexpr double kSingularTol = 1e-12;

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DegenerateBallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

    double norm() const { return std::hypot(x, y); }
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 rotation(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c, -s, s, c};
    }
    static Mat2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

    double det() const { return a11 * a22 - a12 * a21; }
    double frobenius_sq() const { return a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22; }

    friend Vec2 operator*(const Mat2& m, Vec2 v) {
        return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend Mat2 operator*(double s, const Mat2& m) {
        return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
    }
    friend bool operator==(const Mat2& a, const Mat2& b) {
        return a.a11 == b.a11 && a.a12 == b.a12 && a.a21 == b.a21 && a.a22 == b.a22;
    }
};

inline bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }
inline bool finite(const Mat2& m) {
    return std::isfinite(m.a11) && std::isfinite(m.a12) &&
           std::isfinite(m.a21) && std::isfinite(m.a22);
}

// Largest eigenvalue modulus from the trace/determinant closed form.
// A complex pair has |lambda| = sqrt(det), valid since disc < 0 forces det > 0.
inline double spectral_radius(const Mat2& m) {
    const double tr = m.a11 + m.a22;
    const double d = m.det();
    const double disc = tr * tr - 4.0 * d;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
    }
    return std::sqrt(d);
}

// Euclidean operator norm (largest singular value).
inline double operator_norm(const Mat2& m) {
    const double f = m.frobenius_sq();
    const double d = m.det();
    double disc = f * f - 4.0 * d * d;
    if (disc < 0.0) disc = 0.0;  // roundoff near equal singular values
    return std::sqrt((f + std::sqrt(disc)) / 2.0);
}

inline Mat2 invert(const Mat2& m) {
    const double d = m.det();
    if (std::abs(d) <= kSingularTol)
        throw SingularMatrixError("matrix is numerically singular (|det| <= 1e-12)");
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

// Angle of a nonzero vector in [0, 2*pi).
inline double polar_angle(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0)
        throw std::invalid_argument("polar_angle: zero vector");
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kTau;
    if (a >= kTau) a = 0.0;
    return a;
}

inline Vec2 from_polar(double r, double phi) {
    return {r * std::cos(phi), r * std::sin(phi)};
}

// Direction angle reduced to [0, pi); linear images of +/-x share it.
inline double polar_angle_mod_pi(Vec2 v) {
    double a = polar_angle(v);
    if (a >= kPi) a -= kPi;
    if (a >= kPi) a = 0.0;
    return a;
}

enum class Family : uint8_t { Affine, Rotation, Raw };

// The pair {A0, A1} together with how it was constructed. Family parameters
// regenerate the stored matrices bit-for-bit via the same constructor.
struct MatrixPair {
    Mat2 a0, a1;
    Family family = Family::Raw;
    std::array<double, 6> params{};  // affine: alpha beta a b c d; rotation: th0 th1 lambda
    bool constraint_ok = true;       // affine family: bc >= 1 >= a, d

    MatrixPair scaled(double c) const {
        MatrixPair p = *this;
        p.a0 = c * a0;
        p.a1 = c * a1;
        p.family = Family::Raw;
        p.params = {};
        return p;
    }
};

inline MatrixPair make_raw_pair(const Mat2& a0, const Mat2& a1) {
    if (!finite(a0) || !finite(a1))
        throw std::invalid_argument("make_raw_pair: non-finite entries");
    if (std::abs(a0.det()) <= kSingularTol || std::abs(a1.det()) <= kSingularTol)
        throw SingularMatrixError("make_raw_pair: singular matrix in pair");
    MatrixPair p;
    p.a0 = a0;
    p.a1 = a1;
    return p;
}

// A0 = alpha*[[a,b],[0,1]], A1 = beta*[[1,0],[c,d]].
// The constraint bc >= 1 >= a, d is flagged, not enforced: the norm
// iteration does not need it, only the Sturmian-structure theory does.
inline MatrixPair make_affine_pair(double alpha, double beta, double a, double b,
                                   double c, double d) {
    for (double v : {alpha, beta, a, b, c, d})
        if (!std::isfinite(v)) throw std::invalid_argument("make_affine_pair: non-finite parameter");
    if (alpha <= 0.0 || beta <= 0.0) throw std::invalid_argument("make_affine_pair: alpha, beta must be > 0");
    if (a <= 0.0 || d <= 0.0) throw std::invalid_argument("make_affine_pair: a, d must be > 0");
    MatrixPair p;
    p.a0 = Mat2{alpha * a, alpha * b, 0.0, alpha};
    p.a1 = Mat2{beta, 0.0, beta * c, beta * d};
    if (std::abs(p.a0.det()) <= kSingularTol || std::abs(p.a1.det()) <= kSingularTol)
        throw SingularMatrixError("make_affine_pair: singular matrix");
    p.family = Family::Affine;
    p.params = {alpha, beta, a, b, c, d};
    p.constraint_ok = (b * c >= 1.0 && a <= 1.0 && d <= 1.0);
    return p;
}

// A0 = plane rotation by theta0; A1 = rotation by theta1 conjugated by
// diag(lambda, 1), so det A1 = 1.
inline MatrixPair make_rotation_pair(double theta0, double theta1, double lambda) {
    for (double v : {theta0, theta1, lambda})
        if (!std::isfinite(v)) throw std::invalid_argument("make_rotation_pair: non-finite parameter");
    if (lambda <= 0.0) throw std::invalid_argument("make_rotation_pair: lambda must be > 0");
    MatrixPair p;
    p.a0 = Mat2::rotation(theta0);
    p.a1 = Mat2{std::cos(theta1), -lambda * std::sin(theta1),
                std::sin(theta1) / lambda, std::cos(theta1)};
    if (std::abs(p.a0.det()) <= kSingularTol || std::abs(p.a1.det()) <= kSingularTol)
        throw SingularMatrixError("make_rotation_pair: singular matrix");
    p.family = Family::Rotation;
    p.params = {theta0, theta1, lambda, 0.0, 0.0, 0.0};
    return p;
}

// Finite index word sigma_0 ... sigma_{n-1} over {0, 1}.
struct Word {
    std::vector<int> symbols;

    Word() = default;
    Word(std::initializer_list<int> s) : symbols(s) { check(); }
    explicit Word(std::vector<int> s) : symbols(std::move(s)) { check(); }

    std::size_t size() const { return symbols.size(); }

private:
    void check() const {
        if (symbols.empty()) throw std::invalid_argument("Word: must be nonempty");
        for (int s : symbols)
            if (s != 0 && s != 1) throw std::invalid_argument("Word: symbols must be 0 or 1");
    }
};

// A_sigma = A_{sigma_{n-1}} ... A_{sigma_1} A_{sigma_0}: sigma_0 acts first.
inline Mat2 word_product(const MatrixPair& pair, const Word& w) {
    Mat2 prod = Mat2::identity();
    for (int s : w.symbols) prod = (s == 0 ? pair.a0 : pair.a1) * prod;
    return prod;
}

}  // namespace barnorm
