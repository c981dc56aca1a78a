#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace rzchart {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

/// Dense 2x2 matrix, row-major. Small enough that everything is by value.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Vec2 operator*(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }

    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }

    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
        return Mat2{a22, -a12, -a21, a11} * (1.0 / d);
    }

    bool is_diagonal(double tol = 0.0) const {
        return std::abs(a12) <= tol && std::abs(a21) <= tol;
    }

    /// Largest eigenvalue modulus (eigenvalues may be complex).
    double spectral_radius() const {
        const double t = trace();
        const double disc = t * t - 4.0 * det();
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            return std::max(std::abs(0.5 * (t + s)), std::abs(0.5 * (t - s)));
        }
        return std::sqrt(0.25 * t * t + 0.25 * (-disc));  // |t/2 +- i sqrt(-disc)/2|
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

/// A^k by repeated multiplication. k is small (subgroup sizes), no need for
/// exponentiation by squaring.
inline Mat2 matrix_power(const Mat2& m, int k) {
    Mat2 r = Mat2::identity();
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline std::array<double, 2> symmetric_eigenvalues(const Mat2& s) {
    const double mean = 0.5 * s.trace();
    const double off = 0.5 * (s.a11 - s.a22);
    const double r = std::sqrt(off * off + s.a12 * s.a21);
    return {mean - r, mean + r};
}

/// Symmetric (principal) square root of a symmetric PSD 2x2 matrix.
/// Uses the closed form sqrt(S) = (S + sqrt(det S) I) / sqrt(tr S + 2 sqrt(det S)).
inline Mat2 symmetric_sqrt(const Mat2& s) {
    const double d = std::max(s.det(), 0.0);
    const double sd = std::sqrt(d);
    const double denom2 = s.trace() + 2.0 * sd;
    if (denom2 <= 0.0) return Mat2::zero();
    const double denom = std::sqrt(denom2);
    return (s + Mat2::diagonal(sd, sd)) * (1.0 / denom);
}

/// Solve a 4x4 linear system A x = b by Gaussian elimination with partial
/// pivoting. Throws on a (numerically) singular A.
inline std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a,
                                    std::array<double, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0)
            throw std::domain_error("solve4: singular system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 4> x{};
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

}  // namespace rzchart
