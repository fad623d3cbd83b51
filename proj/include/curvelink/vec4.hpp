#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace curvelink {

/// Ambient 4-vector. Points and tangents of all three spaces live here:
/// S³ and H³ points use all four components, Euclidean 3-space occupies
/// components 1..3 with component 0 held at zero.
struct Vec4 {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    constexpr Vec4() = default;
    constexpr Vec4(double a, double b, double d, double e) : c{a, b, d, e} {}

    constexpr double operator[](std::size_t i) const { return c[i]; }
    constexpr double& operator[](std::size_t i) { return c[i]; }

    constexpr Vec4 operator+(const Vec4& o) const {
        return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
    }
    constexpr Vec4 operator-(const Vec4& o) const {
        return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
    }
    constexpr Vec4 operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
    constexpr Vec4 operator*(double s) const {
        return {c[0] * s, c[1] * s, c[2] * s, c[3] * s};
    }
    constexpr Vec4 operator/(double s) const { return *this * (1.0 / s); }
    constexpr Vec4& operator+=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    constexpr Vec4& operator-=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    constexpr Vec4& operator*=(double s) {
        for (int i = 0; i < 4; ++i) c[i] *= s;
        return *this;
    }
    constexpr bool operator==(const Vec4&) const = default;
};

constexpr Vec4 operator*(double s, const Vec4& v) { return v * s; }

/// Raw Euclidean dot product of the four components.
constexpr double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

/// Max-abs component, used for residual reporting.
inline double max_abs(const Vec4& a) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

inline std::ostream& operator<<(std::ostream& os, const Vec4& v) {
    return os << '(' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ')';
}

constexpr Vec4 kBasis0{1.0, 0.0, 0.0, 0.0};
constexpr Vec4 kBasis1{0.0, 1.0, 0.0, 0.0};
constexpr Vec4 kBasis2{0.0, 0.0, 1.0, 0.0};
constexpr Vec4 kBasis3{0.0, 0.0, 0.0, 1.0};

/// Dense 4×4 matrix, row major.
struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    static constexpr Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }

    constexpr double operator()(int i, int j) const { return m[i][j]; }
    constexpr double& operator()(int i, int j) { return m[i][j]; }

    constexpr Vec4 operator*(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i)
            r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
        return r;
    }

    constexpr Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    constexpr Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    constexpr Vec4 row(int i) const { return {m[i][0], m[i][1], m[i][2], m[i][3]}; }
    constexpr void set_row(int i, const Vec4& v) {
        for (int j = 0; j < 4; ++j) m[i][j] = v[j];
    }
};

/// Determinant by cofactor expansion along the first row.
constexpr double det4(const Mat4& a) {
    auto det3 = [](double a00, double a01, double a02, double a10, double a11,
                   double a12, double a20, double a21, double a22) {
        return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
               a02 * (a10 * a21 - a11 * a20);
    };
    const auto& m = a.m;
    double d = 0.0;
    d += m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3],
                        m[3][1], m[3][2], m[3][3]);
    d -= m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3],
                        m[3][0], m[3][2], m[3][3]);
    d += m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3],
                        m[3][0], m[3][1], m[3][3]);
    d -= m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
                        m[3][0], m[3][1], m[3][2]);
    return d;
}

/// Determinant of the 4×4 matrix with the given rows.
constexpr double det4(const Vec4& r0, const Vec4& r1, const Vec4& r2, const Vec4& r3) {
    Mat4 a;
    a.set_row(0, r0);
    a.set_row(1, r1);
    a.set_row(2, r2);
    a.set_row(3, r3);
    return det4(a);
}

}  // namespace curvelink
