#pragma once

#include <array>
#include <cmath>

namespace primcob {

/// Truncated Taylor scalar in one variable, kept to order 3. Arithmetic on
/// these propagates exact closed-form derivatives through the model
/// expression trees.
struct TJet1 {
    // c[m] = f^(m)(x0) / m!
    std::array<double, 4> c{0, 0, 0, 0};

    static TJet1 variable(double x) {
        TJet1 j;
        j.c[0] = x;
        j.c[1] = 1.0;
        return j;
    }
    static TJet1 constant(double x) {
        TJet1 j;
        j.c[0] = x;
        return j;
    }
    double value() const { return c[0]; }
    double d1() const { return c[1]; }
    double d2() const { return 2.0 * c[2]; }
    double d3() const { return 6.0 * c[3]; }
};

inline TJet1 operator+(const TJet1& a, const TJet1& b) {
    TJet1 r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
inline TJet1 operator-(const TJet1& a, const TJet1& b) {
    TJet1 r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
inline TJet1 operator*(const TJet1& a, const TJet1& b) {
    TJet1 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
inline TJet1 operator*(double s, const TJet1& a) {
    TJet1 r;
    for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
    return r;
}
inline TJet1 operator-(const TJet1& a) { return -1.0 * a; }

/// f(g) for analytic f, truncated at order 3: needs f, f', f'', f''' at g's value.
inline TJet1 compose1(const TJet1& g, double f0, double f1, double f2, double f3) {
    TJet1 h = g;
    h.c[0] = 0.0; // the increment
    TJet1 h2 = h * h, h3 = h2 * h;
    TJet1 r = TJet1::constant(f0) + f1 * h + (f2 / 2.0) * h2 + (f3 / 6.0) * h3;
    return r;
}

inline TJet1 sin(const TJet1& g) {
    double s = std::sin(g.c[0]), c = std::cos(g.c[0]);
    return compose1(g, s, c, -s, -c);
}
inline TJet1 cos(const TJet1& g) {
    double s = std::sin(g.c[0]), c = std::cos(g.c[0]);
    return compose1(g, c, -s, -c, s);
}

/// Truncated Taylor scalar in two variables (u, v), order 3. Monomial order:
/// 1; u, v; u^2, uv, v^2; u^3, u^2 v, u v^2, v^3.
struct TJet2 {
    std::array<double, 10> c{0, 0, 0, 0, 0, 0, 0, 0, 0, 0};

    static TJet2 variable_u(double x) {
        TJet2 j;
        j.c[0] = x;
        j.c[1] = 1.0;
        return j;
    }
    static TJet2 variable_v(double x) {
        TJet2 j;
        j.c[0] = x;
        j.c[2] = 1.0;
        return j;
    }
    static TJet2 constant(double x) {
        TJet2 j;
        j.c[0] = x;
        return j;
    }
    double value() const { return c[0]; }
    double du() const { return c[1]; }
    double dv() const { return c[2]; }
    double duu() const { return 2.0 * c[3]; }
    double duv() const { return c[4]; }
    double dvv() const { return 2.0 * c[5]; }
    double duuu() const { return 6.0 * c[6]; }
    double duuv() const { return 2.0 * c[7]; }
    double duvv() const { return 2.0 * c[8]; }
    double dvvv() const { return 6.0 * c[9]; }
};

namespace detail {
// (degree_u, degree_v) of each monomial slot.
constexpr int kDegU[10] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
constexpr int kDegV[10] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};
constexpr int slot2(int du, int dv) {
    int tot = du + dv;
    int base = tot == 0 ? 0 : (tot == 1 ? 1 : (tot == 2 ? 3 : 6));
    return base + dv;
}
} // namespace detail

inline TJet2 operator+(const TJet2& a, const TJet2& b) {
    TJet2 r;
    for (int i = 0; i < 10; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
inline TJet2 operator-(const TJet2& a, const TJet2& b) {
    TJet2 r;
    for (int i = 0; i < 10; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
inline TJet2 operator*(const TJet2& a, const TJet2& b) {
    TJet2 r;
    for (int i = 0; i < 10; ++i) {
        if (a.c[i] == 0.0) continue;
        for (int j = 0; j < 10; ++j) {
            int du = detail::kDegU[i] + detail::kDegU[j];
            int dv = detail::kDegV[i] + detail::kDegV[j];
            if (du + dv > 3) continue;
            r.c[detail::slot2(du, dv)] += a.c[i] * b.c[j];
        }
    }
    return r;
}
inline TJet2 operator*(double s, const TJet2& a) {
    TJet2 r;
    for (int i = 0; i < 10; ++i) r.c[i] = s * a.c[i];
    return r;
}
inline TJet2 operator-(const TJet2& a) { return -1.0 * a; }

inline TJet2 compose2(const TJet2& g, double f0, double f1, double f2, double f3) {
    TJet2 h = g;
    h.c[0] = 0.0;
    TJet2 h2 = h * h, h3 = h2 * h;
    return TJet2::constant(f0) + f1 * h + (f2 / 2.0) * h2 + (f3 / 6.0) * h3;
}

inline TJet2 sin(const TJet2& g) {
    double s = std::sin(g.c[0]), c = std::cos(g.c[0]);
    return compose2(g, s, c, -s, -c);
}
inline TJet2 cos(const TJet2& g) {
    double s = std::sin(g.c[0]), c = std::cos(g.c[0]);
    return compose2(g, c, -s, -c, s);
}

} // namespace primcob
