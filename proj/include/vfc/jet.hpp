#pragma once

#include <array>
#include <cmath>

namespace vfc {

// Second-order forward-mode jet: value, gradient and Hessian in up to kJetMax variables.
inline constexpr int kJetMax = 6;

struct Jet {
    double v = 0.0;
    std::array<double, kJetMax> g{};
    std::array<std::array<double, kJetMax>, kJetMax> h{};
    int n = 0;

    Jet() = default;
    Jet(double c) : v(c) {}  // NOLINT: implicit constants are intended

    static Jet variable(double value, int index, int nvars) {
        Jet j(value);
        j.n = nvars;
        j.g[index] = 1.0;
        return j;
    }

    double d(int i) const { return g[i]; }
    double dd(int i, int k) const { return h[i][k]; }
};

namespace jet_detail {

inline int width(const Jet& a, const Jet& b) { return a.n > b.n ? a.n : b.n; }

// f(a) with f' = d1, f'' = d2
inline Jet chain(const Jet& a, double f, double d1, double d2) {
    Jet r(f);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.g[i] = d1 * a.g[i];
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) r.h[i][k] = d1 * a.h[i][k] + d2 * a.g[i] * a.g[k];
    return r;
}

}  // namespace jet_detail

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.v + b.v);
    r.n = jet_detail::width(a, b);
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int k = 0; k < r.n; ++k) r.h[i][k] = a.h[i][k] + b.h[i][k];
    }
    return r;
}

inline Jet operator-(const Jet& a) {
    Jet r(-a.v);
    r.n = a.n;
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = -a.g[i];
        for (int k = 0; k < r.n; ++k) r.h[i][k] = -a.h[i][k];
    }
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v);
    r.n = jet_detail::width(a, b);
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int k = 0; k < r.n; ++k)
            r.h[i][k] = a.h[i][k] * b.v + a.v * b.h[i][k] + a.g[i] * b.g[k] + a.g[k] * b.g[i];
    }
    return r;
}

inline Jet operator*(double c, const Jet& a) {
    Jet r(c * a.v);
    r.n = a.n;
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = c * a.g[i];
        for (int k = 0; k < r.n; ++k) r.h[i][k] = c * a.h[i][k];
    }
    return r;
}

inline Jet operator*(const Jet& a, double c) { return c * a; }

inline Jet reciprocal(const Jet& a) {
    const double iv = 1.0 / a.v;
    return jet_detail::chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(const Jet& a, double c) { return (1.0 / c) * a; }
inline Jet operator/(double c, const Jet& a) { return c * reciprocal(a); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }
inline Jet& operator/=(Jet& a, const Jet& b) { return a = a / b; }

inline Jet sin(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return jet_detail::chain(a, s, c, -s);
}
inline Jet cos(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return jet_detail::chain(a, c, -s, -c);
}
inline Jet sinh(const Jet& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_detail::chain(a, s, c, s);
}
inline Jet cosh(const Jet& a) {
    const double s = std::sinh(a.v), c = std::cosh(a.v);
    return jet_detail::chain(a, c, s, c);
}
inline Jet exp(const Jet& a) {
    const double e = std::exp(a.v);
    return jet_detail::chain(a, e, e, e);
}
inline Jet log(const Jet& a) { return jet_detail::chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return jet_detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(const Jet& a, double p) {
    const double f = std::pow(a.v, p);
    return jet_detail::chain(a, f, p * std::pow(a.v, p - 1.0), p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

}  // namespace vfc
