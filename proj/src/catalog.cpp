#include "vfc/catalog.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "vfc/errors.hpp"

namespace vfc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Radii of the positive orthant of S^n in angles η_0..η_{n−1}, and dr[k*n + j] = ∂r_k/∂η_j.
template <class T>
void orthant(int n, const T* eta, T* r, T* dr) {
    using std::cos;
    using std::sin;
    std::array<T, kJetMax> s{}, c{};
    for (int j = 0; j < n; ++j) {
        s[j] = sin(eta[j]);
        c[j] = cos(eta[j]);
    }
    for (int k = 0; k <= n; ++k) {
        // r_k = Π_{i<k} sin η_i · (k < n ? cos η_k : 1)
        T prod(1.0);
        for (int i = 0; i < k; ++i) prod = prod * s[i];
        r[k] = k < n ? prod * c[k] : prod;
        for (int j = 0; j < n; ++j) {
            T d(0.0);
            if (j < k) {
                T q(1.0);
                for (int i = 0; i < k; ++i) q = q * (i == j ? c[i] : s[i]);
                d = k < n ? q * c[k] : q;
            } else if (j == k && k < n) {
                d = -(prod * s[k]);
            }
            dr[k * n + j] = d;
        }
    }
}

// Position X (d+1 entries) and dX[i*(d+1) + a] = ∂_i X_a.
template <class T>
void sphere_point(int d, double R, const T* x, T* X, T* dX) {
    using std::cos;
    using std::sin;
    const int w = d + 1;
    for (int i = 0; i < d * w; ++i) dX[i] = T(0.0);
    std::array<T, kJetMax + 1> r{};
    std::array<T, (kJetMax + 1) * kJetMax> dr{};
    if (d % 2 == 1) {
        const int n = (d - 1) / 2;
        orthant(n, x, r.data(), dr.data());
        for (int k = 0; k <= n; ++k) {
            const T cx = cos(x[n + k]), sx = sin(x[n + k]);
            X[2 * k] = R * r[k] * cx;
            X[2 * k + 1] = R * r[k] * sx;
            for (int j = 0; j < n; ++j) {
                dX[j * w + 2 * k] = R * dr[k * n + j] * cx;
                dX[j * w + 2 * k + 1] = R * dr[k * n + j] * sx;
            }
            dX[(n + k) * w + 2 * k] = -(R * r[k] * sx);
            dX[(n + k) * w + 2 * k + 1] = R * r[k] * cx;
        }
    } else {
        const int n = d / 2;
        const int na = n - 1;
        orthant(na, x + 1, r.data(), dr.data());
        const T cr = cos(x[0]), sr = sin(x[0]);
        X[0] = R * cr;
        dX[0] = -(R * sr);
        for (int k = 0; k < n; ++k) {
            const T cx = cos(x[n + k]), sx = sin(x[n + k]);
            X[1 + 2 * k] = R * sr * r[k] * cx;
            X[2 + 2 * k] = R * sr * r[k] * sx;
            dX[1 + 2 * k] = R * cr * r[k] * cx;
            dX[2 + 2 * k] = R * cr * r[k] * sx;
            for (int j = 0; j < na; ++j) {
                dX[(1 + j) * w + 1 + 2 * k] = R * sr * dr[k * na + j] * cx;
                dX[(1 + j) * w + 2 + 2 * k] = R * sr * dr[k * na + j] * sx;
            }
            dX[(n + k) * w + 1 + 2 * k] = -(R * sr * r[k] * sx);
            dX[(n + k) * w + 2 + 2 * k] = R * sr * r[k] * cx;
        }
    }
}

template <class T>
void sphere_metric_diag(int d, double R, const T* x, T* diag) {
    std::array<T, kJetMax + 1> X{};
    std::array<T, kJetMax*(kJetMax + 1)> dX{};
    sphere_point(d, R, x, X.data(), dX.data());
    for (int i = 0; i < d; ++i) {
        T s(0.0);
        for (int a = 0; a <= d; ++a) s += dX[i * (d + 1) + a] * dX[i * (d + 1) + a];
        diag[i] = s;
    }
}

std::vector<Axis> sphere_axes(int d, int gl_nodes, int periodic_nodes) {
    std::vector<Axis> axes;
    if (d % 2 == 1) {
        const int n = (d - 1) / 2;
        for (int j = 0; j < n; ++j) axes.push_back({0.0, kPi / 2, false, gl_nodes});
        for (int k = 0; k <= n; ++k) axes.push_back({0.0, 2 * kPi, true, periodic_nodes});
    } else {
        const int n = d / 2;
        axes.push_back({0.0, kPi, false, gl_nodes});
        for (int j = 0; j < n - 1; ++j) axes.push_back({0.0, kPi / 2, false, gl_nodes});
        for (int k = 0; k < n; ++k) axes.push_back({0.0, 2 * kPi, true, periodic_nodes});
    }
    return axes;
}

std::vector<int> xi_slots(int d) {
    std::vector<int> out;
    const int first = d % 2 == 1 ? (d - 1) / 2 : d / 2;
    for (int i = first; i < d; ++i) out.push_back(i);
    return out;
}

PointPredicate degenerate_diagonal(const MetricFn& metric, double scale) {
    return [metric, scale](const Vec& p) {
        const Mat g = metric(p);
        return g.diagonal().minCoeff() < 1e-14 * scale;
    };
}

double sphere_volume(int d, double R) {
    return 2.0 * std::pow(kPi, (d + 1) / 2.0) / std::tgamma((d + 1) / 2.0) * std::pow(R, d);
}

void require_sphere(const ChartManifold& M) {
    if (!is_round_sphere(M)) throw NotRoundSphere(M.name + " is not a catalog round sphere");
}

// Chart components <V, ∂_i X> / g_ii of an ambient vector field V(X) on a sphere.
template <class T, class V>
void push_to_chart(int d, double R, const T* x, V&& ambient, T* out) {
    std::array<T, kJetMax + 1> X{};
    std::array<T, kJetMax*(kJetMax + 1)> dX{};
    sphere_point(d, R, x, X.data(), dX.data());
    std::array<T, kJetMax + 1> A{};
    ambient(X.data(), A.data());
    for (int i = 0; i < d; ++i) {
        T num(0.0), den(0.0);
        for (int a = 0; a <= d; ++a) {
            num += A[a] * dX[i * (d + 1) + a];
            den += dX[i * (d + 1) + a] * dX[i * (d + 1) + a];
        }
        out[i] = num / den;
    }
}

}  // namespace

ChartManifold make_round_sphere(int d, double radius) {
    if (d < 1 || d > kJetMax) throw DimensionUnsupported("round sphere of dimension " + std::to_string(d));
    if (!(radius > 0)) throw BadRadii("sphere radius must be positive");
    const int gl = d <= 3 ? 32 : 12;
    const int per = d <= 3 ? 64 : 8;
    std::ostringstream name;
    name << "S^" << d;
    if (radius != 1.0) name << "(" << radius << ")";
    ChartManifold M = make_analytic_chart(name.str(), sphere_axes(d, gl, per), [d, radius](const auto* x, auto* g) {
        using T = std::decay_t<decltype(*g)>;
        std::array<T, kJetMax> diag{};
        sphere_metric_diag(d, radius, x, diag.data());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g[i * d + j] = i == j ? diag[i] : T(0.0);
    });
    M.kind = "sphere";
    M.params = {static_cast<double>(d), radius};
    M.excluded_loci.push_back(degenerate_diagonal(M.metric_eval, radius * radius));
    M.reference_volume = sphere_volume(d, radius);
    M.fd_scale = 1.0;
    return M;
}

bool is_round_sphere(const ChartManifold& M) { return M.kind == "sphere" && M.params.size() == 2; }
int sphere_dimension(const ChartManifold& M) {
    require_sphere(M);
    return static_cast<int>(M.params[0]);
}
double sphere_radius(const ChartManifold& M) {
    require_sphere(M);
    return M.params[1];
}

Vec sphere_embedding(const ChartManifold& M, const Vec& x) {
    const int d = sphere_dimension(M);
    Vec X(d + 1);
    std::vector<double> dX(static_cast<size_t>(d) * (d + 1));
    sphere_point(d, sphere_radius(M), x.data(), X.data(), dX.data());
    return X;
}

Mat sphere_jacobian(const ChartManifold& M, const Vec& x) {
    const int d = sphere_dimension(M);
    Vec X(d + 1);
    std::vector<double> dX(static_cast<size_t>(d) * (d + 1));
    sphere_point(d, sphere_radius(M), x.data(), X.data(), dX.data());
    Mat J(d + 1, d);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a <= d; ++a) J(a, i) = dX[i * (d + 1) + a];
    return J;
}

SectionField hopf_field(const ChartManifold& M, double t, std::array<double, 3> coeffs) {
    const int d = sphere_dimension(M);
    const double R = sphere_radius(M);
    if (d % 2 == 0) throw DimensionUnsupported("Hopf field needs an odd sphere");
    const double n2 = coeffs[0] * coeffs[0] + coeffs[1] * coeffs[1] + coeffs[2] * coeffs[2];
    if (std::abs(n2 - 1.0) > 1e-12) throw NotUnit("Hopf coefficients must satisfy a²+b²+c²=1");
    std::ostringstream name;
    name << "hopf(" << coeffs[0] << "," << coeffs[1] << "," << coeffs[2] << ")";
    if (t != 1.0) name << "*" << t;
    SectionField v;
    if (coeffs[0] == 1.0) {
        const std::vector<int> slots = xi_slots(d);
        v = make_analytic_field(name.str(), d, [d, slots, t, R](const auto*, auto* out) {
            for (int i = 0; i < d; ++i) out[i] = 0.0;
            for (int i : slots) out[i] = t / R;
        });
    } else {
        if (d != 3) throw DimensionUnsupported("quaternionic Hopf fields are defined on S^3 only");
        const double a = coeffs[0] * t / R, b = coeffs[1] * t / R, c = coeffs[2] * t / R;
        v = make_analytic_field(name.str(), 3, [a, b, c, R](const auto* x, auto* out) {
            push_to_chart(3, R, x,
                          [&](const auto* X, auto* V) {
                              // (aI + bJ + cK) X
                              V[0] = -(a * X[1]) - b * X[2] - c * X[3];
                              V[1] = a * X[0] + b * X[3] - c * X[2];
                              V[2] = -(a * X[3]) + b * X[0] + c * X[1];
                              V[3] = a * X[2] - b * X[1] + c * X[0];
                          },
                          out);
        });
    }
    v.unit_flag = t == 1.0;
    return v;
}

SectionField projected_hopf(const ChartManifold& M) {
    const int d = sphere_dimension(M);
    const double R = sphere_radius(M);
    if (d % 2 == 1) throw DimensionUnsupported("projected Hopf field needs an even sphere");
    const std::vector<int> slots = xi_slots(d);
    SectionField v = make_analytic_field("projected_hopf", d, [d, slots, R](const auto*, auto* out) {
        for (int i = 0; i < d; ++i) out[i] = 0.0;
        for (int i : slots) out[i] = 1.0 / R;
    });
    v.zero_distance = [](const Vec& p) { return std::min(p[0], kPi - p[0]); };
    return v;
}

AmbientQuadratic random_ambient_quadratic(std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    AmbientQuadratic q;
    q.A = Mat(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q.A(i, j) = scale * N(rng);
    for (int i = 0; i < 4; ++i) {
        q.B[i] = Mat(4, 4);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) q.B[i](j, k) = 0.5 * scale * N(rng);
    }
    return q;
}

SectionField ambient_field(const ChartManifold& M, const AmbientQuadratic& q, const std::string& name) {
    const int d = sphere_dimension(M);
    const double R = sphere_radius(M);
    if (d != 3) throw DimensionUnsupported("ambient quadratic fields are defined on S^3");
    return make_analytic_field(name, 3, [q, R](const auto* x, auto* out) {
        push_to_chart(3, R, x,
                      [&](const auto* X, auto* V) {
                          for (int i = 0; i < 4; ++i) {
                              V[i] = 0.0;
                              for (int j = 0; j < 4; ++j) {
                                  V[i] += q.A(i, j) * X[j];
                                  for (int k = 0; k < 4; ++k) V[i] += q.B[i](j, k) * (X[j] * X[k]);
                              }
                          }
                      },
                      out);
    });
}

BasicFunction ambient_linear_function(const ChartManifold& M, const Vec& coefficients) {
    const int d = sphere_dimension(M);
    const double R = sphere_radius(M);
    if (coefficients.size() != d + 1) throw DimensionUnsupported("coefficient vector must have d+1 entries");
    BasicFunction u;
    u.value = [d, R, coefficients](const Vec& x) {
        std::array<double, kJetMax + 1> X{};
        std::array<double, kJetMax*(kJetMax + 1)> dX{};
        sphere_point(d, R, x.data(), X.data(), dX.data());
        double s = 0;
        for (int a = 0; a <= d; ++a) s += coefficients[a] * X[a];
        return s;
    };
    u.gradient = [d, R, coefficients](const Vec& x) {
        std::array<double, kJetMax + 1> X{};
        std::array<double, kJetMax*(kJetMax + 1)> dX{};
        sphere_point(d, R, x.data(), X.data(), dX.data());
        Vec grad = Vec::Zero(d);
        for (int i = 0; i < d; ++i)
            for (int a = 0; a <= d; ++a) grad[i] += coefficients[a] * dX[i * (d + 1) + a];
        return grad;
    };
    return u;
}

ChartManifold product_spheres(int k, int l, double r, double s) {
    if (!(r > 0 && s > 0) || std::abs(r * r + s * s - 1.0) > 1e-12)
        throw BadRadii("product of spheres needs r, s > 0 with r² + s² = 1");
    if (k < 1 || l < 1 || k + l > kJetMax) throw DimensionUnsupported("product factor dimensions");
    std::vector<Axis> axes = sphere_axes(k, 24, 32);
    for (const Axis& a : sphere_axes(l, 24, 32)) axes.push_back(a);
    std::ostringstream name;
    name << "S^" << k << "(" << r << ")xS^" << l << "(" << s << ")";
    const int m = k + l;
    ChartManifold M = make_analytic_chart(name.str(), axes, [k, l, r, s, m](const auto* x, auto* g) {
        using T = std::decay_t<decltype(*g)>;
        std::array<T, kJetMax> diag{};
        sphere_metric_diag(k, r, x, diag.data());
        sphere_metric_diag(l, s, x + k, diag.data() + k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g[i * m + j] = i == j ? diag[i] : T(0.0);
    });
    M.kind = "product";
    M.params = {static_cast<double>(k), static_cast<double>(l), r, s};
    M.excluded_loci.push_back(degenerate_diagonal(M.metric_eval, std::min(r, s) * std::min(r, s)));
    M.reference_volume = sphere_volume(k, r) * sphere_volume(l, s);
    return M;
}

SectionField product_field(const ChartManifold& M, double a, double b) {
    if (M.kind != "product") throw NotApplicable(M.name + " is not a product of spheres");
    const int k = static_cast<int>(M.params[0]), l = static_cast<int>(M.params[1]);
    const double r = M.params[2], s = M.params[3];
    const int m = k + l;
    std::vector<std::pair<int, double>> comps;
    for (int i : xi_slots(k)) comps.push_back({i, a / r});
    for (int i : xi_slots(l)) comps.push_back({k + i, b / s});
    std::ostringstream name;
    name << "v_{" << a << "," << b << "}";
    SectionField v = make_analytic_field(name.str(), m, [m, comps](const auto*, auto* out) {
        for (int i = 0; i < m; ++i) out[i] = 0.0;
        for (const auto& [i, c] : comps) out[i] = c;
    });
    const bool even_k = k % 2 == 0, even_l = l % 2 == 0;
    if ((a == 0 || even_k) && (b == 0 || even_l)) {
        v.zero_distance = [k, a, b, even_k, even_l](const Vec& p) {
            double dist = 0;
            if (a != 0 && even_k) dist = std::max(dist, std::min(p[0], kPi - p[0]));
            if (b != 0 && even_l) dist = std::max(dist, std::min(p[k], kPi - p[k]));
            return dist;
        };
    }
    v.unit_flag = k % 2 == 1 && l % 2 == 1 && std::abs(a * a + b * b - 1.0) < 1e-12;
    return v;
}

UniformizedSurface uniformized_surface(SurfaceKind kind, double radius_max) {
    UniformizedSurface S;
    const double rmax = kind == SurfaceKind::Spherical ? kPi : radius_max;
    std::vector<Axis> axes{{0.0, rmax, false, 32}, {0.0, 2 * kPi, true, 64}};
    auto f = [kind](const auto& r) {
        using std::sin;
        using std::sinh;
        using T = std::decay_t<decltype(r)>;
        if (kind == SurfaceKind::Spherical) return T(sin(r));
        if (kind == SurfaceKind::Hyperbolic) return T(sinh(r));
        return T(r);
    };
    const char* tag = kind == SurfaceKind::Spherical ? "spherical" : kind == SurfaceKind::Flat ? "flat" : "hyperbolic";
    S.M = make_analytic_chart(std::string("surface_") + tag, axes, [f](const auto* x, auto* g) {
        const auto fr = f(x[0]);
        g[0] = 1.0;
        g[1] = 0.0;
        g[2] = 0.0;
        g[3] = fr * fr;
    });
    S.M.kind = std::string("surface_") + tag;
    S.M.params = {rmax};
    S.M.excluded_loci.push_back(degenerate_diagonal(S.M.metric_eval, 1.0));
    const bool sph = kind == SurfaceKind::Spherical;
    DistanceFn dist = [sph](const Vec& p) { return sph ? std::min(p[0], kPi - p[0]) : p[0]; };
    S.e_theta = make_analytic_field("e_theta", 2, [f](const auto* x, auto* out) {
        out[0] = 0.0;
        out[1] = f(x[0]);
    });
    S.e_theta.zero_distance = dist;
    S.e_r = make_analytic_field("e_r", 2, [](const auto* x, auto* out) {
        out[0] = x[0];
        out[1] = 0.0;
    });
    S.e_r.zero_distance = dist;
    return S;
}

ChartManifold flat_torus(std::complex<double> tau) {
    if (!(tau.imag() > 0)) throw NotApplicable("torus modulus must lie in the upper half plane");
    const double a = tau.real(), b = std::norm(tau);
    std::vector<Axis> axes{{0.0, 1.0, true, 16}, {0.0, 1.0, true, 16}};
    ChartManifold M = make_analytic_chart("flat_torus", axes, [a, b](const auto*, auto* g) {
        g[0] = 1.0;
        g[1] = a;
        g[2] = a;
        g[3] = b;
    });
    M.kind = "torus";
    M.params = {tau.real(), tau.imag()};
    M.reference_volume = tau.imag();
    return M;
}

SectionField constant_field(int m, const Vec& components) {
    return make_analytic_field("constant", m, [m, components](const auto*, auto* out) {
        for (int i = 0; i < m; ++i) out[i] = components[i];
    });
}

}  // namespace vfc
