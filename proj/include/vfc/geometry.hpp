#pragma once

#include "vfc/chart.hpp"
#include "vfc/types.hpp"

namespace vfc {

// Gamma(k, i, j) = Γ^k_ij.
Tensor3 christoffel_from(const MetricDerivatives& d);
Tensor3 christoffel_at(const ChartManifold& M, const Vec& p);

// dGamma(k, i, j, a) = ∂_a Γ^k_ij. Exact from metric jets when present, otherwise finite
// differences of christoffel_at.
Tensor4 christoffel_derivative(const ChartManifold& M, const Vec& p);

// R(l, i, j, k) = R^l_ijk with R(∂_i, ∂_j)∂_k = R^l_ijk ∂_l and
// R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z.
Tensor4 riemann_from(const Tensor3& gamma, const Tensor4& dgamma);
Tensor4 riemann_at(const ChartManifold& M, const Vec& p);

// Everything at one point.
struct PointGeometry {
    Vec p;
    Mat g;
    Mat g_inv;
    Tensor3 gamma;
    Tensor4 riemann;  // empty unless requested
};
PointGeometry point_geometry(const ChartManifold& M, const Vec& p, bool curvature);

Vec curvature_apply(const Tensor4& R, const Vec& X, const Vec& Y, const Vec& Z);
Mat ricci_from(const Tensor4& R);  // Ric_jk = R^i_ijk
double scalar_curvature_from(const Tensor4& R, const Mat& g_inv);
double scalar_curvature(const ChartManifold& M, const Vec& p);

// K = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 − g(X,Y)^2).
double sectional_curvature(const Tensor4& R, const Mat& g, const Vec& X, const Vec& Y);
double sectional_curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y);

// Max |∂_k g_ij − Γ^l_ki g_lj − Γ^l_kj g_il| using independently obtained ∂g.
double metric_compatibility_residual(const ChartManifold& M, const Vec& p);
// Max violation of Γ^k_ij = Γ^k_ji.
double christoffel_symmetry_residual(const Tensor3& gamma);

struct RiemannSymmetryResiduals {
    double antisym_first = 0;   // R_ijkl + R_jikl
    double antisym_second = 0;  // R_ijkl + R_ijlk
    double pair = 0;            // R_ijkl − R_klij
    double bianchi = 0;         // R^l_ijk + R^l_jki + R^l_kij
};
// Uses the lowered tensor R_ijkl = g(R(∂_i,∂_j)∂_k, ∂_l).
RiemannSymmetryResiduals riemann_symmetry_residuals(const Tensor4& R, const Mat& g);

// Inner product and norm under g.
inline double inner(const Mat& g, const Vec& X, const Vec& Y) { return X.dot(g * Y); }
inline double norm(const Mat& g, const Vec& X) { return std::sqrt(std::max(0.0, inner(g, X, X))); }

}  // namespace vfc
