#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "vfc/bundle.hpp"
#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/types.hpp"

namespace vfc {

// Round sphere S^d(radius), 1 ≤ d ≤ 6.
// Odd d = 2n+1: Hopf coordinates (η_1..η_n, ξ_0..ξ_n) with z_k = r_k(η) e^{iξ_k}; for S³ this is
// (η, ξ1, ξ2) with g = dη² + cos²η dξ1² + sin²η dξ2².
// Even d = 2n: (ρ, η_1..η_{n−1}, ξ_0..ξ_{n−1}) with x_0 = cos ρ and z_k = sin ρ r_k(η) e^{iξ_k}.
ChartManifold make_round_sphere(int d, double radius = 1.0);

bool is_round_sphere(const ChartManifold& M);
int sphere_dimension(const ChartManifold& M);
double sphere_radius(const ChartManifold& M);

// Position in R^{d+1} and the chart Jacobian (columns ∂_i X).
Vec sphere_embedding(const ChartManifold& sphere, const Vec& x);
Mat sphere_jacobian(const ChartManifold& sphere, const Vec& x);

// t · v_H^{a,b,c} on an odd sphere. For S³ the coefficients select aI + bJ + cK acting on the
// position vector; other odd spheres take the standard structure only, coeffs = (1,0,0).
SectionField hopf_field(const ChartManifold& sphere, double t = 1.0, std::array<double, 3> coeffs = {1, 0, 0});

// Σ ∂_{ξ_k} on an even sphere: the standard structure applied to the projection of the position
// vector onto the equatorial R^{2n}. Zeros at the poles x_0 = ±1.
SectionField projected_hopf(const ChartManifold& sphere);

// Tangential projection of X ↦ A X + B(X, X) on S³, expressed in chart components.
struct AmbientQuadratic {
    Mat A;                  // 4x4
    std::array<Mat, 4> B;   // B[i](j,k): i-th component of B(X,X) = Σ B[i](j,k) X_j X_k
};
AmbientQuadratic random_ambient_quadratic(std::uint64_t seed, double scale = 1.0);
SectionField ambient_field(const ChartManifold& sphere, const AmbientQuadratic& q, const std::string& name);

// A linear function of the ambient position, restricted to the sphere.
BasicFunction ambient_linear_function(const ChartManifold& sphere, const Vec& coefficients);

// S^k(r) x S^l(s) with r² + s² = 1 (BadRadii otherwise).
ChartManifold product_spheres(int k, int l, double r, double s);
// a v^k_r + b v^l_s with v the unit Hopf field of an odd factor (projected field on an even one).
SectionField product_field(const ChartManifold& product, double a, double b);

enum class SurfaceKind { Spherical, Flat, Hyperbolic };

struct UniformizedSurface {
    ChartManifold M;       // geodesic polar chart dr² + f(r)² dθ²
    SectionField e_theta;  // f(r) ∂_θ
    SectionField e_r;      // r ∂_r
};
// radius_max bounds r for the flat and hyperbolic disks.
UniformizedSurface uniformized_surface(SurfaceKind kind, double radius_max = 2.0);

// C / (Z + τZ) in lattice coordinates (s1, s2) ∈ [0,1)².
ChartManifold flat_torus(std::complex<double> tau = {0.0, 1.0});
SectionField constant_field(int m, const Vec& components);

}  // namespace vfc
