#pragma once

#include <vector>

#include "vfc/bundle.hpp"
#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/geometry.hpp"
#include "vfc/types.hpp"

namespace vfc {

// Covariant data of a field at a point: Dv(i,k) = (∇_{∂_k} v)^i and the Hessian
// hess(i, j, k) = (∇²v(∂_j, ∂_k))^i = (∇_{∂_j}∇_{∂_k} v − ∇_{∇_{∂_j}∂_k} v)^i.
struct FieldGeometry {
    PointGeometry geo;
    FieldJet jet;
    Mat Dv;
    Tensor3 hess;
};

FieldGeometry field_geometry(const ChartManifold& M, const SectionField& v, const Vec& p, bool curvature);

// First-order data only: metric and Dv (hess and Γ derivatives are skipped).
struct FieldCovariant {
    Mat g;
    Vec v;
    Mat Dv;
};
FieldCovariant field_covariant(const ChartManifold& M, const SectionField& v, const Vec& p);

Vec covariant_derivative(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X);
Vec second_covariant(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X, const Vec& Y);
Vec hessian_apply(const Tensor3& hess, const Vec& X, const Vec& Y);

// ‖∇²v(∂_j,∂_k) − ∇²v(∂_k,∂_j) − R(∂_j,∂_k)v‖_g.
double commutator_check(const ChartManifold& M, const SectionField& v, const Vec& p, int j, int k);

// Columns form a g-orthonormal basis (B = L^{-T} with g = L L^T).
Mat orthonormal_basis(const Mat& g);

// C_v in the orthonormal gauge B: Ĉ = B^{-1} Dv B, so Ĉ(a,b) = <e_a, ∇_{e_b} v>.
Mat shape_operator(const ChartManifold& M, const SectionField& v, const Vec& p);

// L_v g and dṽ assembled directly from coordinates (not from C_v).
Mat lie_derivative_metric(const ChartManifold& M, const SectionField& v, const Vec& p);
Mat exterior_derivative_dual(const ChartManifold& M, const SectionField& v, const Vec& p);

enum class FrameMode { Auto, Unit, Eigen };

struct PointFrame {
    Vec base;
    Mat e;             // columns: chart components of e_i
    Vec lambda_sq;     // λ_i² = |∇_{e_i} v|² (eigenvalues of C^t C in Eigen mode)
    Vec c;             // c_i = (1 + λ_i²)^{-1/2}
    std::vector<SplitVector> lifted;   // e_i^f = c_i (e_i^hor + (∇_{e_i} v)^ver)
    std::vector<SplitVector> normals;  // N_i = −((∇v)^t e_i)^hor + e_i^ver
    bool unit = false;
};

// Unit mode: e_0 = v/|v| and C^tC compressed to v^⊥ is diagonalised. Eigen mode: eigenvectors of
// C^tC. Auto picks Unit for fields with unit_flag. Eigenvalues descend; ties keep the solver's
// basis; each vector's largest-magnitude orthonormal coordinate is made positive.
PointFrame eigenframe(const ChartManifold& M, const SectionField& v, const Vec& p, FrameMode mode = FrameMode::Auto);
PointFrame eigenframe_from(const FieldGeometry& fg, bool unit);

// g(v) = g + Dv^t g Dv.
Mat induced_metric(const ChartManifold& M, const SectionField& v, const Vec& p);

// Π (1 + λ_i²)^{1/2} = sqrt(det g(v) / det g).
double volume_density(const ChartManifold& M, const SectionField& v, const Vec& p);
double volume_density_from(const Mat& Chat);

// The induced metric as a chart of its own (metric only; derivatives by finite differences).
ChartManifold induced_chart(const ChartManifold& M, const SectionField& v);

// Scalar curvature of g(v) at p.
double induced_scalar_curvature(const ChartManifold& M, const SectionField& v, const Vec& p);

}  // namespace vfc
