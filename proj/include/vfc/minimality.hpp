#pragma once

#include <limits>
#include <vector>

#include "vfc/embedding.hpp"

namespace vfc {

// Mean curvature of the graph p -> (p, v(p)) in (TM, g_S) from the frame formula:
// the operator value L = Σ c_i² (∇²v(e_i,e_i) − ∇_{R(v,∇_{e_i}v)e_i} v) gives b_j = <L, e_j>,
// and H = Σ a_j N_j with (I + Ĉ Ĉ^t) a = b.
struct MeanCurvatureTM {
    Vec L;               // chart components
    Vec coefficients;    // a_j on the normals N_j
    SplitVector H;
    double H_sq = 0;
    PointFrame frame;
};

MeanCurvatureTM mean_curvature_tm(const ChartManifold& M, const SectionField& v, const Vec& p);
MeanCurvatureTM mean_curvature_from(const FieldGeometry& fg, const PointFrame& frame);

// Σ_i c_i² (∇²v(e_i,e_i) − ∇_{R(v,∇_{e_i}v)e_i} v) in the given frame.
Vec minimality_operator_from(const FieldGeometry& fg, const PointFrame& frame);
// Same in the eigenframe of C^tC (zero iff the graph is minimal in TM).
Vec minimality_operator(const ChartManifold& M, const SectionField& v, const Vec& p);

struct ResidualReport {
    Vec point;
    Vec residual_vec;  // L − λ_closed v, L in the unit-mode frame
    double residual_norm = 0;
    double lambda_est = 0;     // <L, v>
    double lambda_closed = 0;  // −Σ c_i² λ_i²
    double killing_norm = 0;   // |L_v g|
    double geodesic_norm = 0;  // |∇_v v|
    double nijenhuis_norm = std::numeric_limits<double>::quiet_NaN();
};

ResidualReport minimal_unit_residual(const ChartManifold& M, const SectionField& v, const Vec& p);
ResidualReport residual_from(const FieldGeometry& fg, const PointFrame& unit_frame);

double killing_residual(const ChartManifold& M, const SectionField& v, const Vec& p);
double geodesic_flow_residual(const ChartManifold& M, const SectionField& v, const Vec& p);

// |∇²v(X,X) + v| for unit X ⊥ v. NotKilling if |L_v g| > killing_tol; NotApplicable on a flat ambient.
double jacobi_check(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X,
                    double killing_tol = 1e-6);

// With I_v X := ∇_X v on v^⊥: max over basis pairs of |N(X,Y)| projected to v^⊥, where
// N(X,Y) = ∇²v(IX,Y) − ∇²v(IY,X) − I(∇²v(X,Y) − ∇²v(Y,X)).
// NotRoundSphere when the ambient curvature is not that of the unit sphere; IvNotComplex when
// |I_v² X + X| > tol for a basis vector.
struct NijenhuisReport {
    double nijenhuis = 0;
    double complex_defect = 0;  // max |I² X + X|
};
NijenhuisReport nijenhuis_check(const ChartManifold& M, const SectionField& v, const Vec& p, double tol = 1e-6);

}  // namespace vfc
