#include "vfc/minimality.hpp"

#include <algorithm>
#include <cmath>

#include "vfc/errors.hpp"

namespace vfc {

Vec minimality_operator_from(const FieldGeometry& fg, const PointFrame& frame) {
    const int m = static_cast<int>(fg.Dv.rows());
    const Vec& v = fg.jet.v;
    Vec L = Vec::Zero(m);
    for (int i = 0; i < m; ++i) {
        const Vec ei = frame.e.col(i);
        const Vec Cei = fg.Dv * ei;
        const Vec Rterm = curvature_apply(fg.geo.riemann, v, Cei, ei);
        L += frame.c[i] * frame.c[i] * (hessian_apply(fg.hess, ei, ei) - fg.Dv * Rterm);
    }
    return L;
}

Vec minimality_operator(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldGeometry fg = field_geometry(M, v, p, true);
    return minimality_operator_from(fg, eigenframe_from(fg, false));
}

MeanCurvatureTM mean_curvature_from(const FieldGeometry& fg, const PointFrame& frame) {
    const int m = static_cast<int>(fg.Dv.rows());
    const Mat& g = fg.geo.g;
    MeanCurvatureTM out;
    out.frame = frame;
    out.L = minimality_operator_from(fg, frame);
    const Mat& E = frame.e;
    const Vec b = E.transpose() * g * out.L;
    const Mat Ce = E.transpose() * g * fg.Dv * E;  // Ce(a,b) = <e_a, ∇_{e_b} v>
    const Mat G = Mat::Identity(m, m) + Ce * Ce.transpose();
    out.coefficients = G.ldlt().solve(b);
    out.H_sq = b.dot(out.coefficients);
    out.H.hor = Vec::Zero(m);
    out.H.ver = Vec::Zero(m);
    for (int j = 0; j < m; ++j) {
        out.H.hor += out.coefficients[j] * frame.normals[j].hor;
        out.H.ver += out.coefficients[j] * frame.normals[j].ver;
    }
    return out;
}

MeanCurvatureTM mean_curvature_tm(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldGeometry fg = field_geometry(M, v, p, true);
    return mean_curvature_from(fg, eigenframe_from(fg, false));
}

ResidualReport residual_from(const FieldGeometry& fg, const PointFrame& frame) {
    const Mat& g = fg.geo.g;
    const Vec& v = fg.jet.v;
    ResidualReport r;
    r.point = fg.geo.p;
    const Vec L = minimality_operator_from(fg, frame);
    r.lambda_closed = 0;
    for (int i = 0; i < frame.c.size(); ++i) r.lambda_closed -= frame.c[i] * frame.c[i] * frame.lambda_sq[i];
    r.residual_vec = L - r.lambda_closed * v;
    r.residual_norm = norm(g, r.residual_vec);
    r.lambda_est = inner(g, L, v) / inner(g, v, v);
    const Mat B = orthonormal_basis(g);
    const Mat C = B.inverse() * fg.Dv * B;
    r.killing_norm = (C + C.transpose()).norm();
    r.geodesic_norm = norm(g, fg.Dv * v);
    return r;
}

ResidualReport minimal_unit_residual(const ChartManifold& M, const SectionField& v, const Vec& p) {
    if (!v.unit_flag) throw NotUnit(v.name + " is not flagged as a unit field");
    const FieldGeometry fg = field_geometry(M, v, p, true);
    return residual_from(fg, eigenframe_from(fg, true));
}

double killing_residual(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const Mat C = shape_operator(M, v, p);
    return (C + C.transpose()).norm();
}

double geodesic_flow_residual(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldCovariant fc = field_covariant(M, v, p);
    return norm(fc.g, fc.Dv * fc.v);
}

double jacobi_check(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X, double killing_tol) {
    const FieldGeometry fg = field_geometry(M, v, p, true);
    const Mat& g = fg.geo.g;
    const Mat B = orthonormal_basis(g);
    const Mat C = B.inverse() * fg.Dv * B;
    if ((C + C.transpose()).norm() > killing_tol) throw NotKilling(v.name + " is not Killing at this point");
    double rmax = 0;
    for (double x : fg.geo.riemann.data) rmax = std::max(rmax, std::abs(x));
    if (rmax < 1e-10) throw NotApplicable("flat ambient: the Jacobi relation ∇²v(X,X) = −v has no content");
    const Vec& w = fg.jet.v;
    Vec Y = X - inner(g, X, w) / inner(g, w, w) * w;
    const double ny = norm(g, Y);
    if (!(ny > 1e-12)) throw DegeneratePlane("X is parallel to v");
    Y /= ny;
    return norm(g, hessian_apply(fg.hess, Y, Y) + w);
}

NijenhuisReport nijenhuis_check(const ChartManifold& M, const SectionField& v, const Vec& p, double tol) {
    const FieldGeometry fg = field_geometry(M, v, p, true);
    const Mat& g = fg.geo.g;
    const int m = M.dim;
    // curvature of the unit sphere: R(X,Y)Z = <Y,Z>X − <X,Z>Y
    double dev = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const double expect = (l == i ? g(j, k) : 0.0) - (l == j ? g(i, k) : 0.0);
                    dev = std::max(dev, std::abs(fg.geo.riemann(l, i, j, k) - expect));
                }
    if (dev > 1e-6) throw NotRoundSphere(M.name + " does not carry the unit round metric");

    const PointFrame frame = eigenframe_from(fg, true);
    const Vec& w = fg.jet.v;
    const Mat& I = fg.Dv;
    auto horizontal = [&](const Vec& Z) { return Vec(Z - inner(g, Z, w) * w); };
    NijenhuisReport rep;
    for (int a = 1; a < m; ++a) {
        const Vec X = frame.e.col(a);
        rep.complex_defect = std::max(rep.complex_defect, norm(g, I * (I * X) + X));
    }
    if (rep.complex_defect > tol) throw IvNotComplex("|I_v² X + X| exceeds tolerance");
    for (int a = 1; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const Vec X = frame.e.col(a), Y = frame.e.col(b);
            const Vec N = hessian_apply(fg.hess, I * X, Y) - hessian_apply(fg.hess, I * Y, X) -
                          I * (hessian_apply(fg.hess, X, Y) - hessian_apply(fg.hess, Y, X));
            rep.nijenhuis = std::max(rep.nijenhuis, norm(g, horizontal(N)));
        }
    return rep;
}

}  // namespace vfc
