#include "vfc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vfc/errors.hpp"

namespace vfc {

FieldGeometry field_geometry(const ChartManifold& M, const SectionField& v, const Vec& p, bool curvature) {
    FieldGeometry fg;
    fg.jet = field_jet(M, v, p);
    const int m = M.dim;
    const MetricDerivatives d = metric_derivatives(M, p, false);
    fg.geo.p = p;
    fg.geo.g = d.g;
    fg.geo.g_inv = d.g.inverse();
    fg.geo.gamma = christoffel_from(d);
    const Tensor3& G = fg.geo.gamma;
    const Tensor4 dG = christoffel_derivative(M, p);
    if (curvature) fg.geo.riemann = riemann_from(G, dG);

    const Vec& vv = fg.jet.v;
    fg.Dv = fg.jet.dv;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) fg.Dv(i, k) += G(i, k, l) * vv[l];

    // dD(i,k,j) = ∂_j (Dv)^i_k
    Tensor3 dD(m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j) {
                double s = fg.jet.d2v[i](j, k);
                for (int l = 0; l < m; ++l) s += dG(i, k, l, j) * vv[l] + G(i, k, l) * fg.jet.dv(l, j);
                dD(i, k, j) = s;
            }
    fg.hess = Tensor3(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                double s = dD(i, k, j);
                for (int l = 0; l < m; ++l) s += G(i, j, l) * fg.Dv(l, k) - G(l, j, k) * fg.Dv(i, l);
                fg.hess(i, j, k) = s;
            }
    return fg;
}

FieldCovariant field_covariant(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldJet j = field_jet(M, v, p);
    const MetricDerivatives d = metric_derivatives(M, p, false);
    const Tensor3 G = christoffel_from(d);
    const int m = M.dim;
    FieldCovariant fc{d.g, j.v, j.dv};
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) fc.Dv(i, k) += G(i, k, l) * j.v[l];
    return fc;
}

Vec hessian_apply(const Tensor3& hess, const Vec& X, const Vec& Y) {
    const int m = hess.n;
    Vec out = Vec::Zero(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) out[i] += hess(i, j, k) * X[j] * Y[k];
    return out;
}

Vec covariant_derivative(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X) {
    return field_covariant(M, v, p).Dv * X;
}

Vec second_covariant(const ChartManifold& M, const SectionField& v, const Vec& p, const Vec& X, const Vec& Y) {
    return hessian_apply(field_geometry(M, v, p, false).hess, X, Y);
}

double commutator_check(const ChartManifold& M, const SectionField& v, const Vec& p, int j, int k) {
    const FieldGeometry fg = field_geometry(M, v, p, true);
    const int m = M.dim;
    Vec ej = Vec::Zero(m), ek = Vec::Zero(m);
    ej[j] = 1;
    ek[k] = 1;
    const Vec lhs = hessian_apply(fg.hess, ej, ek) - hessian_apply(fg.hess, ek, ej);
    const Vec rhs = curvature_apply(fg.geo.riemann, ej, ek, fg.jet.v);
    return norm(fg.geo.g, lhs - rhs);
}

Mat orthonormal_basis(const Mat& g) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw NonPositiveDefinite("metric in orthonormal_basis");
    const Mat L = llt.matrixL();
    return L.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(g.rows(), g.cols()));
}

Mat shape_operator(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldCovariant fc = field_covariant(M, v, p);
    const Mat B = orthonormal_basis(fc.g);
    return B.inverse() * fc.Dv * B;
}

Mat lie_derivative_metric(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const MetricDerivatives d = metric_derivatives(M, p, false);
    const FieldJet j = field_jet(M, v, p);
    const int m = M.dim;
    Mat L = Mat::Zero(m, m);
    for (int k = 0; k < m; ++k) L += j.v[k] * d.dg[k];
    L += j.dv.transpose() * d.g + d.g * j.dv;
    return L;
}

Mat exterior_derivative_dual(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const MetricDerivatives d = metric_derivatives(M, p, false);
    const FieldJet j = field_jet(M, v, p);
    const int m = M.dim;
    // ṽ_b = g_bc v^c, dṽ_ab = ∂_a ṽ_b − ∂_b ṽ_a
    Mat dv_low(m, m);  // dv_low(b, a) = ∂_a ṽ_b
    for (int a = 0; a < m; ++a) dv_low.col(a) = d.dg[a] * j.v + d.g * j.dv.col(a);
    return dv_low.transpose() - dv_low;
}

namespace {

void fix_sign(Vec& u) {
    Eigen::Index idx = 0;
    u.cwiseAbs().maxCoeff(&idx);
    if (u[idx] < 0) u = -u;
}

// Eigen-decomposition of a symmetric matrix, eigenvalues descending.
void sorted_eigen(const Mat& S, Vec& vals, Mat& vecs) {
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    if (es.info() != Eigen::Success) throw EigenFailure("symmetric eigensolver did not converge");
    const int n = static_cast<int>(S.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return es.eigenvalues()[a] > es.eigenvalues()[b]; });
    vals.resize(n);
    vecs.resize(n, n);
    for (int i = 0; i < n; ++i) {
        vals[i] = std::max(0.0, es.eigenvalues()[order[i]]);
        Vec u = es.eigenvectors().col(order[i]);
        fix_sign(u);
        vecs.col(i) = u;
    }
}

}  // namespace

PointFrame eigenframe_from(const FieldGeometry& fg, bool unit) {
    const Mat& g = fg.geo.g;
    const int m = static_cast<int>(g.rows());
    const Mat B = orthonormal_basis(g);
    const Mat Binv = B.inverse();
    const Mat C = Binv * fg.Dv * B;
    const Mat S = C.transpose() * C;

    PointFrame f;
    f.base = fg.geo.p;
    f.unit = unit;
    Mat U(m, m);
    f.lambda_sq = Vec(m);
    if (!unit) {
        sorted_eigen(S, f.lambda_sq, U);
    } else {
        Vec vh = Binv * fg.jet.v;
        const double n = vh.norm();
        if (!(n > 1e-8)) throw SingularFieldPoint("unit frame requested at a zero of the field");
        vh /= n;
        U.col(0) = vh;
        f.lambda_sq[0] = (C * vh).squaredNorm();
        if (m > 1) {
            const Mat vcol = vh;
            Eigen::HouseholderQR<Mat> qr(vcol);
            const Mat Q = qr.householderQ() * Mat::Identity(m, m);
            const Mat P = Q.rightCols(m - 1);
            Vec vals;
            Mat W;
            sorted_eigen(P.transpose() * S * P, vals, W);
            for (int i = 1; i < m; ++i) {
                Vec u = P * W.col(i - 1);
                fix_sign(u);
                U.col(i) = u;
                f.lambda_sq[i] = vals[i - 1];
            }
        }
    }
    f.e = B * U;
    f.c = (1.0 + f.lambda_sq.array()).rsqrt().matrix();
    const Mat adj = fg.geo.g_inv * fg.Dv.transpose() * g;  // g-adjoint of ∇v
    for (int i = 0; i < m; ++i) {
        const Vec ei = f.e.col(i);
        f.lifted.push_back({f.c[i] * ei, f.c[i] * (fg.Dv * ei)});
        f.normals.push_back({-(adj * ei), ei});
    }
    return f;
}

PointFrame eigenframe(const ChartManifold& M, const SectionField& v, const Vec& p, FrameMode mode) {
    const bool unit = mode == FrameMode::Unit || (mode == FrameMode::Auto && v.unit_flag);
    return eigenframe_from(field_geometry(M, v, p, false), unit);
}

Mat induced_metric(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const FieldCovariant fc = field_covariant(M, v, p);
    return fc.g + fc.Dv.transpose() * fc.g * fc.Dv;
}

double volume_density_from(const Mat& Chat) {
    const int m = static_cast<int>(Chat.rows());
    return std::sqrt((Mat::Identity(m, m) + Chat.transpose() * Chat).determinant());
}

double volume_density(const ChartManifold& M, const SectionField& v, const Vec& p) {
    return volume_density_from(shape_operator(M, v, p));
}

ChartManifold induced_chart(const ChartManifold& M, const SectionField& v) {
    ChartManifold C;
    C.dim = M.dim;
    C.name = "g(" + v.name + ")";
    C.axes = M.axes;
    C.excluded_loci = M.excluded_loci;
    C.excluded_loci.push_back([v](const Vec& p) { return is_masked(v, p); });
    C.fd_scale = M.fd_scale;
    C.metric_eval = [M, v](const Vec& p) {
        const FieldCovariant fc = field_covariant(M, v, p);
        return Mat(fc.g + fc.Dv.transpose() * fc.g * fc.Dv);
    };
    // ∂_j h = ∂_j g + (∂_j ∇v)^t g ∇v + ∇v^t ∂_j g ∇v + ∇v^t g ∂_j ∇v, with second jets of v
    C.metric_deriv = [M, v](const Vec& p) {
        const int m = M.dim;
        const FieldJet j = field_jet(M, v, p);
        const MetricDerivatives d = metric_derivatives(M, p, false);
        const Tensor3 G = christoffel_from(d);
        const Tensor4 dG = christoffel_derivative(M, p);
        Mat Dv = j.dv;
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) Dv(i, k) += G(i, k, l) * j.v[l];
        std::vector<Mat> out(m);
        for (int a = 0; a < m; ++a) {
            Mat dD(m, m);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k) {
                    double s = j.d2v[i](a, k);
                    for (int l = 0; l < m; ++l) s += dG(i, k, l, a) * j.v[l] + G(i, k, l) * j.dv(l, a);
                    dD(i, k) = s;
                }
            const Mat gD = d.g * Dv;
            out[a] = d.dg[a] + dD.transpose() * gD + Dv.transpose() * d.dg[a] * Dv + gD.transpose() * dD;
        }
        return out;
    };
    return C;
}

double induced_scalar_curvature(const ChartManifold& M, const SectionField& v, const Vec& p) {
    return scalar_curvature(induced_chart(M, v), p);
}

}  // namespace vfc
