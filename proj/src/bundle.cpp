#include "vfc/bundle.hpp"

#include <cmath>

#include "vfc/geometry.hpp"

namespace vfc {

namespace {

struct BaseData {
    Mat g;
    std::vector<Mat> dg;
    Tensor3 gamma;
};

Mat assemble_sasaki(const Mat& g, const Mat& A) {
    const int m = static_cast<int>(g.rows());
    Mat S(2 * m, 2 * m);
    const Mat gA = g * A;
    S.topLeftCorner(m, m) = g + A.transpose() * gA;
    S.topRightCorner(m, m) = gA.transpose();
    S.bottomLeftCorner(m, m) = gA;
    S.bottomRightCorner(m, m) = g;
    return S;
}

Mat contract_fiber(const Tensor3& G, const Vec& v) {
    const int m = G.n;
    Mat A = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) A(i, j) += G(i, j, l) * v[l];
    return A;
}

}  // namespace

Mat connection_matrix(const ChartManifold& M, const BundlePoint& q) {
    return contract_fiber(christoffel_at(M, q.base), q.fiber);
}

ChartManifold bundle_chart(const ChartManifold& M) {
    const int m = M.dim;
    ChartManifold B;
    B.dim = 2 * m;
    B.name = "T(" + M.name + ")";
    B.axes = M.axes;
    for (int i = 0; i < m; ++i) B.axes.push_back(Axis{-1e6, 1e6, false, 8});
    B.fd_scale = M.fd_scale;
    for (const auto& pred : M.excluded_loci)
        B.excluded_loci.push_back([pred, m](const Vec& q) { return pred(q.head(m)); });

    B.metric_eval = [M, m](const Vec& q) {
        const Vec x = q.head(m), v = q.tail(m);
        const MetricDerivatives d = metric_derivatives(M, x, false);
        return assemble_sasaki(d.g, contract_fiber(christoffel_from(d), v));
    };
    B.metric_deriv = [M, m](const Vec& q) {
        const Vec x = q.head(m), v = q.tail(m);
        const MetricDerivatives d = metric_derivatives(M, x, false);
        const Tensor3 G = christoffel_from(d);
        const Tensor4 dG = christoffel_derivative(M, x);
        const Mat& g = d.g;
        const Mat A = contract_fiber(G, v);
        std::vector<Mat> out(2 * m, Mat::Zero(2 * m, 2 * m));
        for (int k = 0; k < m; ++k) {
            Mat Ak = Mat::Zero(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int l = 0; l < m; ++l) Ak(i, j) += dG(i, j, l, k) * v[l];
            const Mat& dg = d.dg[k];
            Mat& S = out[k];
            S.topLeftCorner(m, m) = dg + Ak.transpose() * g * A + A.transpose() * dg * A + A.transpose() * g * Ak;
            S.topRightCorner(m, m) = Ak.transpose() * g + A.transpose() * dg;
            S.bottomLeftCorner(m, m) = S.topRightCorner(m, m).transpose();
            S.bottomRightCorner(m, m) = dg;
        }
        for (int l = 0; l < m; ++l) {
            Mat E(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) E(i, j) = G(i, j, l);
            Mat& S = out[m + l];
            S.topLeftCorner(m, m) = E.transpose() * g * A + A.transpose() * g * E;
            S.topRightCorner(m, m) = E.transpose() * g;
            S.bottomLeftCorner(m, m) = g * E;
        }
        return out;
    };
    return B;
}

Vec raw_from_split(const ChartManifold& M, const BundlePoint& q, const SplitVector& s) {
    const int m = M.dim;
    const Mat A = connection_matrix(M, q);
    Vec raw(2 * m);
    raw.head(m) = s.hor;
    raw.tail(m) = s.ver - A * s.hor;
    return raw;
}

SplitVector split_from_raw(const ChartManifold& M, const BundlePoint& q, const Vec& raw) {
    const int m = M.dim;
    const Mat A = connection_matrix(M, q);
    return {raw.head(m), raw.tail(m) + A * raw.head(m)};
}

double sasaki_inner(const Mat& g, const SplitVector& a, const SplitVector& b) {
    return a.hor.dot(g * b.hor) + a.ver.dot(g * b.ver);
}

ChartManifold conformal_rescale(const ChartManifold& M, const BasicFunction& u, double t) {
    ChartManifold C = M;
    C.name = "exp(2tu)" + M.name;
    C.metric_jets = nullptr;
    C.metric_eval = [M, u, t](const Vec& p) { return Mat(std::exp(2 * t * u.value(p)) * M.metric_eval(p)); };
    if (M.metric_deriv || M.metric_jets) {
        C.metric_deriv = [M, u, t](const Vec& p) {
            const MetricDerivatives d = metric_derivatives(M, p, false);
            const double e = std::exp(2 * t * u.value(p));
            const Vec du = u.gradient(p);
            std::vector<Mat> out(d.dg.size());
            for (size_t k = 0; k < d.dg.size(); ++k) out[k] = e * (2 * t * du[k] * d.g + d.dg[k]);
            return out;
        };
    } else {
        C.metric_deriv = nullptr;
    }
    return C;
}

BasicFunction pullback_to_bundle(const BasicFunction& u, int m) {
    BasicFunction out;
    out.value = [u, m](const Vec& q) { return u.value(q.head(m)); };
    out.gradient = [u, m](const Vec& q) {
        Vec g = Vec::Zero(2 * m);
        g.head(m) = u.gradient(q.head(m));
        return g;
    };
    return out;
}

}  // namespace vfc
