#include "vfc/submanifold.hpp"

#include <cmath>

#include "vfc/errors.hpp"

namespace vfc {

Immersion graph_immersion(const ChartManifold& M, const SectionField& v) {
    const int m = M.dim;
    Immersion F;
    F.dim = m;
    F.fd_step = 1e-3 * M.fd_scale;
    F.map = [v, m](const Vec& p) {
        Vec q(2 * m);
        q.head(m) = p;
        q.tail(m) = field_value(v, p);
        return q;
    };
    F.jacobian = [M, v, m](const Vec& p) {
        const FieldJet j = field_jet(M, v, p);
        Mat J = Mat::Zero(2 * m, m);
        J.topRows(m) = Mat::Identity(m, m);
        J.bottomRows(m) = j.dv;
        return J;
    };
    F.second = [M, v, m](const Vec& p) {
        const FieldJet j = field_jet(M, v, p);
        std::vector<Mat> s(2 * m, Mat::Zero(m, m));
        for (int i = 0; i < m; ++i) s[m + i] = j.d2v[i];
        return s;
    };
    return F;
}

SubmanifoldGeometry submanifold_geometry(const ChartManifold& ambient, const Immersion& F, const Vec& p) {
    const int m = F.dim;
    const int n = ambient.dim;
    SubmanifoldGeometry sg;
    sg.point = F.map(p);
    const double h = F.fd_step;
    if (F.jacobian) {
        sg.tangent = F.jacobian(p);
    } else {
        sg.tangent = Mat(n, m);
        for (int a = 0; a < m; ++a) sg.tangent.col(a) = central_difference(F.map, p, a, h);
    }
    std::vector<Mat> second;
    if (F.second) {
        second = F.second(p);
    } else {
        second.assign(n, Mat(m, m));
        auto col = [&](const Vec& q, int a) -> Vec { return central_difference(F.map, q, a, h); };
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                const Vec dab = central_difference([&](const Vec& q) { return col(q, a); }, p, b, h);
                for (int i = 0; i < n; ++i) second[i](a, b) = dab[i];
            }
    }

    sg.ambient = point_geometry(ambient, sg.point, true);
    const Mat& G = sg.ambient.g;
    const Tensor3& Gam = sg.ambient.gamma;
    const Mat& T = sg.tangent;

    sg.h = T.transpose() * G * T;
    Eigen::SelfAdjointEigenSolver<Mat> es(sg.h);
    if (es.eigenvalues().minCoeff() < 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff()))
        throw RankDeficientImmersion("induced metric is singular");
    const Mat hi = sg.h.inverse();
    // tangential projector P = T h^{-1} T^t G
    const Mat P = T * hi * T.transpose() * G;
    const Mat Pn = Mat::Identity(n, n) - P;

    sg.alpha.assign(static_cast<size_t>(m) * m, Vec::Zero(n));
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            Vec z(n);
            for (int i = 0; i < n; ++i) {
                double s = second[i](a, b);
                for (int j = 0; j < n; ++j) {
                    if (T(j, a) == 0) continue;
                    for (int k = 0; k < n; ++k) s += Gam(i, j, k) * T(j, a) * T(k, b);
                }
                z[i] = s;
            }
            const Vec al = Pn * z;
            sg.alpha[a * m + b] = al;
            sg.alpha[b * m + a] = al;
        }
    sg.H = Vec::Zero(n);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sg.H += hi(a, b) * sg.alpha[a * m + b];
    sg.H_sq = sg.H.dot(G * sg.H);
    sg.tangential_residual = std::sqrt(std::max(0.0, (P * sg.H).dot(G * (P * sg.H)))) / std::max(1.0, std::sqrt(sg.H_sq));

    // ‖α‖² = h^{ac} h^{bd} <α_ab, α_cd>
    Mat gram(m * m, m * m);
    for (int x = 0; x < m * m; ++x)
        for (int y = x; y < m * m; ++y) gram(x, y) = gram(y, x) = sg.alpha[x].dot(G * sg.alpha[y]);
    double asq = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) asq += hi(a, c) * hi(b, d) * gram(a * m + b, c * m + d);
    sg.alpha_sq = asq;

    // Σ K = h^{ac} h^{bd} <R(T_a, T_b) T_d, T_c>
    const Tensor4& R = sg.ambient.riemann;
    // RT(l, a, b, d) = R^l_ijk T^i_a T^j_b T^k_d, contracted one index at a time
    std::vector<double> r1(static_cast<size_t>(n) * m * n * n, 0.0);  // (l, a, j, k)
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < m; ++a)
            for (int i = 0; i < n; ++i) {
                const double t = T(i, a);
                if (t == 0) continue;
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) r1[((l * m + a) * n + j) * n + k] += R(l, i, j, k) * t;
            }
    std::vector<double> r2(static_cast<size_t>(n) * m * m * n, 0.0);  // (l, a, b, k)
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int j = 0; j < n; ++j) {
                    const double t = T(j, b);
                    if (t == 0) continue;
                    for (int k = 0; k < n; ++k)
                        r2[((l * m + a) * m + b) * n + k] += r1[((l * m + a) * n + j) * n + k] * t;
                }
    const Mat GT = G * T;
    double sk = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) {
                    const double w = hi(a, c) * hi(b, d);
                    if (w == 0) continue;
                    double s = 0;
                    for (int l = 0; l < n; ++l)
                        for (int k = 0; k < n; ++k) s += r2[((l * m + a) * m + b) * n + k] * T(k, d) * GT(l, c);
                    sk += w * s;
                }
    sg.sigma_K = sk;
    return sg;
}

}  // namespace vfc
