#include "vfc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vfc/errors.hpp"

namespace vfc {

Tensor3 christoffel_from(const MetricDerivatives& d) {
    const int m = static_cast<int>(d.g.rows());
    const Mat gi = d.g.inverse();
    // lowered Γ_lij = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij)
    Tensor3 low(m);
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                low(l, i, j) = 0.5 * (d.dg[i](l, j) + d.dg[j](l, i) - d.dg[l](i, j));
    Tensor3 G(m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double s = 0;
                for (int l = 0; l < m; ++l) s += gi(k, l) * low(l, i, j);
                G(k, i, j) = s;
            }
    return G;
}

Tensor3 christoffel_at(const ChartManifold& M, const Vec& p) {
    return christoffel_from(metric_derivatives(M, p, false));
}

Tensor4 christoffel_derivative(const ChartManifold& M, const Vec& p) {
    const int m = M.dim;
    Tensor4 dG(m);
    if (M.metric_jets) {
        const MetricDerivatives d = metric_derivatives(M, p, true);
        const Mat gi = d.g.inverse();
        Tensor3 low(m);
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    low(l, i, j) = 0.5 * (d.dg[i](l, j) + d.dg[j](l, i) - d.dg[l](i, j));
        for (int a = 0; a < m; ++a) {
            const Mat dgi = -gi * d.dg[a] * gi;
            for (int k = 0; k < m; ++k)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        double s = 0;
                        for (int l = 0; l < m; ++l) {
                            const double dlow =
                                0.5 * (d.d2g[i][a](l, j) + d.d2g[j][a](l, i) - d.d2g[l][a](i, j));
                            s += dgi(k, l) * low(l, i, j) + gi(k, l) * dlow;
                        }
                        dG(k, i, j, a) = s;
                    }
        }
        return dG;
    }
    const double h = fd_step(M, p);
    for (int a = 0; a < m; ++a) {
        Vec q = p;
        Tensor3 t[4];
        const double off[4] = {h, -h, 2 * h, -2 * h};
        for (int s = 0; s < 4; ++s) {
            q[a] = p[a] + off[s];
            t[s] = christoffel_at(M, q);
        }
        for (size_t idx = 0; idx < t[0].data.size(); ++idx) {
            const double v = (8.0 * (t[0].data[idx] - t[1].data[idx]) - (t[2].data[idx] - t[3].data[idx])) /
                             (12.0 * h);
            dG.data[idx * m + a] = v;
        }
    }
    return dG;
}

Tensor4 riemann_from(const Tensor3& G, const Tensor4& dG) {
    const int m = G.n;
    Tensor4 R(m);
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    double s = dG(l, j, k, i) - dG(l, i, k, j);
                    for (int q = 0; q < m; ++q) s += G(l, i, q) * G(q, j, k) - G(l, j, q) * G(q, i, k);
                    R(l, i, j, k) = s;
                }
    return R;
}

Tensor4 riemann_at(const ChartManifold& M, const Vec& p) {
    return riemann_from(christoffel_at(M, p), christoffel_derivative(M, p));
}

PointGeometry point_geometry(const ChartManifold& M, const Vec& p, bool curvature) {
    PointGeometry pg;
    pg.p = p;
    const MetricDerivatives d = metric_derivatives(M, p, false);
    pg.g = d.g;
    pg.g_inv = d.g.inverse();
    pg.gamma = christoffel_from(d);
    if (curvature) pg.riemann = riemann_from(pg.gamma, christoffel_derivative(M, p));
    return pg;
}

Vec curvature_apply(const Tensor4& R, const Vec& X, const Vec& Y, const Vec& Z) {
    const int m = R.n;
    Vec out = Vec::Zero(m);
    for (int l = 0; l < m; ++l) {
        double s = 0;
        for (int i = 0; i < m; ++i) {
            if (X[i] == 0) continue;
            for (int j = 0; j < m; ++j) {
                if (Y[j] == 0) continue;
                for (int k = 0; k < m; ++k) s += R(l, i, j, k) * X[i] * Y[j] * Z[k];
            }
        }
        out[l] = s;
    }
    return out;
}

Mat ricci_from(const Tensor4& R) {
    const int m = R.n;
    Mat ric = Mat::Zero(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i) ric(j, k) += R(i, i, j, k);
    return ric;
}

double scalar_curvature_from(const Tensor4& R, const Mat& g_inv) {
    return (g_inv.cwiseProduct(ricci_from(R))).sum();
}

double scalar_curvature(const ChartManifold& M, const Vec& p) {
    const PointGeometry pg = point_geometry(M, p, true);
    return scalar_curvature_from(pg.riemann, pg.g_inv);
}

double sectional_curvature(const Tensor4& R, const Mat& g, const Vec& X, const Vec& Y) {
    const double xx = inner(g, X, X), yy = inner(g, Y, Y), xy = inner(g, X, Y);
    const double den = xx * yy - xy * xy;
    if (!(den > 1e-14 * std::max(1.0, xx * yy))) throw DegeneratePlane("plane spanned by X, Y is degenerate");
    return inner(g, curvature_apply(R, X, Y, Y), X) / den;
}

double sectional_curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y) {
    const PointGeometry pg = point_geometry(M, p, true);
    return sectional_curvature(pg.riemann, pg.g, X, Y);
}

double metric_compatibility_residual(const ChartManifold& M, const Vec& p) {
    const int m = M.dim;
    const Tensor3 G = christoffel_at(M, p);
    const Mat g = metric_at(M, p);
    // ∂g from plain differences of metric_eval, independent of any analytic callback
    const double h = fd_step(M, p);
    double worst = 0;
    for (int k = 0; k < m; ++k) {
        const Mat dg = central_difference([&](const Vec& q) { return M.metric_eval(q); }, p, k, h);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double r = dg(i, j);
                for (int l = 0; l < m; ++l) r -= G(l, k, i) * g(l, j) + G(l, k, j) * g(i, l);
                worst = std::max(worst, std::abs(r));
            }
    }
    return worst;
}

double christoffel_symmetry_residual(const Tensor3& G) {
    double worst = 0;
    for (int k = 0; k < G.n; ++k)
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) worst = std::max(worst, std::abs(G(k, i, j) - G(k, j, i)));
    return worst;
}

RiemannSymmetryResiduals riemann_symmetry_residuals(const Tensor4& R, const Mat& g) {
    const int m = R.n;
    Tensor4 low(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    double s = 0;
                    for (int q = 0; q < m; ++q) s += g(l, q) * R(q, i, j, k);
                    low(i, j, k, l) = s;
                }
    RiemannSymmetryResiduals r;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    r.antisym_first = std::max(r.antisym_first, std::abs(low(i, j, k, l) + low(j, i, k, l)));
                    r.antisym_second = std::max(r.antisym_second, std::abs(low(i, j, k, l) + low(i, j, l, k)));
                    r.pair = std::max(r.pair, std::abs(low(i, j, k, l) - low(k, l, i, j)));
                    r.bianchi = std::max(r.bianchi, std::abs(R(l, i, j, k) + R(l, j, k, i) + R(l, k, i, j)));
                }
    return r;
}

}  // namespace vfc
