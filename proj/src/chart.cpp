#include "vfc/chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vfc/errors.hpp"

namespace vfc {

namespace {

std::string point_string(const Vec& p) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ")";
    return os.str();
}

}  // namespace

bool is_excluded(const ChartManifold& M, const Vec& p) {
    for (const auto& pred : M.excluded_loci)
        if (pred(p)) return true;
    return false;
}

Mat metric_at(const ChartManifold& M, const Vec& p) {
    if (is_excluded(M, p)) throw SingularChartPoint(M.name + " at " + point_string(p));
    Mat g = M.metric_eval(p);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success || !g.allFinite())
        throw NonPositiveDefinite(M.name + " at " + point_string(p));
    return g;
}

double fd_step(const ChartManifold& M, const Vec& p) {
    double h = 1e-3 * M.fd_scale;
    for (int k = 0; k < M.dim && k < static_cast<int>(M.axes.size()); ++k) {
        const Axis& a = M.axes[k];
        if (a.periodic) continue;
        const double dist = std::min(p[k] - a.lo, a.hi - p[k]);
        if (dist > 0) h = std::min(h, dist / 1000.0);
    }
    return h;
}

MetricDerivatives metric_derivatives(const ChartManifold& M, const Vec& p, bool second) {
    const int m = M.dim;
    MetricDerivatives out;
    if (M.metric_jets) {
        if (is_excluded(M, p)) throw SingularChartPoint(M.name + " at " + point_string(p));
        const std::vector<Jet> g = M.metric_jets(p);
        out.g = Mat(m, m);
        out.dg.assign(m, Mat(m, m));
        if (second) out.d2g.assign(m, std::vector<Mat>(m, Mat(m, m)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Jet& e = g[i * m + j];
                out.g(i, j) = e.v;
                for (int k = 0; k < m; ++k) {
                    out.dg[k](i, j) = e.g[k];
                    if (second)
                        for (int l = 0; l < m; ++l) out.d2g[k][l](i, j) = e.h[k][l];
                }
            }
        Eigen::LLT<Mat> llt(out.g);
        if (llt.info() != Eigen::Success) throw NonPositiveDefinite(M.name + " at " + point_string(p));
        return out;
    }
    out.g = metric_at(M, p);
    const double h = fd_step(M, p);
    if (M.metric_deriv) {
        out.dg = M.metric_deriv(p);
    } else {
        out.dg.resize(m);
        for (int k = 0; k < m; ++k)
            out.dg[k] = central_difference([&](const Vec& q) { return M.metric_eval(q); }, p, k, h);
    }
    if (second) {
        out.d2g.assign(m, std::vector<Mat>(m));
        auto first = [&](const Vec& q, int k) -> Mat {
            if (M.metric_deriv) return M.metric_deriv(q)[k];
            return central_difference([&](const Vec& r) { return M.metric_eval(r); }, q, k, h);
        };
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
                out.d2g[k][l] = central_difference([&](const Vec& q) { return first(q, k); }, p, l, h);
    }
    return out;
}

}  // namespace vfc
