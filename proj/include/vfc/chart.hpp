#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vfc/jet.hpp"
#include "vfc/types.hpp"

namespace vfc {

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
    int nodes = 32;  // default quadrature size along this axis
};

using MetricFn = std::function<Mat(const Vec&)>;
using MetricD1Fn = std::function<std::vector<Mat>(const Vec&)>;   // dg[k] = d_k g
using MetricJetFn = std::function<std::vector<Jet>(const Vec&)>;  // row-major m*m jets
using PointPredicate = std::function<bool(const Vec&)>;

// A single coordinate chart covering the manifold up to a measure-zero set.
struct ChartManifold {
    int dim = 0;
    std::string name;
    std::vector<Axis> axes;
    MetricFn metric_eval;
    MetricD1Fn metric_deriv;  // optional, exact first derivatives
    MetricJetFn metric_jets;  // optional, exact first and second derivatives
    std::vector<PointPredicate> excluded_loci;
    double fd_scale = 1.0;
    std::string kind;            // catalog tag, e.g. "sphere"; empty for ad-hoc charts
    std::vector<double> params;  // catalog parameters, e.g. {d, radius}
    double reference_volume = std::numeric_limits<double>::quiet_NaN();
};

struct MetricDerivatives {
    Mat g;
    std::vector<Mat> dg;                // dg[k](i,j) = d_k g_ij
    std::vector<std::vector<Mat>> d2g;  // d2g[k][l](i,j); empty unless requested and available
};

bool is_excluded(const ChartManifold& M, const Vec& p);

// Metric with exclusion and positive-definiteness checks.
Mat metric_at(const ChartManifold& M, const Vec& p);

// Finite-difference step at p: fd_scale * 1e-3, clamped to 1/1000 of the distance to a
// non-periodic chart boundary.
double fd_step(const ChartManifold& M, const Vec& p);

// First (and optionally second) metric derivatives: analytic when the chart provides them,
// otherwise fourth-order central differences.
MetricDerivatives metric_derivatives(const ChartManifold& M, const Vec& p, bool second = false);

// Fourth-order central difference of a vector-valued function along coordinate k.
template <class F>
auto central_difference(F&& f, const Vec& p, int k, double h) {
    Vec q = p;
    q[k] = p[k] + h;
    auto fp1 = f(q);
    q[k] = p[k] - h;
    auto fm1 = f(q);
    q[k] = p[k] + 2 * h;
    auto fp2 = f(q);
    q[k] = p[k] - 2 * h;
    auto fm2 = f(q);
    return decltype(fp1)((8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h));
}

// Build a chart from a generic metric callable f(const T* x, T* g) instantiated for double and Jet.
template <class F>
ChartManifold make_analytic_chart(std::string name, std::vector<Axis> axes, F f) {
    ChartManifold M;
    M.name = std::move(name);
    M.dim = static_cast<int>(axes.size());
    M.axes = std::move(axes);
    const int m = M.dim;
    M.metric_eval = [f, m](const Vec& x) {
        std::vector<double> g(static_cast<size_t>(m) * m, 0.0);
        f(x.data(), g.data());
        Mat out(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out(i, j) = g[i * m + j];
        return out;
    };
    if (m <= kJetMax) {
        M.metric_jets = [f, m](const Vec& x) {
            std::vector<Jet> xs(m);
            for (int i = 0; i < m; ++i) xs[i] = Jet::variable(x[i], i, m);
            std::vector<Jet> g(static_cast<size_t>(m) * m, Jet(0.0));
            f(xs.data(), g.data());
            return g;
        };
    }
    return M;
}

}  // namespace vfc
