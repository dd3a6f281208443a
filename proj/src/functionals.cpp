#include "vfc/functionals.hpp"

#include <cmath>

#include "vfc/embedding.hpp"
#include "vfc/errors.hpp"
#include "vfc/geometry.hpp"
#include "vfc/parallel.hpp"

namespace vfc {

ExtrinsicSample extrinsic_in(const ChartManifold& ambient, const ChartManifold& M, const SectionField& v,
                             const Vec& p, bool intrinsic) {
    if (is_masked(v, p)) throw SingularFieldPoint(v.name + " is masked at this point");
    const SubmanifoldGeometry sg = submanifold_geometry(ambient, graph_immersion(M, v), p);
    ExtrinsicSample s;
    s.sigma_K = sg.sigma_K;
    s.H_sq = sg.H_sq;
    s.alpha_sq = sg.alpha_sq;
    s.h = sg.h;
    s.density = std::sqrt(sg.h.determinant() / metric_at(M, p).determinant());
    if (intrinsic) {
        s.s_induced = scalar_curvature_from(riemann_at(induced_chart(M, v), p), sg.h.inverse());
        s.gauss_residual = s.s_induced - s.sigma_K - s.H_sq + s.alpha_sq;
    }
    return s;
}

ExtrinsicSample extrinsic_at(const ChartManifold& M, const SectionField& v, const Vec& p, bool intrinsic) {
    return extrinsic_in(bundle_chart(M), M, v, p, intrinsic);
}

namespace {

double exclusion(const SectionField& v) { return v.zero_distance ? v.exclusion_radius : 0.0; }

}  // namespace

FunctionalReport total_functionals_in(const ChartManifold& ambient, const ChartManifold& M, const SectionField& v,
                                      const FunctionalOptions& opts) {
    const int m = M.dim;
    const bool intrinsic = opts.intrinsic && m >= 2;
    const int k = m == 2 ? 7 : 5;
    // mu, S, Theta, Psi, Pi [, W2, D2]
    auto f = [&](const Vec& p) -> std::vector<double> {
        if (is_masked(v, p)) return {};
        const ExtrinsicSample e = extrinsic_in(ambient, M, v, p, intrinsic);
        const double s = intrinsic ? e.s_induced : e.sigma_K + e.H_sq - e.alpha_sq;
        std::vector<double> out = {1.0, s, e.sigma_K, e.H_sq, e.alpha_sq};
        if (m == 2) {
            out.push_back(std::pow(2 * e.sigma_K + e.H_sq, 2));
            out.push_back(std::pow(e.sigma_K + e.alpha_sq, 2));
        }
        for (double& x : out) x *= e.density;
        return out;
    };
    const std::vector<Integral> I = integrate_many(M, k, f, opts.tol, opts.grid);
    FunctionalReport r;
    r.m = m;
    r.mu = I[0];
    r.S = I[1];
    r.Theta = I[2];
    r.Psi = I[3];
    r.Pi = I[4];
    if (m >= 2) {
        const double a = double(m) / (m - 1), b = 1.0 / (m - 1);
        r.W = {a * r.Theta.value + r.Psi.value, a * r.Theta.err + r.Psi.err};
        r.D = {b * r.Theta.value + r.Pi.value, b * r.Theta.err + r.Pi.err};
    } else {
        r.W = r.Psi;
        r.D = r.Pi;
    }
    if (m == 2) {
        r.W2 = I[5];
        r.D2 = I[6];
    }
    r.epsilon = exclusion(v);
    r.nodes = make_grid(M, opts.grid).nodes.size();
    return r;
}

FunctionalReport total_functionals(const ChartManifold& M, const SectionField& v, const FunctionalOptions& opts) {
    return total_functionals_in(bundle_chart(M), M, v, opts);
}

ConformalValues conformal_eval(const ChartManifold& M, const SectionField& v, const BasicFunction& u, double t,
                               const FunctionalOptions& opts) {
    const int m = M.dim;
    if (m > 2 && !u.gradient) throw DimensionUnsupported("conformal factor has no gradient for |du^τ|²");
    const ChartManifold B = bundle_chart(M);
    ConformalValues out;
    if (m == 2) {
        FunctionalOptions o = opts;
        auto f = [&](const Vec& p) -> std::vector<double> {
            if (is_masked(v, p)) return {};
            const ExtrinsicSample e = extrinsic_in(B, M, v, p, o.intrinsic);
            const double s = o.intrinsic ? e.s_induced : e.sigma_K + e.H_sq - e.alpha_sq;
            const double damp = std::exp(-2 * t * u.value(p)) * e.density;
            return {(2 * e.sigma_K + e.H_sq) * e.density, (e.sigma_K + e.alpha_sq) * e.density, s * e.density,
                    damp * std::pow(2 * e.sigma_K + e.H_sq, 2), damp * std::pow(e.sigma_K + e.alpha_sq, 2)};
        };
        const std::vector<Integral> I = integrate_many(M, 5, f, opts.tol, opts.grid);
        out.W = I[0];
        out.D = I[1];
        out.S = I[2];
        out.W2 = I[3];
        out.D2 = I[4];
        return out;
    }
    auto f = [&](const Vec& p) -> std::vector<double> {
        if (is_masked(v, p)) return {};
        const ExtrinsicSample e = extrinsic_in(B, M, v, p, false);
        const double tu = t * u.value(p);
        if (m == 1) {
            const double w = std::exp(-tu) * e.H_sq * e.density;
            return {w, w};
        }
        const Vec du = t * u.gradient(p);
        const double grad_sq = du.dot(e.h.inverse() * du);
        const double scale = std::exp((m - 2) * tu) * e.density;
        return {scale * (double(m) / (m - 1) * e.sigma_K + e.H_sq + m * (m - 2) * grad_sq),
                scale * (e.sigma_K / (m - 1) + e.alpha_sq + (m - 2) * grad_sq)};
    };
    const std::vector<Integral> I = integrate_many(M, 2, f, opts.tol, opts.grid);
    out.W = I[0];
    out.D = I[1];
    return out;
}

ConformalValues conformal_eval_direct(const ChartManifold& M, const SectionField& v, const BasicFunction& u,
                                      double t, const FunctionalOptions& opts) {
    const int m = M.dim;
    const ChartManifold A = conformal_rescale(bundle_chart(M), pullback_to_bundle(u, m), t);
    FunctionalOptions o = opts;
    o.intrinsic = false;
    const FunctionalReport r = total_functionals_in(A, M, v, o);
    ConformalValues out;
    out.W = r.W;
    out.D = r.D;
    if (m == 2) {
        out.S = Integral{r.Theta.value + r.Psi.value - r.Pi.value, r.Theta.err + r.Psi.err + r.Pi.err};
        out.W2 = r.W2;
        out.D2 = r.D2;
    }
    return out;
}

DensityTest canonical_density_test(const ChartManifold& M, const SectionField& v, double tol, const GridOptions& grid) {
    const int m = M.dim;
    if (m < 2) throw DimensionUnsupported("canonical density test needs m >= 2");
    const double a = m == 2 ? 2.0 : double(m) / (m - 1);
    const ChartManifold B = bundle_chart(M);
    const Grid g = make_grid(M, grid);
    std::vector<double> d(g.nodes.size(), 0.0), w(g.nodes.size(), 0.0);
    std::vector<char> used(g.nodes.size(), 0);
    parallel_for(g.nodes.size(), [&](size_t i) {
        if (is_masked(v, g.nodes[i])) return;
        const ExtrinsicSample e = extrinsic_in(B, M, v, g.nodes[i], false);
        d[i] = a * e.sigma_K + e.H_sq;
        w[i] = g.weight[i] * e.density;
        used[i] = 1;
    });
    DensityTest t;
    double num = 0, den = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        if (!used[i]) continue;
        num += w[i] * d[i];
        den += w[i];
        ++t.nodes;
    }
    if (t.nodes == 0) throw QuadratureDivergence("no admissible nodes for the density test");
    t.mean = num / den;
    const double scale = std::max(std::abs(t.mean), 1e-300);
    for (size_t i = 0; i < d.size(); ++i)
        if (used[i]) t.max_deviation = std::max(t.max_deviation, std::abs(d[i] - t.mean) / scale);
    t.canonical = t.max_deviation <= tol;
    return t;
}

CurveCycle curve_cycle(double l, const std::function<double(double)>& h, double tol, int nodes) {
    const double step = 1e-3 * l;
    CurveCycle c;
    for (int j = 0; j < nodes; ++j) {
        const double x = l * j / nodes;
        const double f2 = h(x - 2 * step), f1 = h(x - step), f0 = h(x), g1 = h(x + step), g2 = h(x + 2 * step);
        const double d1 = (f2 - 8 * f1 + 8 * g1 - g2) / (12 * step);
        const double d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * g1 - g2) / (12 * step * step);
        const double s = 1 + d1 * d1;
        c.length += (l / nodes) * std::sqrt(s);
        c.max_curvature = std::max(c.max_curvature, std::abs(d2) / std::pow(s, 1.5));
    }
    c.geodesic = c.max_curvature <= tol;
    return c;
}

}  // namespace vfc
