#include "vfc/wirtinger.hpp"

#include <cmath>

#include "vfc/catalog.hpp"
#include "vfc/embedding.hpp"
#include "vfc/errors.hpp"
#include "vfc/parallel.hpp"

namespace vfc {

namespace {

// Orthonormal tangent frame of the graph as split pairs, oriented like the chart.
std::vector<SplitVector> oriented_graph_frame(const ChartManifold& M, const SectionField& v, const Vec& p) {
    const PointFrame f = eigenframe_from(field_geometry(M, v, p, false), false);
    std::vector<SplitVector> out = f.lifted;
    const Mat B = orthonormal_basis(metric_at(M, p));
    if ((B.inverse() * f.e).determinant() < 0) {
        out.back().hor = -out.back().hor;
        out.back().ver = -out.back().ver;
    }
    return out;
}

}  // namespace

MinimalUnitContent minimal_unit_content(const ChartManifold& S, const SectionField& u, const GridOptions& grid,
                                        double tol, double equality_tol) {
    if (!is_round_sphere(S) || sphere_dimension(S) != 3 || std::abs(sphere_radius(S) - 1.0) > 1e-12)
        throw NotRoundSphere("minimal unit content is defined on the unit S^3");
    if (!u.unit_flag) throw NotUnit(u.name + " is not flagged as a unit field");

    const std::array<SectionField, 3> ijk = {hopf_field(S, 1.0, {1, 0, 0}), hopf_field(S, 1.0, {0, 1, 0}),
                                             hopf_field(S, 1.0, {0, 0, 1})};
    MinimalUnitContent r;
    const std::vector<Integral> ip = integrate_many(
        S, 3,
        [&](const Vec& p) -> std::vector<double> {
            if (is_masked(u, p)) return {};
            const Mat g = metric_at(S, p);
            const Vec up = field_value(u, p);
            return {up.dot(g * ijk[0].eval(p)), up.dot(g * ijk[1].eval(p)), up.dot(g * ijk[2].eval(p))};
        },
        tol, grid);
    for (int k = 0; k < 3; ++k) r.inner[k] = ip[k].value;
    r.C = std::sqrt(r.inner[0] * r.inner[0] + r.inner[1] * r.inner[1] + r.inner[2] * r.inner[2]);
    if (r.C < 1e-10) throw ZeroContent(u.name + " is L²-orthogonal to every Hopf field");
    for (int k = 0; k < 3; ++k) r.coeffs[k] = r.inner[k] / r.C;
    // renormalise to absorb rounding in the unit constraint
    const double cn = std::sqrt(r.coeffs[0] * r.coeffs[0] + r.coeffs[1] * r.coeffs[1] + r.coeffs[2] * r.coeffs[2]);
    for (double& c : r.coeffs) c /= cn;
    r.content = hopf_field(S, 1.0, r.coeffs);
    r.content.name = "v_H(" + u.name + ")";
    const SectionField& vh = r.content;

    const Grid g = make_grid(S, grid);
    std::vector<double> det(g.nodes.size(), 0.0);
    std::vector<char> used(g.nodes.size(), 0), coincide(g.nodes.size(), 0);
    parallel_for(g.nodes.size(), [&](size_t i) {
        const Vec& p = g.nodes[i];
        if (is_masked(u, p)) return;
        const Mat gm = metric_at(S, p);
        const std::vector<SplitVector> fu = oriented_graph_frame(S, u, p);
        const std::vector<SplitVector> fv = oriented_graph_frame(S, vh, p);
        Mat C(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) C(a, b) = sasaki_inner(gm, fv[a], fu[b]);
        det[i] = C.determinant();
        const Vec diff = field_value(u, p) - vh.eval(p);
        coincide[i] = std::sqrt(std::max(0.0, diff.dot(gm * diff))) <= equality_tol;
        used[i] = 1;
    });
    for (size_t i = 0; i < det.size(); ++i) {
        if (!used[i]) continue;
        ++r.nodes;
        r.max_det = std::max(r.max_det, det[i]);
        r.min_det = std::min(r.min_det, det[i]);
        const bool eq = std::abs(det[i] - 1.0) <= equality_tol;
        r.equality_nodes += eq;
        r.coincidence_nodes += coincide[i];
        r.mismatched_nodes += eq != static_cast<bool>(coincide[i]);
    }

    const std::vector<Integral> mu = integrate_many(
        S, 2,
        [&](const Vec& p) -> std::vector<double> {
            if (is_masked(u, p)) return {};
            return {volume_density(S, u, p), volume_density(S, vh, p)};
        },
        tol, grid);
    r.mu_u = mu[0];
    r.mu_content = mu[1];
    return r;
}

}  // namespace vfc
