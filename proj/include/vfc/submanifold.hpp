#pragma once

#include <functional>
#include <vector>

#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/geometry.hpp"
#include "vfc/types.hpp"

namespace vfc {

// An immersion F of an m-dimensional parameter domain into an ambient chart.
struct Immersion {
    int dim = 0;
    std::function<Vec(const Vec&)> map;
    // Optional exact derivatives: jacobian (ambient x m) and second[i](a, b) = ∂_a∂_b F^i.
    std::function<Mat(const Vec&)> jacobian;
    std::function<std::vector<Mat>(const Vec&)> second;
    double fd_step = 1e-3;
};

// p -> (p, v(p)) inside the bundle chart, with derivatives from the field jets.
Immersion graph_immersion(const ChartManifold& M, const SectionField& v);

struct SubmanifoldGeometry {
    Vec point;                 // F(p) in ambient coordinates
    Mat tangent;               // columns T_a = ∂_a F
    Mat h;                     // induced metric
    std::vector<Vec> alpha;    // alpha[a*m+b] = α(T_a, T_b), ambient components
    Vec H;                     // h^{ab} α_ab
    double H_sq = 0;
    double alpha_sq = 0;
    double sigma_K = 0;        // Σ_{i≠j} K(e_i, e_j) over an orthonormal tangent frame
    double tangential_residual = 0;  // |tangential part of H| / max(1, |H|)
    PointGeometry ambient;
};

// Second fundamental form, mean curvature and exterior scalar curvature at p.
SubmanifoldGeometry submanifold_geometry(const ChartManifold& ambient, const Immersion& F, const Vec& p);

}  // namespace vfc
