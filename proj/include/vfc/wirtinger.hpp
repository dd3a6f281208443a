#pragma once

#include <array>

#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/quadrature.hpp"

namespace vfc {

// Minimal unit content of a unit field u on the unit S³: the Hopf field v_H(u) = (aI + bJ + cK)∂_r
// with (a, b, c) = (<u, I∂_r>, <u, J∂_r>, <u, K∂_r>) / C(u), together with the pointwise comparison
// of the two graphs' volume forms.
struct MinimalUnitContent {
    std::array<double, 3> inner{};   // global L² inner products with I∂_r, J∂_r, K∂_r
    double C = 0;                    // C(u)
    std::array<double, 3> coeffs{};  // (a, b, c)
    SectionField content;            // v_H(u)

    // det of the 3x3 matrix of coordinates of an oriented orthonormal tangent frame of the graph
    // of u in one of the graph of v_H(u), both taken as split pairs in T_pM ⊕ T_pM.
    double max_det = -1;
    double min_det = 1;
    size_t nodes = 0;
    size_t equality_nodes = 0;     // |det − 1| ≤ equality_tol
    size_t coincidence_nodes = 0;  // |u − v_H(u)| ≤ equality_tol
    size_t mismatched_nodes = 0;   // in exactly one of the two sets above

    Integral mu_u;        // μ(u)
    Integral mu_content;  // μ(v_H(u))
};

MinimalUnitContent minimal_unit_content(const ChartManifold& S3, const SectionField& u, const GridOptions& grid = {},
                                        double tol = 1e-6, double equality_tol = 1e-9);

}  // namespace vfc
