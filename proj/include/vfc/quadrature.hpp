#pragma once

#include <functional>
#include <vector>

#include "vfc/chart.hpp"
#include "vfc/types.hpp"

namespace vfc {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss–Legendre on [lo, hi]; trapezoid on [lo, hi) for periodic axes.
Rule1D gauss_legendre(int n, double lo = -1.0, double hi = 1.0);
Rule1D periodic_trapezoid(int n, double lo, double hi);

// Tensor-product grid over the chart. `weight` is the coordinate weight times sqrt(det g),
// so summing weight * f approximates the integral of f against dμ_g. Excluded nodes are dropped.
struct Grid {
    std::vector<Vec> nodes;
    std::vector<double> weight;
    std::vector<int> shape;  // nodes per axis before exclusion
};

struct GridOptions {
    double refine = 1.0;         // multiplies each axis' default node count
    std::vector<int> nodes;      // explicit per-axis counts (overrides defaults when non-empty)
};

Grid make_grid(const ChartManifold& M, const GridOptions& opts = {});

struct Integral {
    double value = 0.0;
    double err = 0.0;  // |Q_N − Q_1.5N|
};

// The 1.5x refinement used for error estimates.
GridOptions refined(const GridOptions& opts);

// Integrates f against dμ_g. Raises QuadratureDivergence when the refinement disagreement exceeds
// 100 * tol * max(1, |value|).
Integral integrate(const ChartManifold& M, const std::function<double(const Vec&)>& f, double tol = 1e-6,
                   const GridOptions& opts = {});

// Several integrands sharing one node sweep; f returns k values per node. Nodes where f returns
// an empty vector are skipped.
std::vector<Integral> integrate_many(const ChartManifold& M, int k,
                                     const std::function<std::vector<double>(const Vec&)>& f, double tol = 1e-6,
                                     const GridOptions& opts = {});

// Deterministic fixed-order sum of weight[i] * values[i].
double weighted_sum(const std::vector<double>& weight, const std::vector<double>& values);

}  // namespace vfc
