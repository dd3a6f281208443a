#pragma once

#include <string>
#include <vector>

#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/quadrature.hpp"
#include "vfc/types.hpp"

namespace vfc {

// A nodal unit field on the full tensor quadrature grid of a chart with diagonal metric. Values are
// stored in the orthonormal frame e_a = ∂_a / |∂_a|; derivatives are spectral (Fourier on periodic
// axes, Lagrange through the Gauss–Legendre nodes otherwise).
struct GridField {
    ChartManifold M;
    std::vector<int> shape;
    std::vector<Vec> nodes;
    std::vector<double> weight;  // quadrature weight times sqrt(det g)
    Mat values;                  // nodes x m, orthonormal components
    bool unit = true;

    // precomputed per node
    Mat scale;                   // |∂_a| at each node (nodes x m)
    std::vector<Tensor3> omega;  // omega(a, b, c) = <∇_{e_b} e_c, e_a>
    std::vector<Mat> diff;       // per-axis differentiation matrices
    std::vector<size_t> stride;
};

// Throws DimensionUnsupported for non-diagonal metrics and SingularChartPoint if a node is excluded.
GridField make_grid_field(const ChartManifold& M, const std::vector<int>& shape);
// Samples a SectionField (chart components) into the grid and projects when `unit`.
void assign(GridField& gf, const SectionField& v);
// Chart components at each node (nodes x m).
Mat chart_values(const GridField& gf);

// Normalises every nodal vector. Idempotent.
void project(GridField& gf);

// Σ weight · Π (1 + λ_i²)^{1/2}.
double objective(const GridField& gf);
// L² gradient (per node, divided by the node weight) with the component along v removed.
Mat gradient(const GridField& gf);
double sup_norm(const Mat& grad);
// Σ weight <a, b> over nodes.
double weighted_inner(const GridField& gf, const Mat& a, const Mat& b);

struct OptConfig {
    int max_iters = 500;
    double tol = 5e-3;         // on the gradient sup-norm
    double initial_step = 0.1;
    double armijo_c = 1e-4;
    double min_step = 1e-10;
};

struct OptIterate {
    double objective = 0;
    double grad_norm = 0;
    double step = 0;
};

struct OptTrajectory {
    std::vector<OptIterate> iterates;  // iterates[0] is the start
    std::string reason;                // "gradient_tolerance", "max_iterations" or "LineSearchStall"
    int iterations = 0;
};

// Backtracking projected gradient descent; gf holds the final field on return.
OptTrajectory optimize(GridField& gf, const OptConfig& cfg = {});

// values += eps · δ / |δ|_rms with δ the sampled delta in the orthonormal frame and the RMS taken
// against the node weights; projected afterwards when unit. Throws ZeroContent for δ ≡ 0.
void perturb(GridField& gf, const SectionField& delta, double eps);

}  // namespace vfc
