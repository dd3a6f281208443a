#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "vfc/bundle.hpp"
#include "vfc/chart.hpp"
#include "vfc/field.hpp"
#include "vfc/quadrature.hpp"
#include "vfc/submanifold.hpp"

namespace vfc {

// Extrinsic data of the graph of v inside (TM, g_S) at p.
struct ExtrinsicSample {
    double sigma_K = 0;  // Σ_{i≠j} K(e_i^f, e_j^f)
    double H_sq = 0;
    double alpha_sq = 0;
    double s_induced = std::numeric_limits<double>::quiet_NaN();
    double gauss_residual = std::numeric_limits<double>::quiet_NaN();  // s − ΣK − |H|² + |α|²
    double density = 1;  // dμ_{g(v)} / dμ_g
    Mat h;               // induced metric in chart coordinates
};

// `ambient` defaults to bundle_chart(M); pass a rescaled bundle chart to work in e^{2φ} g_S.
ExtrinsicSample extrinsic_at(const ChartManifold& M, const SectionField& v, const Vec& p, bool intrinsic = true);
ExtrinsicSample extrinsic_in(const ChartManifold& ambient, const ChartManifold& M, const SectionField& v,
                             const Vec& p, bool intrinsic);

struct FunctionalOptions {
    GridOptions grid;
    double tol = 1e-6;
    // Compute S from the intrinsic scalar curvature of g(v) (independent of the Gauss identity).
    bool intrinsic = true;
};

struct FunctionalReport {
    int m = 0;
    Integral mu, S, Theta, Psi, Pi, W, D;
    std::optional<Integral> W2, D2;  // m = 2 only
    double epsilon = 0;              // exclusion radius when the field has a zero set
    size_t nodes = 0;
};

FunctionalReport total_functionals(const ChartManifold& M, const SectionField& v, const FunctionalOptions& opts = {});
// Same integrals with the graph placed in an arbitrary ambient chart over TM.
FunctionalReport total_functionals_in(const ChartManifold& ambient, const ChartManifold& M, const SectionField& v,
                                      const FunctionalOptions& opts = {});

struct ConformalValues {
    Integral W, D;
    std::optional<Integral> S;        // m = 2 only: unchanged total scalar curvature
    std::optional<Integral> W2, D2;   // m = 2 only
};

// W and D after a conformal deformation of factor e^{2tu}, assembled from the undeformed graph:
// m > 2: ∫ e^{(m−2)tu} (m/(m−1) ΣK + |H|² + m(m−2) t²|du^τ|²) and ∫ e^{(m−2)tu} (ΣK/(m−1) + |α|² + (m−2) t²|du^τ|²);
// m = 1: ∫ e^{−tu} |H|² for both; m = 2: W, D, S are the undeformed values and
// W² = ∫ e^{−2tu} (2ΣK + |H|²)², D² = ∫ e^{−2tu} (ΣK + |α|²)².
ConformalValues conformal_eval(const ChartManifold& M, const SectionField& v, const BasicFunction& u, double t,
                               const FunctionalOptions& opts = {});
// Oracle: recompute everything inside the rescaled ambient e^{2t u∘π} g_S.
ConformalValues conformal_eval_direct(const ChartManifold& M, const SectionField& v, const BasicFunction& u,
                                      double t, const FunctionalOptions& opts = {});

struct DensityTest {
    double mean = 0;           // volume-weighted mean of the density over the graph
    double max_deviation = 0;  // max |d − mean| / |mean|
    size_t nodes = 0;
    bool canonical = false;
};

// d = m/(m−1) ΣK + |H|² (2ΣK + |H|² when m = 2) over the grid minus the exclusion zone.
DensityTest canonical_density_test(const ChartManifold& M, const SectionField& v, double tol = 1e-5,
                                   const GridOptions& grid = {});

// The graph θ ↦ (θ, h(θ)) in the flat cylinder S¹(l) × R.
struct CurveCycle {
    double length = 0;
    double max_curvature = 0;  // max |h''| / (1 + h'²)^{3/2}
    bool geodesic = false;
};
CurveCycle curve_cycle(double l, const std::function<double(double)>& h, double tol = 1e-8, int nodes = 256);

}  // namespace vfc
