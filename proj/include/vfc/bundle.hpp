#pragma once

#include <functional>

#include "vfc/chart.hpp"
#include "vfc/types.hpp"

namespace vfc {

// A point (x, v) of TM in the bundle chart.
struct BundlePoint {
    Vec base;
    Vec fiber;
};

// Tangent vector of TM at (p, v) split as X^hor + Y^ver.
struct SplitVector {
    Vec hor;
    Vec ver;
};

// The Sasaki metric on TM as a 2m-dimensional chart over (x, v). Exact first derivatives are
// assembled from the base metric jets (or the base chart's own derivative tier).
ChartManifold bundle_chart(const ChartManifold& M);

// A^i_j = Γ^i_jl v^l at the bundle point.
Mat connection_matrix(const ChartManifold& M, const BundlePoint& q);

// X^hor + Y^ver -> raw 2m coordinates: (X, Y − A X).
Vec raw_from_split(const ChartManifold& M, const BundlePoint& q, const SplitVector& s);
// Raw (X, V) -> split pair (X, K Ξ) with K Ξ = V + A X.
SplitVector split_from_raw(const ChartManifold& M, const BundlePoint& q, const Vec& raw);

inline SplitVector horizontal_lift(const Vec& X) { return {X, Vec::Zero(X.size())}; }
inline SplitVector vertical_lift(const Vec& X) { return {Vec::Zero(X.size()), X}; }

// g_S on split pairs: g(X, X') + g(Y, Y').
double sasaki_inner(const Mat& g, const SplitVector& a, const SplitVector& b);

// e^{2 t u} times the metric of M. Keeps a first-derivative tier when M has one.
struct BasicFunction {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
};
ChartManifold conformal_rescale(const ChartManifold& M, const BasicFunction& u, double t);

// u∘π on the bundle chart of a base with dimension m.
BasicFunction pullback_to_bundle(const BasicFunction& u, int m);

}  // namespace vfc
