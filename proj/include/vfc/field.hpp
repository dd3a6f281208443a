#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vfc/chart.hpp"
#include "vfc/jet.hpp"
#include "vfc/types.hpp"

namespace vfc {

using FieldFn = std::function<Vec(const Vec&)>;
using FieldJetFn = std::function<std::vector<Jet>(const Vec&)>;
using DistanceFn = std::function<double(const Vec&)>;

// A vector field in chart components.
struct SectionField {
    int dim = 0;
    std::string name;
    FieldFn eval;
    FieldJetFn jets;          // optional: components with exact first and second derivatives
    DistanceFn zero_distance;  // optional: chart distance to the zero/singular set Z(v)
    double exclusion_radius = 1e-2;
    bool unit_flag = false;
};

// Value, dv(i,k) = ∂_k v^i and d2v[i](j,k) = ∂_j∂_k v^i.
struct FieldJet {
    Vec v;
    Mat dv;
    std::vector<Mat> d2v;
};

bool is_masked(const SectionField& v, const Vec& p);

// Value with the mask check; raises SingularFieldPoint inside the exclusion zone.
Vec field_value(const SectionField& v, const Vec& p);

// Exact jets when available, otherwise central differences with the chart's step.
FieldJet field_jet(const ChartManifold& M, const SectionField& v, const Vec& p);

// Build a field from a generic callable f(const T* x, T* out) instantiated for double and Jet.
template <class F>
SectionField make_analytic_field(std::string name, int m, F f) {
    SectionField v;
    v.dim = m;
    v.name = std::move(name);
    v.eval = [f, m](const Vec& x) {
        Vec out = Vec::Zero(m);
        f(x.data(), out.data());
        return out;
    };
    if (m <= kJetMax) {
        v.jets = [f, m](const Vec& x) {
            std::vector<Jet> xs(m);
            for (int i = 0; i < m; ++i) xs[i] = Jet::variable(x[i], i, m);
            std::vector<Jet> out(m, Jet(0.0));
            f(xs.data(), out.data());
            return out;
        };
    }
    return v;
}

SectionField scaled(const SectionField& v, double t);
SectionField linear_combination(const SectionField& a, double ca, const SectionField& b, double cb);

// v / |v|_g with unit_flag set. Keeps exact jets when both the chart and the field carry them.
SectionField normalized(const ChartManifold& M, const SectionField& v);

SectionField zero_field(int m);

}  // namespace vfc
