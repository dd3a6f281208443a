#include "vfc/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <sstream>
#include <string>

#include "vfc/errors.hpp"
#include "vfc/parallel.hpp"

namespace vfc {

Rule1D gauss_legendre(int n, double lo, double hi) {
    const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    x.reserve(n);
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
        if (*it != 0.0) x.push_back(-*it);
    for (double z : zeros) x.push_back(z);
    Rule1D r;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (double xi : x) {
        const double dp = boost::math::legendre_p_prime(n, xi);
        r.nodes.push_back(mid + half * xi);
        r.weights.push_back(half * 2.0 / ((1.0 - xi * xi) * dp * dp));
    }
    return r;
}

Rule1D periodic_trapezoid(int n, double lo, double hi) {
    Rule1D r;
    const double h = (hi - lo) / n;
    for (int j = 0; j < n; ++j) {
        r.nodes.push_back(lo + j * h);
        r.weights.push_back(h);
    }
    return r;
}

Grid make_grid(const ChartManifold& M, const GridOptions& opts) {
    const int m = M.dim;
    std::vector<Rule1D> rules;
    Grid grid;
    for (int k = 0; k < m; ++k) {
        const Axis& a = M.axes[k];
        int n = opts.nodes.empty() ? static_cast<int>(std::lround(a.nodes * opts.refine)) : opts.nodes[k];
        n = std::max(n, 1);
        rules.push_back(a.periodic ? periodic_trapezoid(n, a.lo, a.hi) : gauss_legendre(n, a.lo, a.hi));
        grid.shape.push_back(n);
    }
    size_t total = 1;
    for (int n : grid.shape) total *= static_cast<size_t>(n);
    std::vector<Vec> pts(total, Vec(m));
    std::vector<double> w(total, 1.0);
    for (size_t idx = 0; idx < total; ++idx) {
        size_t rem = idx;
        for (int k = m - 1; k >= 0; --k) {
            const size_t j = rem % grid.shape[k];
            rem /= grid.shape[k];
            pts[idx][k] = rules[k].nodes[j];
            w[idx] *= rules[k].weights[j];
        }
    }
    std::vector<char> keep(total, 0);
    parallel_for(total, [&](size_t i) {
        if (is_excluded(M, pts[i])) return;
        w[i] *= std::sqrt(metric_at(M, pts[i]).determinant());
        keep[i] = 1;
    });
    for (size_t i = 0; i < total; ++i)
        if (keep[i]) {
            grid.nodes.push_back(std::move(pts[i]));
            grid.weight.push_back(w[i]);
        }
    return grid;
}

double weighted_sum(const std::vector<double>& weight, const std::vector<double>& values) {
    double s = 0;
    for (size_t i = 0; i < weight.size(); ++i) s += weight[i] * values[i];
    return s;
}

GridOptions refined(const GridOptions& opts) {
    GridOptions fine = opts;
    fine.refine = opts.refine * 1.5;
    for (int& n : fine.nodes) n = static_cast<int>(std::lround(n * 1.5));
    return fine;
}

namespace {

void check_divergence(const std::string& name, const Integral& I, double tol) {
    if (I.err > 100.0 * tol * std::max(1.0, std::abs(I.value))) {
        std::ostringstream os;
        os << name << ": refinement disagreement " << I.err << " for value " << I.value;
        throw QuadratureDivergence(os.str());
    }
}

}  // namespace

Integral integrate(const ChartManifold& M, const std::function<double(const Vec&)>& f, double tol,
                   const GridOptions& opts) {
    auto eval = [&](const GridOptions& o) {
        const Grid grid = make_grid(M, o);
        std::vector<double> vals(grid.nodes.size());
        parallel_for(grid.nodes.size(), [&](size_t i) { vals[i] = f(grid.nodes[i]); });
        return weighted_sum(grid.weight, vals);
    };
    Integral out;
    out.value = eval(opts);
    out.err = std::abs(eval(refined(opts)) - out.value);
    check_divergence(M.name, out, tol);
    return out;
}

std::vector<Integral> integrate_many(const ChartManifold& M, int k,
                                     const std::function<std::vector<double>(const Vec&)>& f, double tol,
                                     const GridOptions& opts) {
    auto eval = [&](const GridOptions& o) {
        const Grid grid = make_grid(M, o);
        std::vector<std::vector<double>> vals(grid.nodes.size());
        parallel_for(grid.nodes.size(), [&](size_t i) { vals[i] = f(grid.nodes[i]); });
        std::vector<double> sums(k, 0.0);
        for (size_t i = 0; i < vals.size(); ++i)
            for (int j = 0; j < k && j < static_cast<int>(vals[i].size()); ++j) sums[j] += grid.weight[i] * vals[i][j];
        return sums;
    };
    const std::vector<double> coarse = eval(opts), fine = eval(refined(opts));
    std::vector<Integral> out(k);
    for (int j = 0; j < k; ++j) {
        out[j] = {coarse[j], std::abs(fine[j] - coarse[j])};
        check_divergence(M.name, out[j], tol);
    }
    return out;
}

}  // namespace vfc
