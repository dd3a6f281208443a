#include "vfc/weighted.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "vfc/errors.hpp"
#include "vfc/quadrature.hpp"

namespace vfc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) { return std::tgamma(n + 1.0); }

double weight_sum(const WeightVector& W) { return std::accumulate(W.w.begin(), W.w.end(), 0.0); }

double weighted_ratio(const WeightVector& W, const std::vector<std::complex<double>>& z,
                      const std::vector<double>& coef) {
    if (z.size() != W.w.size()) throw DimensionUnsupported("point has the wrong number of complex coordinates");
    double num = 0, den = 0;
    for (size_t j = 0; j < z.size(); ++j) {
        const double r2 = std::norm(z[j]);
        num += W.w[j] * coef[j] * r2;
        den += W.w[j] * r2;
    }
    if (!(den > 0)) throw SingularChartPoint("z = 0 is not on the sphere");
    return num / den;
}

}  // namespace

std::vector<double> WeightVector::A() const {
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> a(w.size());
    for (size_t j = 0; j < w.size(); ++j) a[j] = s - static_cast<double>(w.size()) * w[j];
    return a;
}

void validate(const WeightVector& W) {
    if (W.w.empty()) throw NonPositiveWeight("empty weight vector");
    for (double x : W.w)
        if (!(x > 0)) {
            std::ostringstream os;
            os << "weight " << x << " is not positive";
            throw NonPositiveWeight(os.str());
        }
    if (!W.b.empty() && W.b.size() != W.w.size()) throw NonPositiveWeight("b and w lengths differ");
}

double futaki_character(const WeightVector& W) {
    validate(W);
    const int n = W.n();
    const std::vector<double> A = W.A();
    std::vector<double> b = W.b;
    b.resize(W.w.size(), 0.0);
    double s = 0;
    const double Asum = std::accumulate(A.begin(), A.end(), 0.0);
    for (int i = 0; i <= n; ++i) s += b[i] / W.w[i] * (A[i] + 0.5 * (Asum - A[i]));
    double prod = 1;
    for (double x : W.w) prod *= x;
    return -16.0 * std::pow(kPi, n + 1) / factorial(n + 1) * s / prod;
}

double futaki_integral(const WeightVector& W, int nodes) {
    validate(W);
    const int n = W.n();
    const std::vector<double> A = W.A();
    std::vector<double> b = W.b;
    b.resize(W.w.size(), 0.0);
    const Rule1D r = gauss_legendre(nodes, 0.0, 1.0);
    std::vector<double> x(nodes), jac(nodes);
    for (int k = 0; k < nodes; ++k) {
        const double y = r.nodes[k];
        x[k] = y / (1 - y);
        jac[k] = r.weights[k] / ((1 - y) * (1 - y));
    }
    size_t total = 1;
    for (int j = 0; j < n; ++j) total *= nodes;
    double sum = 0;
    std::vector<int> idx(n, 0);
    for (size_t t = 0; t < total; ++t) {
        size_t rem = t;
        for (int j = n - 1; j >= 0; --j) {
            idx[j] = static_cast<int>(rem % nodes);
            rem /= nodes;
        }
        double p = b[0], q = W.w[0] * A[0], den = W.w[0], wt = 1;
        for (int j = 0; j < n; ++j) {
            const double xj = x[idx[j]];
            p += b[j + 1] * xj;
            q += W.w[j + 1] * A[j + 1] * xj;
            den += W.w[j + 1] * xj;
            wt *= jac[idx[j]];
        }
        sum += wt * p * q / std::pow(den, n + 3);
    }
    return -8.0 * (n + 2) * std::pow(kPi, n + 1) * sum;
}

WeightedInvariants weighted_invariants(const WeightVector& W) {
    validate(W);
    const int n = W.n();
    double prod = 1;
    for (double x : W.w) prod *= x;
    const double s = weight_sum(W);
    WeightedInvariants out;
    out.volume = 2.0 * std::pow(kPi, n + 1) / (factorial(n) * prod);
    out.s0 = 2.0 * n * (2.0 * s - 1.0);
    out.mean_transverse_scalar = 4.0 * n * s;
    return out;
}

double transverse_scalar_curvature(const WeightVector& W, const std::vector<std::complex<double>>& z) {
    validate(W);
    const int n = W.n();
    const double s = weight_sum(W);
    std::vector<double> c(W.w.size());
    for (size_t j = 0; j < c.size(); ++j) c[j] = 2 * s - (n + 2) * W.w[j];
    return 4.0 * (n + 1) * weighted_ratio(W, z, c);
}

double scalar_minus_projection(const WeightVector& W, const std::vector<std::complex<double>>& z) {
    validate(W);
    const int n = W.n();
    const double s = weight_sum(W);
    std::vector<double> c(W.w.size());
    for (size_t j = 0; j < c.size(); ++j) c[j] = s - (n + 1) * W.w[j];
    return 4.0 * (n + 2) * weighted_ratio(W, z, c);
}

}  // namespace vfc
