#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sampling.hpp"
#include "vfc/bundle.hpp"
#include "vfc/catalog.hpp"
#include "vfc/errors.hpp"
#include "vfc/geometry.hpp"
#include "vfc/quadrature.hpp"

using namespace vfc;
using testing_support::interior_points;

namespace {

ChartManifold flat_chart(int m) {
    std::vector<Axis> axes(m, Axis{0.0, 1.0, true, 8});
    return make_analytic_chart("flat", axes, [m](const auto*, auto* g) {
        for (int i = 0; i < m; ++i) g[i * m + i] = 1.0;
    });
}

ChartManifold polar_chart(bool hyperbolic) {
    std::vector<Axis> axes{{0.0, hyperbolic ? 3.0 : oracle::kPi, false, 24}, {0.0, 2 * oracle::kPi, true, 32}};
    return make_analytic_chart("polar", axes, [hyperbolic](const auto* x, auto* g) {
        using std::sin;
        using std::sinh;
        g[0] = 1.0;
        g[1] = g[2] = 0.0;
        if (hyperbolic) {
            auto f = sinh(x[0]);
            g[3] = f * f;
        } else {
            auto f = sin(x[0]);
            g[3] = f * f;
        }
    });
}

// Same metric with the analytic derivative tiers stripped, forcing finite differences.
ChartManifold without_jets(ChartManifold M) {
    M.metric_jets = nullptr;
    M.metric_deriv = nullptr;
    return M;
}

double max_abs(const Tensor4& T) {
    double m = 0;
    for (double x : T.data) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST(Christoffel, FlatChartVanishes) {
    const ChartManifold M = flat_chart(3);
    const Tensor3 G = christoffel_at(M, Vec::Constant(3, 0.3));
    for (double x : G.data) EXPECT_EQ(x, 0.0);
}

TEST(Christoffel, PolarSphereMatchesClosedFormAndFiniteDifferences) {
    const ChartManifold M = polar_chart(false);
    for (double r : {0.4, 1.1, 2.5}) {
        Vec p(2);
        p << r, 0.7;
        const Tensor3 G = christoffel_at(M, p);
        const auto fd = oracle::fd_christoffel(M.metric_eval, p);
        EXPECT_NEAR(G(0, 1, 1), -std::sin(r) * std::cos(r), 1e-12);
        EXPECT_NEAR(G(1, 0, 1), std::cos(r) / std::sin(r), 1e-12);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) EXPECT_NEAR(G(k, i, j), fd[k](i, j), 1e-8);
    }
}

TEST(Christoffel, HyperbolicPolarChart) {
    const ChartManifold M = polar_chart(true);
    Vec p(2);
    p << 1.0, 0.0;
    const Tensor3 G = christoffel_at(M, p);
    EXPECT_NEAR(G(0, 1, 1), -std::sinh(1.0) * std::cosh(1.0), 1e-12);
    EXPECT_NEAR(G(0, 1, 1), oracle::fd_christoffel(M.metric_eval, p)[0](1, 1), 1e-8);
}

TEST(Christoffel, SymmetricAndCompatibleOnCatalogManifolds) {
    for (const ChartManifold& M : {make_round_sphere(3), make_round_sphere(5), product_spheres(3, 3, 0.6, 0.8)}) {
        for (const Vec& p : interior_points(M, 10, 7)) {
            EXPECT_LE(christoffel_symmetry_residual(christoffel_at(M, p)), 1e-12) << M.name;
            EXPECT_LE(metric_compatibility_residual(M, p), 1e-8) << M.name;
        }
    }
}

TEST(Christoffel, FiniteDifferenceFallbackIsCompatible) {
    const ChartManifold M = without_jets(make_round_sphere(3));
    for (const Vec& p : interior_points(M, 10, 8)) EXPECT_LE(metric_compatibility_residual(M, p), 1e-5);
}

TEST(Christoffel, ExcludedPointThrows) {
    const ChartManifold M = make_round_sphere(3);
    Vec p = Vec::Zero(3);  // η = 0 is a coordinate axis
    EXPECT_THROW(christoffel_at(M, p), SingularChartPoint);
}

TEST(Christoffel, IndefiniteMetricThrows) {
    std::vector<Axis> axes(2, Axis{0.0, 1.0, true, 8});
    const ChartManifold M = make_analytic_chart("lorentz", axes, [](const auto*, auto* g) {
        g[0] = 1.0;
        g[1] = g[2] = 0.0;
        g[3] = -1.0;
    });
    EXPECT_THROW(metric_at(M, Vec::Constant(2, 0.5)), NonPositiveDefinite);
}

TEST(Christoffel, AnalyticDerivativesAgreeWithFiniteDifferences) {
    const ChartManifold M = make_round_sphere(5);
    const ChartManifold F = without_jets(M);
    for (const Vec& p : interior_points(M, 5, 9)) {
        const MetricDerivatives a = metric_derivatives(M, p), b = metric_derivatives(F, p);
        for (int k = 0; k < M.dim; ++k) EXPECT_LE((a.dg[k] - b.dg[k]).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(Riemann, FlatChartVanishes) {
    const ChartManifold M = flat_chart(2);
    EXPECT_EQ(max_abs(riemann_at(M, Vec::Constant(2, 0.2))), 0.0);
    EXPECT_EQ(scalar_curvature(M, Vec::Constant(2, 0.2)), 0.0);
}

TEST(Riemann, OddSphereScalarCurvature) {
    for (int n : {1, 2}) {
        const ChartManifold M = make_round_sphere(2 * n + 1);
        for (const Vec& p : interior_points(M, 5, 11))
            EXPECT_NEAR(scalar_curvature(M, p), 2.0 * n * (2 * n + 1), 1e-9) << "n=" << n;
    }
}

TEST(Riemann, SymmetriesAnalyticAndFiniteDifference) {
    const ChartManifold M = product_spheres(3, 3, 0.6, 0.8);
    for (const Vec& p : interior_points(M, 5, 12)) {
        const PointGeometry geo = point_geometry(M, p, true);
        const RiemannSymmetryResiduals r = riemann_symmetry_residuals(geo.riemann, geo.g);
        EXPECT_LE(r.antisym_first, 1e-6);
        EXPECT_LE(r.antisym_second, 1e-6);
        EXPECT_LE(r.pair, 1e-6);
        EXPECT_LE(r.bianchi, 1e-6);
    }
    const ChartManifold F = without_jets(make_round_sphere(3));
    for (const Vec& p : interior_points(F, 5, 13)) {
        const PointGeometry geo = point_geometry(F, p, true);
        const RiemannSymmetryResiduals r = riemann_symmetry_residuals(geo.riemann, geo.g);
        EXPECT_LE(std::max({r.antisym_first, r.antisym_second, r.pair, r.bianchi}), 1e-4);
        EXPECT_NEAR(scalar_curvature_from(geo.riemann, geo.g_inv), 6.0, 1e-4);
    }
}

TEST(SectionalCurvature, PolarSphereIsOne) {
    const ChartManifold M = without_jets(polar_chart(false));
    for (double r : {0.5, 1.3, 2.4}) {
        Vec p(2), X(2), Y(2);
        p << r, 1.0;
        X << 1, 0;
        Y << 0, 1;
        EXPECT_NEAR(sectional_curvature(M, p, X, Y), 1.0, 1e-6);
    }
}

TEST(SectionalCurvature, FlatChartIsZero) {
    const ChartManifold M = flat_chart(3);
    Vec X(3), Y(3);
    X << 1, 2, 0;
    Y << 0, 1, 1;
    EXPECT_EQ(sectional_curvature(M, Vec::Constant(3, 0.1), X, Y), 0.0);
}

TEST(SectionalCurvature, InvariantUnderPlaneReparametrization) {
    const ChartManifold M = product_spheres(3, 3, 0.6, 0.8);
    std::mt19937_64 rng(21);
    for (const Vec& p : interior_points(M, 5, 14)) {
        const PointGeometry geo = point_geometry(M, p, true);
        const Vec X = oracle::random_vec(rng, M.dim), Y = oracle::random_vec(rng, M.dim);
        const double K = sectional_curvature(geo.riemann, geo.g, X, Y);
        EXPECT_NEAR(sectional_curvature(geo.riemann, geo.g, Y, X), K, 1e-10 * std::max(1.0, std::abs(K)));
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::Matrix2d A = Eigen::Matrix2d::Random();
            if (std::abs(A.determinant()) < 0.1) continue;
            const Vec X2 = A(0, 0) * X + A(0, 1) * Y, Y2 = A(1, 0) * X + A(1, 1) * Y;
            EXPECT_NEAR(sectional_curvature(geo.riemann, geo.g, X2, Y2), K, 1e-10 * std::max(1.0, std::abs(K)));
        }
    }
}

TEST(SectionalCurvature, DegeneratePlaneThrows) {
    const ChartManifold M = make_round_sphere(3);
    Vec p(3), X(3);
    p << 0.6, 1.0, 2.0;
    X << 1, 0.5, 0;
    EXPECT_THROW(sectional_curvature(M, p, X, 2 * X), DegeneratePlane);
}

TEST(Quadrature, SphereVolumes) {
    for (int d : {2, 3, 5}) {
        const ChartManifold M = make_round_sphere(d);
        const Integral I = integrate(M, [](const Vec&) { return 1.0; });
        EXPECT_NEAR(I.value, oracle::sphere_volume(d), 1e-6 * oracle::sphere_volume(d)) << "S^" << d;
    }
    EXPECT_NEAR(oracle::sphere_volume(3), 2 * oracle::kPi * oracle::kPi, 1e-12);
    EXPECT_NEAR(oracle::sphere_volume(5), std::pow(oracle::kPi, 3), 1e-12);
}

TEST(Quadrature, ZeroIntegrand) {
    const Integral I = integrate(make_round_sphere(3), [](const Vec&) { return 0.0; });
    EXPECT_EQ(I.value, 0.0);
    EXPECT_EQ(I.err, 0.0);
}

TEST(Quadrature, FlatTorusVolumeIsImaginaryPartOfModulus) {
    const ChartManifold T = flat_torus({0.3, 1.7});
    EXPECT_NEAR(integrate(T, [](const Vec&) { return 1.0; }).value, 1.7, 1e-12);
}

TEST(Quadrature, GaussLegendreExactForDegreeTwoNMinusOne) {
    const int n = 7;
    const Rule1D r = gauss_legendre(n, 0.0, 2.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
        double s = 0;
        for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        EXPECT_NEAR(s, std::pow(2.0, k + 1) / (k + 1), 1e-12 * std::pow(2.0, k + 1)) << "degree " << k;
    }
}

TEST(Quadrature, DivergentIntegrandIsReported) {
    const ChartManifold M = make_round_sphere(2);
    // far too oscillatory for the default grid
    auto f = [](const Vec& p) { return std::sin(401 * p[0]) / std::sin(p[0]); };
    EXPECT_THROW(integrate(M, f, 1e-10), QuadratureDivergence);
}

TEST(Bundle, SasakiMatrixIsSymmetricPositiveDefinite) {
    const ChartManifold M = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(M);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0, 4);
    for (const Vec& p : interior_points(M, 20, 15)) {
        Vec q(6);
        Vec v = oracle::random_vec(rng, 3);
        v *= U(rng) / std::sqrt(v.dot(metric_at(M, p) * v));
        q << p, v;
        const Mat G = TM.metric_eval(q);
        EXPECT_LE((G - G.transpose()).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::SelfAdjointEigenSolver<Mat> es(G);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
}

TEST(Bundle, ZeroSectionIsBlockDiagonal) {
    const ChartManifold M = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(M);
    Vec p(3), q(6);
    p << 0.5, 1.0, 2.0;
    q << p, Vec::Zero(3);
    const Mat G = TM.metric_eval(q), g = M.metric_eval(p);
    EXPECT_LE((G.topLeftCorner(3, 3) - g).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((G.bottomRightCorner(3, 3) - g).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(G.topRightCorner(3, 3).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bundle, HorizontalAndVerticalLiftsAreIsometric) {
    const ChartManifold M = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(M);
    std::mt19937_64 rng(32);
    for (const Vec& p : interior_points(M, 10, 16)) {
        const BundlePoint b{p, oracle::random_vec(rng, 3)};
        Vec q(6);
        q << b.base, b.fiber;
        const Mat G = TM.metric_eval(q), g = M.metric_eval(p);
        const Vec X = oracle::random_vec(rng, 3), Y = oracle::random_vec(rng, 3);
        const Vec Xh = raw_from_split(M, b, horizontal_lift(X)), Yh = raw_from_split(M, b, horizontal_lift(Y));
        const Vec Xv = raw_from_split(M, b, vertical_lift(X)), Yv = raw_from_split(M, b, vertical_lift(Y));
        EXPECT_NEAR(Xh.dot(G * Yh), X.dot(g * Y), 1e-10);
        EXPECT_NEAR(Xv.dot(G * Yv), X.dot(g * Y), 1e-10);
        EXPECT_NEAR(Xh.dot(G * Yv), 0.0, 1e-10);
        EXPECT_NEAR(sasaki_inner(g, horizontal_lift(X), vertical_lift(Y)), 0.0, 1e-14);
    }
}

TEST(Bundle, SplitDecompositionRoundTrips) {
    const ChartManifold M = make_round_sphere(3);
    std::mt19937_64 rng(33);
    for (const Vec& p : interior_points(M, 10, 17)) {
        const BundlePoint b{p, oracle::random_vec(rng, 3)};
        const Vec X = oracle::random_vec(rng, 3), Y = oracle::random_vec(rng, 3);
        const Vec raw = raw_from_split(M, b, {X, Y});
        // X^hor = (X, −Γ X v), X^ver = (0, X)
        const Tensor3 G = christoffel_at(M, p);
        Vec expect(6);
        expect.head(3) = X;
        for (int i = 0; i < 3; ++i) {
            double s = 0;
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) s += X[j] * G(i, j, l) * b.fiber[l];
            expect[3 + i] = Y[i] - s;
        }
        EXPECT_LE((raw - expect).cwiseAbs().maxCoeff(), 1e-12);
        const SplitVector back = split_from_raw(M, b, raw);
        EXPECT_LE((back.hor - X).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((back.ver - Y).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Bundle, ZeroSectionHorizontalCurvatureEqualsBase) {
    const ChartManifold M = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(M);
    Vec p(3);
    p << 0.6, 0.4, 1.9;
    const BundlePoint b{p, Vec::Zero(3)};
    Vec q(6);
    q << p, Vec::Zero(3);
    Vec X(3), Y(3);
    X << 1, 0, 0;
    Y << 0, 0.3, 1;
    const double K = sectional_curvature(TM, q, raw_from_split(M, b, horizontal_lift(X)),
                                         raw_from_split(M, b, horizontal_lift(Y)));
    EXPECT_NEAR(K, sectional_curvature(M, p, X, Y), 1e-6);
}

TEST(Bundle, FlatBaseGivesFlatBundle) {
    const ChartManifold TM = bundle_chart(flat_chart(2));
    Vec q(4);
    q << 0.2, 0.7, 1.5, -0.4;
    EXPECT_LE(max_abs(riemann_at(TM, q)), 1e-12);
}
