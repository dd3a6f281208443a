#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sampling.hpp"
#include "vfc/catalog.hpp"
#include "vfc/embedding.hpp"
#include "vfc/functionals.hpp"

using namespace vfc;
using oracle::kPi;
using testing_support::interior_points;

namespace {

FunctionalOptions coarse(std::vector<int> nodes, bool intrinsic = false) {
    FunctionalOptions o;
    o.grid.nodes = std::move(nodes);
    o.intrinsic = intrinsic;
    o.tol = 1e-3;
    return o;
}

void expect_decomposition(const FunctionalReport& r) {
    const double S_err = 2 * (r.S.err + r.Theta.err + r.Psi.err + r.Pi.err) + 1e-10 * std::abs(r.S.value);
    EXPECT_NEAR(r.S.value, r.Theta.value + r.Psi.value - r.Pi.value, std::max(S_err, 1e-6));
    if (r.m >= 2) {
        EXPECT_NEAR(r.W.value - r.D.value, r.S.value, std::max(2 * (r.W.err + r.D.err + r.S.err), 1e-6));
    } else {
        EXPECT_DOUBLE_EQ(r.W.value, r.Psi.value);
        EXPECT_DOUBLE_EQ(r.D.value, r.Psi.value);
    }
}

}  // namespace

TEST(Extrinsic, ZeroSectionOfS3) {
    const ChartManifold S3 = make_round_sphere(3);
    for (const Vec& p : interior_points(S3, 3, 80)) {
        const ExtrinsicSample e = extrinsic_at(S3, zero_field(3), p);
        EXPECT_NEAR(e.sigma_K, 6.0, 1e-6);
        EXPECT_LE(e.H_sq, 1e-16);
        EXPECT_LE(std::abs(e.gauss_residual), 1e-4);
    }
}

TEST(Extrinsic, ScaledHopfMatchesRederivedCurvatures) {
    for (int n : {1, 2}) {
        const ChartManifold S = make_round_sphere(2 * n + 1);
        for (double t : {0.5, 1.0, 1.5}) {
            const SectionField v = hopf_field(S, t);
            for (const Vec& p : interior_points(S, 2, 81)) {
                const ExtrinsicSample e = extrinsic_at(S, v, p, n == 1);
                EXPECT_NEAR(e.sigma_K, oracle::scaled_hopf_sigma_K(n, t), 1e-6) << "n=" << n << " t=" << t;
                EXPECT_NEAR(e.H_sq, oracle::scaled_hopf_H_sq(n, t), 1e-6);
                if (n == 1) {
                    EXPECT_NEAR(e.s_induced, oracle::berger_scalar(t), 1e-6);
                    EXPECT_LE(std::abs(e.gauss_residual), 1e-4);
                }
            }
        }
    }
}

TEST(Extrinsic, GaussIdentityOnRandomFields) {
    const ChartManifold S3 = make_round_sphere(3);
    for (unsigned seed : {21u, 22u}) {
        const SectionField v = ambient_field(S3, random_ambient_quadratic(seed, 0.3), "random");
        for (const Vec& p : interior_points(S3, 3, 82, 0.2)) {
            const ExtrinsicSample e = extrinsic_at(S3, v, p);
            EXPECT_LE(std::abs(e.gauss_residual), 1e-4) << "seed " << seed;
        }
    }
}

TEST(TotalFunctionals, ZeroFieldOnS3) {
    const FunctionalReport r = total_functionals(make_round_sphere(3), zero_field(3), coarse({8, 8, 8}));
    EXPECT_NEAR(r.mu.value, 2 * kPi * kPi, 1e-8);
    EXPECT_NEAR(r.Psi.value, 0.0, 1e-12);
    EXPECT_NEAR(r.Theta.value, 6 * 2 * kPi * kPi, 1e-5);
    expect_decomposition(r);
}

TEST(TotalFunctionals, HopfOnS3) {
    const ChartManifold S3 = make_round_sphere(3);
    const FunctionalReport r = total_functionals(S3, hopf_field(S3), coarse({8, 8, 8}, true));
    EXPECT_NEAR(r.mu.value, 4 * kPi * kPi, 1e-4);
    EXPECT_NEAR(r.S.value, oracle::berger_scalar(1.0) * 4 * kPi * kPi, 1e-3);
    expect_decomposition(r);
}

TEST(TotalFunctionals, HopfVolumeOnS5) {
    // the full extrinsic sweep in the 10-dimensional bundle is slow; the volume alone is cheap
    const ChartManifold S5 = make_round_sphere(5);
    const SectionField v = hopf_field(S5);
    GridOptions g;
    g.nodes = {8, 8, 6, 6, 6};
    const Integral mu = integrate(S5, [&](const Vec& p) { return volume_density(S5, v, p); }, 1e-6, g);
    EXPECT_NEAR(mu.value, 4 * std::pow(kPi, 3), 1e-8);
}

TEST(TotalFunctionals, RandomFieldDecomposes) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = ambient_field(S3, random_ambient_quadratic(23, 0.1), "random");
    const FunctionalReport r = total_functionals(S3, v, coarse({10, 12, 12}, true));
    EXPECT_GT(r.mu.value, 2 * kPi * kPi);
    expect_decomposition(r);
}

TEST(TotalFunctionals, CurveCaseCollapsesToPsi) {
    const ChartManifold S1 = make_round_sphere(1);
    const FunctionalReport r = total_functionals(S1, hopf_field(S1, 0.5), coarse({32}));
    EXPECT_EQ(r.m, 1);
    expect_decomposition(r);
}

TEST(TotalFunctionals, SurfaceCaseCarriesSquaredFunctionals) {
    const UniformizedSurface S = uniformized_surface(SurfaceKind::Spherical);
    const FunctionalReport r = total_functionals(S.M, scaled(S.e_theta, 0.5), coarse({24, 32}));
    ASSERT_TRUE(r.W2.has_value());
    ASSERT_TRUE(r.D2.has_value());
    EXPECT_GE(r.W2->value, 0.0);
    expect_decomposition(r);
}

TEST(Conformal, ZeroFunctionChangesNothing) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3, 0.5);
    const BasicFunction u{[](const Vec&) { return 0.0; }, [](const Vec&) { return Vec::Zero(3); }};
    const FunctionalReport r = total_functionals(S3, v, coarse({8, 8, 8}));
    for (double t : {0.0, 0.4}) {
        const ConformalValues c = conformal_eval(S3, v, u, t, coarse({8, 8, 8}));
        EXPECT_NEAR(c.W.value, r.W.value, 1e-9 * std::abs(r.W.value));
        EXPECT_NEAR(c.D.value, r.D.value, 1e-9 * std::abs(r.D.value));
    }
}

TEST(Conformal, SurfaceTotalsAreScaleFree) {
    const ChartManifold S2 = make_round_sphere(2);
    const SectionField v = scaled(projected_hopf(S2), 0.8);
    Vec a = Vec::Zero(3);
    a[1] = 1.0;
    const BasicFunction u = ambient_linear_function(S2, a);
    const FunctionalOptions o = coarse({16, 32});
    const ConformalValues c0 = conformal_eval(S2, v, u, 0.0, o), c1 = conformal_eval(S2, v, u, 0.3, o);
    EXPECT_NEAR(c1.W.value, c0.W.value, 1e-6 * std::max(1.0, std::abs(c0.W.value)));
    EXPECT_NEAR(c1.D.value, c0.D.value, 1e-6 * std::max(1.0, std::abs(c0.D.value)));
    ASSERT_TRUE(c1.W2 && c0.W2);
    EXPECT_GT(std::abs(c1.W2->value - c0.W2->value), 1e-3);
}

TEST(Conformal, ThreeDimensionalMatchesRescaledAmbient) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3, 0.6);
    Vec a = Vec::Zero(4);
    a[0] = 1.0;
    const BasicFunction u = ambient_linear_function(S3, a);
    const FunctionalOptions o = coarse({10, 12, 12});
    const ConformalValues fast = conformal_eval(S3, v, u, 0.1, o);
    const ConformalValues direct = conformal_eval_direct(S3, v, u, 0.1, o);
    EXPECT_TRUE(std::isfinite(fast.W.value));
    EXPECT_NEAR(fast.W.value, direct.W.value, 1e-3 * std::abs(direct.W.value));
    EXPECT_NEAR(fast.D.value, direct.D.value, 1e-3 * std::abs(direct.D.value));
}

TEST(CanonicalDensity, ScaledHopfAndZeroSectionAreCanonical) {
    const ChartManifold S3 = make_round_sphere(3);
    GridOptions g;
    g.nodes = {6, 6, 6};
    EXPECT_LE(canonical_density_test(S3, hopf_field(S3, 0.7), 1e-5, g).max_deviation, 1e-5);
    const DensityTest z = canonical_density_test(S3, zero_field(3), 1e-8, g);
    EXPECT_LE(z.max_deviation, 1e-8);
    EXPECT_TRUE(z.canonical);
    EXPECT_NEAR(z.mean, 1.5 * 6, 1e-6);
}

TEST(CanonicalDensity, ProjectedHopfOnS2IsNot) {
    const ChartManifold S2 = make_round_sphere(2);
    GridOptions g;
    g.nodes = {16, 16};
    const DensityTest d = canonical_density_test(S2, scaled(normalized(S2, projected_hopf(S2)), 0.7), 1e-5, g);
    EXPECT_GT(d.max_deviation, 0.01);
    EXPECT_FALSE(d.canonical);
}

TEST(CurveCycle, ConstantAndOscillatingSections) {
    const CurveCycle flat = curve_cycle(3.0, [](double) { return 0.4; });
    EXPECT_TRUE(flat.geodesic);
    EXPECT_NEAR(flat.length, 3.0, 1e-12);
    const CurveCycle zero = curve_cycle(2 * kPi, [](double) { return 0.0; });
    EXPECT_TRUE(zero.geodesic);
    EXPECT_NEAR(zero.length, 2 * kPi, 1e-12);
    const double l = 2.0;
    const CurveCycle wave = curve_cycle(l, [l](double x) { return 0.1 * std::sin(2 * kPi * x / l); });
    EXPECT_FALSE(wave.geodesic);
    // peak curvature of 0.1 sin(πx) is 0.1 π² at the crests
    EXPECT_NEAR(wave.max_curvature, 0.1 * kPi * kPi, 1e-4);
    EXPECT_GT(wave.length, l);
}
