#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sampling.hpp"
#include "vfc/bundle.hpp"
#include "vfc/catalog.hpp"
#include "vfc/embedding.hpp"
#include "vfc/errors.hpp"
#include "vfc/minimality.hpp"
#include "vfc/submanifold.hpp"

using namespace vfc;
using testing_support::interior_points;

namespace {

Vec point3(double a, double b, double c) {
    Vec p(3);
    p << a, b, c;
    return p;
}

// Horizontal unit vector for a unit field v: any g-unit vector orthogonal to v.
Vec horizontal_unit(const Mat& g, const Vec& v, const Vec& seed) {
    Vec X = seed - inner(g, seed, v) / inner(g, v, v) * v;
    return X / norm(g, X);
}

double orthonormality_defect(const Mat& G) { return (G - Mat::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(CovariantDerivative, ConstantFieldOnFlatTorus) {
    const ChartManifold T = flat_torus();
    const SectionField c = constant_field(2, Vec::Constant(2, 0.7));
    const Vec p = Vec::Constant(2, 0.3);
    EXPECT_LE(covariant_derivative(T, c, p, Vec::Ones(2)).norm(), 1e-14);
    EXPECT_LE(second_covariant(T, c, p, Vec::Ones(2), Vec::Unit(2, 0)).norm(), 1e-14);
    EXPECT_LE(commutator_check(T, c, p, 0, 1), 1e-14);
}

TEST(CovariantDerivative, HopfFieldOnS3) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3);
    std::mt19937_64 rng(3);
    for (const Vec& p : interior_points(S3, 10, 41)) {
        const Mat g = metric_at(S3, p);
        const Vec vp = v.eval(p);
        const Vec X = horizontal_unit(g, vp, oracle::random_vec(rng, 3));
        EXPECT_NEAR(norm(g, covariant_derivative(S3, v, p, X)), 1.0, 1e-10);
        EXPECT_LE(norm(g, covariant_derivative(S3, v, p, vp)), 1e-10);
        EXPECT_LE(norm(g, second_covariant(S3, v, p, X, X) + vp), 1e-8);
        EXPECT_LE(norm(g, second_covariant(S3, v, p, vp, vp)), 1e-8);
    }
}

TEST(CovariantDerivative, LinearInDirectionAndTensorialHessian) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = ambient_field(S3, random_ambient_quadratic(5, 0.3), "random");
    const Vec p = point3(0.7, 1.1, 4.0);
    const Vec X = point3(0.3, -1.0, 0.2), Y = point3(1.0, 0.5, -0.7);
    const Vec dX = covariant_derivative(S3, v, p, X), dY = covariant_derivative(S3, v, p, Y);
    EXPECT_LE((covariant_derivative(S3, v, p, 2.0 * X - 3.0 * Y) - (2.0 * dX - 3.0 * dY)).norm(), 1e-10);
    const Vec H = second_covariant(S3, v, p, X, Y);
    EXPECT_LE((second_covariant(S3, v, p, 2.5 * X, -0.5 * Y) + 1.25 * H).norm(), 1e-10);
}

TEST(CommutatorCheck, CurvatureTermBalancesHessianSkew) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3);
    const SectionField w = ambient_field(S3, random_ambient_quadratic(6, 0.3), "random");
    for (const Vec& p : interior_points(S3, 5, 42))
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                EXPECT_LE(commutator_check(S3, v, p, j, k), 1e-6);
                EXPECT_LE(commutator_check(S3, w, p, j, k), 1e-6);
            }
    const UniformizedSurface S = uniformized_surface(SurfaceKind::Spherical);
    Vec q(2);
    q << oracle::kPi / 3, 1.0;
    EXPECT_LE(commutator_check(S.M, S.e_theta, q, 0, 1), 1e-6);
}

TEST(CommutatorCheck, FlippedCurvatureSignIsDetected) {
    // Using −R in place of R must leave a visible residual on a curved base.
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3);
    const Vec p = point3(0.6, 1.0, 2.0);
    const FieldGeometry fg = field_geometry(S3, v, p, true);
    const Vec lhs = hessian_apply(fg.hess, Vec::Unit(3, 1), Vec::Unit(3, 2)) -
                    hessian_apply(fg.hess, Vec::Unit(3, 2), Vec::Unit(3, 1));
    const Vec R = curvature_apply(fg.geo.riemann, Vec::Unit(3, 1), Vec::Unit(3, 2), fg.jet.v);
    EXPECT_LE(norm(fg.geo.g, lhs - R), 1e-8);
    EXPECT_GT(norm(fg.geo.g, lhs + R), 0.1);
}

TEST(ShapeOperator, ParallelFieldVanishes) {
    const Mat C = shape_operator(flat_torus(), constant_field(2, Vec::Ones(2)), Vec::Constant(2, 0.2));
    EXPECT_LE(C.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ShapeOperator, SymmetricPartIsLieDerivativeAndSkewPartIsExteriorDerivative) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = ambient_field(S3, random_ambient_quadratic(7, 0.4), "random");
    for (const Vec& p : interior_points(S3, 10, 43)) {
        const Mat C = shape_operator(S3, v, p);
        const Mat B = orthonormal_basis(metric_at(S3, p));
        const Mat L = B.transpose() * lie_derivative_metric(S3, v, p) * B;
        const Mat D = B.transpose() * exterior_derivative_dual(S3, v, p) * B;
        EXPECT_LE((C + C.transpose() - L).cwiseAbs().maxCoeff(), 1e-7);
        EXPECT_LE((C - C.transpose() + D).cwiseAbs().maxCoeff(), 1e-7);
    }
}

TEST(Eigenframe, HopfOnS3) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3);
    const Vec p = point3(0.5, 2.0, 1.0);
    const PointFrame e = eigenframe(S3, v, p, FrameMode::Eigen);
    EXPECT_NEAR(e.lambda_sq[0], 1.0, 1e-10);
    EXPECT_NEAR(e.lambda_sq[1], 1.0, 1e-10);
    EXPECT_NEAR(e.lambda_sq[2], 0.0, 1e-10);
    const PointFrame u = eigenframe(S3, v, p, FrameMode::Unit);
    EXPECT_NEAR(u.lambda_sq[0], 0.0, 1e-10);
    EXPECT_NEAR(u.c[0] * u.c[0], 1.0, 1e-10);
    EXPECT_NEAR(u.c[1] * u.c[1], 0.5, 1e-10);
    EXPECT_NEAR(u.c[2] * u.c[2], 0.5, 1e-10);
    EXPECT_LE((u.e.col(0) - v.eval(p)).norm(), 1e-12);
}

TEST(Eigenframe, AngularFieldOnS2) {
    const UniformizedSurface S = uniformized_surface(SurfaceKind::Spherical);
    const SectionField u = normalized(S.M, S.e_theta);
    const double r = oracle::kPi / 4;
    Vec p(2);
    p << r, 0.4;
    const PointFrame f = eigenframe(S.M, u, p, FrameMode::Eigen);
    const double cot2 = std::pow(std::cos(r) / std::sin(r), 2);
    EXPECT_NEAR(f.lambda_sq[0], cot2, 1e-10);
    EXPECT_NEAR(f.lambda_sq[1], 0.0, 1e-10);
}

TEST(Eigenframe, ZeroFieldInEigenMode) {
    const ChartManifold S3 = make_round_sphere(3);
    const PointFrame f = eigenframe(S3, zero_field(3), point3(0.5, 1.0, 1.0), FrameMode::Eigen);
    EXPECT_LE(f.lambda_sq.cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((f.c - Vec::Ones(3)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Eigenframe, UnitModeAtZeroThrows) {
    const ChartManifold S3 = make_round_sphere(3);
    EXPECT_THROW(eigenframe(S3, zero_field(3), point3(0.5, 1.0, 1.0), FrameMode::Unit), SingularFieldPoint);
}

TEST(Eigenframe, FrameInvariantsOnRandomFields) {
    const ChartManifold S3 = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(S3);
    for (unsigned seed : {1u, 2u, 3u}) {
        const SectionField raw = ambient_field(S3, random_ambient_quadratic(seed, 0.5), "random");
        for (const SectionField& v : {raw, normalized(S3, raw)}) {
            for (const Vec& p : interior_points(S3, 5, 44 + seed)) {
                const FieldGeometry fg = field_geometry(S3, v, p, false);
                const PointFrame f = eigenframe_from(fg, v.unit_flag);
                const Mat& g = fg.geo.g;
                EXPECT_LE(orthonormality_defect(f.e.transpose() * g * f.e), 1e-10);
                const BundlePoint b{p, fg.jet.v};
                Vec q(6);
                q << p, fg.jet.v;
                const Mat G = TM.metric_eval(q);
                Mat lifted(6, 3), normals(6, 3);
                for (int i = 0; i < 3; ++i) {
                    lifted.col(i) = raw_from_split(S3, b, f.lifted[i]);
                    normals.col(i) = raw_from_split(S3, b, f.normals[i]);
                }
                EXPECT_LE((normals.transpose() * G * lifted).cwiseAbs().maxCoeff(), 1e-8);
                const Mat B = orthonormal_basis(g);
                const Mat C = B.inverse() * fg.Dv * B;
                const Mat U = B.inverse() * f.e;
                // unit mode keeps e_0 = v, so <∇_v v, ∇_{e_i} v> survives off the diagonal
                const Mat gram = f.c.asDiagonal() * (Mat::Identity(3, 3) + U.transpose() * C.transpose() * C * U) *
                                 f.c.asDiagonal();
                EXPECT_LE((lifted.transpose() * G * lifted - gram).cwiseAbs().maxCoeff(), 1e-8);
                if (!v.unit_flag) {
                    EXPECT_LE(orthonormality_defect(lifted.transpose() * G * lifted), 1e-8);
                    for (int i = 0; i < 3; ++i)
                        EXPECT_LE((C.transpose() * C * U.col(i) - f.lambda_sq[i] * U.col(i)).norm(), 1e-8);
                }
            }
        }
    }
}

TEST(Eigenframe, UnitModeLiftIsOrthonormalForGeodesicFields) {
    const ChartManifold S3 = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(S3);
    const SectionField v = hopf_field(S3, 1.0, {0.6, 0.0, 0.8});
    for (const Vec& p : interior_points(S3, 5, 52)) {
        const PointFrame f = eigenframe(S3, v, p, FrameMode::Unit);
        const BundlePoint b{p, v.eval(p)};
        Vec q(6);
        q << p, b.fiber;
        Mat lifted(6, 3);
        for (int i = 0; i < 3; ++i) lifted.col(i) = raw_from_split(S3, b, f.lifted[i]);
        EXPECT_LE(orthonormality_defect(lifted.transpose() * TM.metric_eval(q) * lifted), 1e-8);
    }
}

TEST(Eigenframe, OperatorIndependentOfBasisInsideDegenerateEigenspace) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = hopf_field(S3);
    const Vec p = point3(0.8, 0.3, 2.5);
    const FieldGeometry fg = field_geometry(S3, v, p, true);
    PointFrame f = eigenframe_from(fg, false);
    const Vec L0 = minimality_operator_from(fg, f);
    for (double angle : {0.3, 1.2, 2.9}) {
        PointFrame r = f;
        const double c = std::cos(angle), s = std::sin(angle);
        r.e.col(0) = c * f.e.col(0) + s * f.e.col(1);
        r.e.col(1) = -s * f.e.col(0) + c * f.e.col(1);
        EXPECT_LE((minimality_operator_from(fg, r) - L0).norm(), 1e-8);
    }
}

TEST(InducedMetric, ZeroFieldGivesBaseMetric) {
    const ChartManifold S3 = make_round_sphere(3);
    const Vec p = point3(0.5, 1.0, 1.0);
    EXPECT_LE((induced_metric(S3, zero_field(3), p) - metric_at(S3, p)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(InducedMetric, DeterminantIsProductOfEigenvalueFactors) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = ambient_field(S3, random_ambient_quadratic(9, 0.6), "random");
    for (const Vec& p : interior_points(S3, 10, 45)) {
        const Mat h = induced_metric(S3, v, p);
        EXPECT_LE((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
        const PointFrame f = eigenframe(S3, v, p, FrameMode::Eigen);
        const double ratio = h.determinant() / metric_at(S3, p).determinant();
        const double prod = (1.0 + f.lambda_sq.array()).prod();
        EXPECT_NEAR(ratio, prod, 1e-8 * prod);
        EXPECT_NEAR(volume_density(S3, v, p), std::sqrt(ratio), 1e-8 * std::sqrt(ratio));
        EXPECT_GE(volume_density(S3, v, p), 1.0);
    }
}

TEST(VolumeDensity, CatalogValues) {
    EXPECT_NEAR(volume_density(flat_torus(), constant_field(2, Vec::Ones(2)), Vec::Constant(2, 0.4)), 1.0, 1e-14);
    const ChartManifold S3 = make_round_sphere(3);
    const ChartManifold S5 = make_round_sphere(5);
    for (const Vec& p : interior_points(S3, 5, 46)) {
        EXPECT_NEAR(volume_density(S3, hopf_field(S3), p), 2.0, 1e-10);
        for (double t : {0.3, 0.7, 1.5}) EXPECT_NEAR(volume_density(S3, hopf_field(S3, t), p), 1 + t * t, 1e-10);
    }
    for (const Vec& p : interior_points(S5, 5, 47)) EXPECT_NEAR(volume_density(S5, hopf_field(S5), p), 4.0, 1e-10);
}

TEST(VolumeDensity, MonotoneInScale) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField v = ambient_field(S3, random_ambient_quadratic(10, 0.5), "random");
    for (const Vec& p : interior_points(S3, 10, 48)) {
        double prev = volume_density(S3, scaled(v, 0.0), p);
        EXPECT_NEAR(prev, 1.0, 1e-14);
        for (double t = 0.25; t <= 3.0; t += 0.25) {
            const double d = volume_density(S3, scaled(v, t), p);
            EXPECT_GE(d, prev);
            prev = d;
        }
    }
}

TEST(SectionField, NormalizedIsUnit) {
    const ChartManifold S3 = make_round_sphere(3);
    const SectionField u = normalized(S3, ambient_field(S3, random_ambient_quadratic(11, 0.5), "random"));
    EXPECT_TRUE(u.unit_flag);
    for (const Vec& p : interior_points(S3, 20, 49)) EXPECT_NEAR(norm(metric_at(S3, p), u.eval(p)), 1.0, 1e-10);
    for (const Vec& p : interior_points(S3, 5, 50))
        EXPECT_NEAR(norm(metric_at(S3, p), hopf_field(S3, 0.4).eval(p)), 0.4, 1e-10);
}

TEST(SectionField, ProjectedHopfMaskCoversZeros) {
    const ChartManifold S2 = make_round_sphere(2);
    const SectionField v = projected_hopf(S2);
    Vec pole(2);
    pole << 1e-9, 1.0;
    EXPECT_TRUE(is_masked(v, pole));
    pole[0] = oracle::kPi - 1e-9;
    EXPECT_TRUE(is_masked(v, pole));
    EXPECT_THROW(field_value(v, pole), SingularFieldPoint);
    for (double rho = 0.05; rho < oracle::kPi; rho += 0.05) {
        Vec p(2);
        p << rho, 0.3;
        const double x = std::cos(rho);
        if (!is_masked(v, p)) EXPECT_NEAR(std::pow(norm(metric_at(S2, p), v.eval(p)), 2), 1 - x * x, 1e-12);
    }
}

TEST(Submanifold, ZeroSectionOfS3) {
    const ChartManifold S3 = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(S3);
    const SubmanifoldGeometry sg = submanifold_geometry(TM, graph_immersion(S3, zero_field(3)), point3(0.6, 1.0, 2.0));
    EXPECT_LE(sg.H_sq, 1e-16);
    EXPECT_NEAR(sg.sigma_K, oracle::sphere_scalar(3), 1e-6);
}

TEST(Submanifold, ScaledHopfGraphMeanCurvature) {
    const ChartManifold S3 = make_round_sphere(3);
    const ChartManifold TM = bundle_chart(S3);
    for (double t : {0.5, 1.0, 2.0}) {
        const SectionField v = hopf_field(S3, t);
        for (const Vec& p : interior_points(S3, 3, 51)) {
            const SubmanifoldGeometry sg = submanifold_geometry(TM, graph_immersion(S3, v), p);
            EXPECT_NEAR(sg.H_sq, oracle::scaled_hopf_H_sq(1, t), 1e-6) << "t=" << t;
            EXPECT_LE(sg.tangential_residual, 1e-7);
            EXPECT_NEAR(mean_curvature_tm(S3, v, p).H_sq, oracle::scaled_hopf_H_sq(1, t), 1e-8);
        }
    }
}

TEST(Submanifold, ConstantSectionOfFlatTorusIsTotallyGeodesic) {
    const ChartManifold T = flat_torus({0.2, 1.1});
    const SectionField c = constant_field(2, Vec::Constant(2, 0.5));
    const SubmanifoldGeometry sg = submanifold_geometry(bundle_chart(T), graph_immersion(T, c), Vec::Constant(2, 0.3));
    EXPECT_LE(sg.alpha_sq, 1e-14);
}

TEST(Submanifold, RankDeficientImmersionThrows) {
    const ChartManifold S3 = make_round_sphere(3);
    Immersion F;
    F.dim = 2;
    F.map = [](const Vec&) { return point3(0.5, 1.0, 1.0); };
    Vec p(2);
    p << 0.1, 0.2;
    EXPECT_THROW(submanifold_geometry(S3, F, p), RankDeficientImmersion);
}
