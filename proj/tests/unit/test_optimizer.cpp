#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vfc/catalog.hpp"
#include "vfc/errors.hpp"
#include "vfc/optimizer.hpp"

using namespace vfc;
using oracle::kPi;

namespace {

const double kHopfVolume = 4 * kPi * kPi;

// Random per-node directions with the component along the field removed.
Mat tangent_directions(const GridField& gf, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0, 1);
    Mat d(gf.values.rows(), gf.values.cols());
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index a = 0; a < d.cols(); ++a) d(i, a) = N(rng);
        const Eigen::RowVectorXd v = gf.values.row(i);
        d.row(i) -= d.row(i).dot(v) * v;
    }
    return d;
}

double objective_along(GridField gf, const Mat& d, double h) {
    gf.values += h * d;
    project(gf);
    return objective(gf);
}

GridField hopf_grid(std::vector<int> shape) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, shape);
    assign(gf, hopf_field(S3));
    return gf;
}

}  // namespace

TEST(GridField, ProjectionIsUnitAndIdempotent) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {6, 8, 8});
    assign(gf, ambient_field(S3, random_ambient_quadratic(100, 1.0), "q"));
    for (Eigen::Index i = 0; i < gf.values.rows(); ++i) EXPECT_NEAR(gf.values.row(i).norm(), 1.0, 1e-12);
    const Mat once = gf.values;
    project(gf);
    EXPECT_LE((gf.values - once).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GridField, ChartValuesRoundTrip) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {6, 8, 8});
    const SectionField v = hopf_field(S3);
    assign(gf, v);
    const Mat c = chart_values(gf);
    for (size_t i = 0; i < gf.nodes.size(); ++i) EXPECT_LE((c.row(i).transpose() - v.eval(gf.nodes[i])).norm(), 1e-12);
}

TEST(GridField, RejectsNonDiagonalMetric) {
    EXPECT_THROW(make_grid_field(flat_torus({0.4, 1.0}), {8, 8}), DimensionUnsupported);
}

TEST(GridField, ZeroPerturbationThrows) {
    GridField gf = hopf_grid({4, 6, 6});
    EXPECT_THROW(perturb(gf, zero_field(3), 0.1), ZeroContent);
}

TEST(Objective, HopfSamplesGiveHopfVolume) {
    EXPECT_NEAR(objective(hopf_grid({12, 12, 12})), kHopfVolume, 1e-4);
}

TEST(Objective, ConstantFieldOnFlatTorus) {
    const ChartManifold T = flat_torus({0.0, 0.7});
    GridField gf = make_grid_field(T, {8, 8});
    Vec c(2);
    c << 0.6, 0.8 / 0.7;  // unit under diag(1, 0.49)
    assign(gf, constant_field(2, c));
    EXPECT_NEAR(objective(gf), 0.7, 1e-12);
    EXPECT_LE(sup_norm(gradient(gf)), 1e-12);
}

TEST(Objective, PerturbedHopfLiesAbove) {
    const ChartManifold S3 = make_round_sphere(3);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GridField gf = hopf_grid({8, 10, 10});
        perturb(gf, ambient_field(S3, random_ambient_quadratic(seed, 1.0), "q"), 0.02);
        EXPECT_GT(objective(gf), kHopfVolume) << "seed " << seed;
    }
}

TEST(Gradient, MatchesDirectionalFiniteDifferences) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {8, 10, 10});
    assign(gf, ambient_field(S3, random_ambient_quadratic(101, 0.5), "q"));
    const Mat grad = gradient(gf);
    std::mt19937_64 rng(102);
    for (int k = 0; k < 5; ++k) {
        const Mat d = tangent_directions(gf, rng);
        const double h = 1e-5;
        const double fd = (objective_along(gf, d, h) - objective_along(gf, d, -h)) / (2 * h);
        const double an = weighted_inner(gf, grad, d);
        EXPECT_NEAR(an, fd, 1e-3 * std::abs(fd)) << "direction " << k;
    }
}

TEST(Gradient, TangentToTheField) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {6, 8, 8});
    assign(gf, ambient_field(S3, random_ambient_quadratic(103, 0.5), "q"));
    const Mat grad = gradient(gf);
    for (Eigen::Index i = 0; i < grad.rows(); ++i)
        EXPECT_NEAR(grad.row(i).dot(gf.values.row(i)), 0.0, 1e-10 * std::max(1.0, grad.row(i).norm()));
}

TEST(Gradient, HopfIsCriticalAndRandomIsNot) {
    EXPECT_LE(sup_norm(gradient(hopf_grid({8, 10, 10}))), 5e-3);
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {8, 10, 10});
    assign(gf, ambient_field(S3, random_ambient_quadratic(104, 1.0), "q"));
    EXPECT_GT(sup_norm(gradient(gf)), 0.1);
}

TEST(Optimize, StartingAtHopfStopsImmediately) {
    GridField gf = hopf_grid({8, 10, 10});
    const OptTrajectory tr = optimize(gf);
    EXPECT_EQ(tr.reason, "gradient_tolerance");
    EXPECT_EQ(tr.iterations, 0);
    EXPECT_NEAR(tr.iterates.front().objective, kHopfVolume, 1e-4);
}

TEST(Optimize, DescendsMonotonicallyFromPerturbedHopf) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = hopf_grid({8, 10, 10});
    perturb(gf, ambient_field(S3, random_ambient_quadratic(105, 1.0), "q"), 0.1);
    OptConfig cfg;
    cfg.max_iters = 40;
    const OptTrajectory tr = optimize(gf, cfg);
    ASSERT_GE(tr.iterates.size(), 2u);
    for (size_t i = 1; i < tr.iterates.size(); ++i) EXPECT_LE(tr.iterates[i].objective, tr.iterates[i - 1].objective);
    const double start = tr.iterates.front().objective, end = tr.iterates.back().objective;
    EXPECT_LT(end - kHopfVolume, 0.5 * (start - kHopfVolume));
    EXPECT_GE(end, kHopfVolume - 1e-4);
    for (Eigen::Index i = 0; i < gf.values.rows(); ++i) EXPECT_NEAR(gf.values.row(i).norm(), 1.0, 1e-12);
}

TEST(Optimize, ReportsIterationLimit) {
    const ChartManifold S3 = make_round_sphere(3);
    GridField gf = make_grid_field(S3, {6, 8, 8});
    assign(gf, ambient_field(S3, random_ambient_quadratic(106, 1.0), "q"));
    OptConfig cfg;
    cfg.max_iters = 3;
    const OptTrajectory tr = optimize(gf, cfg);
    EXPECT_EQ(tr.reason, "max_iterations");
    EXPECT_EQ(tr.iterations, 3);
    EXPECT_EQ(tr.iterates.size(), 4u);
}
