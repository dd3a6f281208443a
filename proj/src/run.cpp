#include "vfc/run.hpp"

#include <cmath>
#include <random>

#include "vfc/bundle.hpp"
#include "vfc/catalog.hpp"
#include "vfc/embedding.hpp"
#include "vfc/errors.hpp"
#include "vfc/functionals.hpp"
#include "vfc/geometry.hpp"
#include "vfc/minimality.hpp"
#include "vfc/optimizer.hpp"
#include "vfc/reproduce.hpp"
#include "vfc/submanifold.hpp"
#include "vfc/weighted.hpp"

namespace vfc {

int exit_code(const Report& r) { return r.passed() ? 0 : 1; }

namespace {

constexpr double kFourPiSq = 39.478417604357434;

std::vector<std::string> coordinate_header(int m) {
    std::vector<std::string> h;
    for (int k = 0; k < m; ++k) h.push_back("x" + std::to_string(k));
    return h;
}

std::vector<Vec> random_points(const ChartManifold& M, const SectionField& v, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 1000 * count; ++attempt) {
        Vec p(M.dim);
        for (int k = 0; k < M.dim; ++k) {
            const Axis& a = M.axes[k];
            const double margin = a.periodic ? 0.0 : 0.02 * (a.hi - a.lo);
            p[k] = std::uniform_real_distribution<double>(a.lo + margin, a.hi - margin)(rng);
        }
        if (!is_excluded(M, p) && !is_masked(v, p)) out.push_back(p);
    }
    return out;
}

void verify(const Scenario& s, Report& r, const RunOptions& opts) {
    const ChartManifold M = build_manifold(*s.manifold);
    const SectionField v = build_field(*s.field, *s.manifold, M);
    const ChartManifold B = bundle_chart(M);
    double compat = 0, sym = 0, comm = 0, dH = 0, gauss = 0;
    r.table.header = coordinate_header(M.dim);
    for (const char* h : {"compatibility", "riemann_symmetry", "ricci_commutation", "H_sq_bundle", "H_sq_frame",
                          "gauss_residual"})
        r.table.header.push_back(h);
    for (const Vec& p : random_points(M, v, s.samples, s.seed)) {
        const PointGeometry g = point_geometry(M, p, true);
        const RiemannSymmetryResiduals rs = riemann_symmetry_residuals(g.riemann, g.g);
        const double sy = std::max({rs.antisym_first, rs.antisym_second, rs.pair, rs.bianchi});
        const double mc = metric_compatibility_residual(M, p);
        double cm = 0;
        for (int j = 0; j < M.dim; ++j)
            for (int k = 0; k < M.dim; ++k) cm = std::max(cm, commutator_check(M, v, p, j, k));
        const double Hb = submanifold_geometry(B, graph_immersion(M, v), p).H_sq;
        const double Hf = mean_curvature_tm(M, v, p).H_sq;
        const double gr = extrinsic_at(M, v, p, true).gauss_residual;
        compat = std::max(compat, mc);
        sym = std::max(sym, sy);
        comm = std::max(comm, cm);
        dH = std::max(dH, std::abs(Hb - Hf));
        gauss = std::max(gauss, std::abs(gr));
        if (opts.table) {
            std::vector<double> row(p.data(), p.data() + p.size());
            for (double x : {mc, sy, cm, Hb, Hf, gr}) row.push_back(x);
            r.table.rows.push_back(std::move(row));
        }
    }
    const double t = s.tolerance;
    r.checks.push_back(make_check("metric compatibility of the connection", compat, 0, t, Compare::AtMost, "structural"));
    r.checks.push_back(make_check("Riemann tensor symmetries", sym, 0, t, Compare::AtMost, "structural"));
    r.checks.push_back(make_check("Ricci commutation identity for v", comm, 0, t, Compare::AtMost, "structural"));
    r.checks.push_back(make_check("|H|^2 bundle chart vs frame formula", dH, 0, 100 * t, Compare::AtMost, "oracle"));
    r.checks.push_back(make_check("Gauss identity", gauss, 0, 100 * t, Compare::AtMost, "structural"));
}

void residual(const Scenario& s, Report& r, const RunOptions& opts) {
    const ChartManifold M = build_manifold(*s.manifold);
    const SectionField v = build_field(*s.field, *s.manifold, M);
    const Grid g = make_grid(M, s.grid);
    r.table.header = coordinate_header(M.dim);
    for (const char* h : {"residual_norm", "lambda", "lambda_closed"}) r.table.header.push_back(h);
    double worst = 0;
    size_t used = 0;
    for (const Vec& p : g.nodes) {
        if (is_masked(v, p)) continue;
        const ResidualReport rr = minimal_unit_residual(M, v, p);
        worst = std::max(worst, rr.residual_norm);
        ++used;
        if (opts.table) {
            std::vector<double> row(p.data(), p.data() + p.size());
            row.push_back(rr.residual_norm);
            row.push_back(rr.lambda_est);
            row.push_back(rr.lambda_closed);
            r.table.rows.push_back(std::move(row));
        }
    }
    r.data["nodes"] = used;
    r.checks.push_back(make_check("max minimal-unit residual", worst, 0, s.tolerance, Compare::AtMost));
}

void functionals(const Scenario& s, Report& r, const RunOptions& opts) {
    const ChartManifold M = build_manifold(*s.manifold);
    const SectionField v = build_field(*s.field, *s.manifold, M);
    FunctionalOptions fo;
    fo.grid = s.grid;
    fo.tol = s.tolerance;
    const FunctionalReport f = total_functionals(M, v, fo);
    const auto put = [&](const std::string& k, const Integral& i) { r.data[k] = {{"value", i.value}, {"err", i.err}}; };
    put("mu", f.mu);
    put("S", f.S);
    put("Theta", f.Theta);
    put("Psi", f.Psi);
    put("Pi", f.Pi);
    put("W", f.W);
    put("D", f.D);
    if (f.W2) put("W2", *f.W2);
    if (f.D2) put("D2", *f.D2);
    r.data["epsilon"] = f.epsilon;
    r.data["nodes"] = f.nodes;
    for (auto it = s.expect.begin(); it != s.expect.end(); ++it) {
        const double value = r.data[it.key()]["value"].get<double>();
        r.checks.push_back(make_check(it.key(), value, it.value().get<double>(), s.tolerance, Compare::RelDiff));
    }
    if (!opts.table) return;
    r.table.header = coordinate_header(M.dim);
    for (const char* h : {"weight", "sigma_K", "H_sq", "alpha_sq", "density"}) r.table.header.push_back(h);
    const Grid g = make_grid(M, s.grid);
    for (size_t n = 0; n < g.nodes.size(); ++n) {
        const Vec& p = g.nodes[n];
        if (is_masked(v, p)) continue;
        const ExtrinsicSample e = extrinsic_at(M, v, p, false);
        std::vector<double> row(p.data(), p.data() + p.size());
        for (double x : {g.weight[n], e.sigma_K, e.H_sq, e.alpha_sq, e.density}) row.push_back(x);
        r.table.rows.push_back(std::move(row));
    }
}

void futaki(const Scenario& s, Report& r) {
    const WeightVector W{s.futaki.w, s.futaki.b};
    validate(W);
    const double closed = futaki_character(W);
    const WeightedInvariants inv = weighted_invariants(W);
    r.data["closed_form"] = closed;
    r.data["volume"] = inv.volume;
    r.data["s0"] = inv.s0;
    r.data["mean_transverse_scalar"] = inv.mean_transverse_scalar;
    bool equal = true;
    for (double w : W.w) equal = equal && w == W.w[0];
    if (equal) r.checks.push_back(make_check("F at equal weights", closed, 0, 1e-12, Compare::AbsDiff));
    std::vector<double> row = W.w;
    row.insert(row.end(), W.b.begin(), W.b.end());
    row.push_back(closed);
    if (W.n() <= 3) {
        const double integral = futaki_integral(W, s.futaki.nodes);
        r.data["integral"] = integral;
        row.push_back(integral);
        const double scale = std::abs(integral);
        Check c = make_check("closed form vs integral", closed, integral, 1e-4 * scale, Compare::AbsDiff, "oracle");
        if (scale == 0) c.tolerance = 1e-12;
        r.checks.push_back(c);
    }
    for (size_t i = 0; i < W.w.size(); ++i) r.table.header.push_back("w" + std::to_string(i));
    for (size_t i = 0; i < W.b.size(); ++i) r.table.header.push_back("b" + std::to_string(i));
    r.table.header.push_back("closed_form");
    if (W.n() <= 3) r.table.header.push_back("integral");
    r.table.rows.push_back(std::move(row));
}

void optimize_task(const Scenario& s, Report& r, const RunOptions& opts) {
    const ManifoldSpec ms = s.manifold ? *s.manifold : ManifoldSpec{};
    const ChartManifold M = build_manifold(ms);
    const FieldSpec fs = s.field ? *s.field : FieldSpec{};
    GridField gf = make_grid_field(M, s.optimizer.shape);
    assign(gf, build_field(fs, ms, M));
    if (s.optimizer.perturbation != 0) {
        if (!is_round_sphere(M) || sphere_dimension(M) != 3)
            throw NotApplicable("random perturbations are defined on S^3 only");
        perturb(gf, ambient_field(M, random_ambient_quadratic(s.optimizer.seed, 1.0), "delta"), s.optimizer.perturbation);
    }
    OptConfig cfg;
    cfg.max_iters = s.optimizer.max_iters;
    cfg.tol = s.optimizer.tol;
    cfg.initial_step = s.optimizer.initial_step;
    const OptTrajectory tr = optimize(gf, cfg);
    nlohmann::json traj = nlohmann::json::array();
    bool monotone = true;
    for (size_t i = 0; i < tr.iterates.size(); ++i) {
        const OptIterate& it = tr.iterates[i];
        traj.push_back({{"objective", it.objective}, {"grad_norm", it.grad_norm}, {"step", it.step}});
        if (i > 0) monotone = monotone && it.objective <= tr.iterates[i - 1].objective;
    }
    r.data["trajectory"] = traj;
    r.data["reason"] = tr.reason;
    r.data["iterations"] = tr.iterations;
    r.checks.push_back(
        make_check("objective non-increasing", monotone ? 1 : 0, 1, 0, Compare::AbsDiff, "structural"));
    if (is_round_sphere(M) && sphere_dimension(M) == 3 && sphere_radius(M) == 1.0) {
        Check c = make_check("final objective vs 4 pi^2", tr.iterates.back().objective, kFourPiSq, 0.02 * kFourPiSq, Compare::AbsDiff);
        r.checks.push_back(c);
    }
    if (!opts.table) return;
    r.table.header = coordinate_header(M.dim);
    for (int a = 0; a < M.dim; ++a) r.table.header.push_back("v" + std::to_string(a));
    const Mat cv = chart_values(gf);
    for (size_t n = 0; n < gf.nodes.size(); ++n) {
        std::vector<double> row(gf.nodes[n].data(), gf.nodes[n].data() + M.dim);
        for (int a = 0; a < M.dim; ++a) row.push_back(cv(n, a));
        r.table.rows.push_back(std::move(row));
    }
}

void reproduce(const Scenario& s, Report& r) {
    const Report rep = suite_report(run_suite(s.suite));
    r.checks = rep.checks;
    r.data = rep.data;
    r.error = rep.error;
    r.table.header = {"check", "value", "expected", "tolerance", "gating", "pass"};
    for (const Check& c : r.checks) {
        r.table.labels.push_back(c.name);
        r.table.rows.push_back({c.value, c.expected, c.tolerance, c.gating ? 1.0 : 0.0, c.pass() ? 1.0 : 0.0});
    }
}

}  // namespace

Report run_scenario(const Scenario& s, const RunOptions& opts) {
    Report r;
    r.task = s.task;
    try {
        if (s.task == "verify") {
            verify(s, r, opts);
        } else if (s.task == "residual") {
            residual(s, r, opts);
        } else if (s.task == "functionals") {
            functionals(s, r, opts);
        } else if (s.task == "futaki") {
            futaki(s, r);
        } else if (s.task == "optimize") {
            optimize_task(s, r, opts);
        } else if (s.task == "reproduce") {
            reproduce(s, r);
        } else {
            throw ParseError("/task: unsupported value '" + s.task + "'");
        }
    } catch (const ParseError&) {
        throw;
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

}  // namespace vfc
