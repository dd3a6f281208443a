#include "vfc/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "vfc/bundle.hpp"
#include "vfc/catalog.hpp"
#include "vfc/embedding.hpp"
#include "vfc/errors.hpp"
#include "vfc/functionals.hpp"
#include "vfc/geometry.hpp"
#include "vfc/minimality.hpp"
#include "vfc/optimizer.hpp"
#include "vfc/submanifold.hpp"
#include "vfc/weighted.hpp"
#include "vfc/wirtinger.hpp"

namespace vfc {

bool SuiteResult::passed() const {
    if (!error.empty()) return false;
    for (const Check& c : checks)
        if (c.gating && !c.pass()) return false;
    return true;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Sink {
    std::vector<Check>& checks;
    nlohmann::json& data;

    Check& add(std::string name, double value, double expected, double tol, Compare cmp,
               std::string basis = "closed_form") {
        checks.push_back(make_check(std::move(name), value, expected, tol, cmp, std::move(basis)));
        return checks.back();
    }
    // max |·| ≤ tol
    Check& bound(std::string name, double worst, double tol, std::string basis = "closed_form") {
        return add(std::move(name), worst, 0.0, tol, Compare::AtMost, std::move(basis));
    }
};

std::string sphere_name(int d) { return "S^" + std::to_string(d); }

// Uniform samples in the chart box, keeping a margin from non-periodic boundaries and skipping
// excluded points and points rejected by `keep`.
std::vector<Vec> sample_points(const ChartManifold& M, int count, std::uint64_t seed,
                               const std::function<bool(const Vec&)>& keep = {}) {
    std::mt19937_64 rng(seed);
    std::vector<Vec> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000 * count) throw SingularChartPoint(M.name + ": could not sample admissible points");
        Vec p(M.dim);
        for (int k = 0; k < M.dim; ++k) {
            const Axis& a = M.axes[k];
            const double margin = a.periodic ? 0.0 : 0.02 * (a.hi - a.lo);
            std::uniform_real_distribution<double> U(a.lo + margin, a.hi - margin);
            p[k] = U(rng);
        }
        if (is_excluded(M, p)) continue;
        if (keep && !keep(p)) continue;
        out.push_back(p);
    }
    return out;
}

double max_abs(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

// ---- Hopf fields on odd spheres ----------------------------------------------------------------

void hopf_minimality(Sink& s, int d) {
    const int n = (d - 1) / 2;
    const ChartManifold S = make_round_sphere(d);
    const SectionField v = hopf_field(S);
    double res = 0, lam_est = -n, lam_closed = -n;
    for (const Vec& p : sample_points(S, 100, 11 + d)) {
        const ResidualReport r = minimal_unit_residual(S, v, p);
        res = std::max(res, r.residual_norm);
        if (std::abs(r.lambda_est + n) > std::abs(lam_est + n)) lam_est = r.lambda_est;
        if (std::abs(r.lambda_closed + n) > std::abs(lam_closed + n)) lam_closed = r.lambda_closed;
    }
    const std::string tag = sphere_name(d) + " Hopf";
    s.bound(tag + ": max minimal-unit residual", res, 1e-6);
    s.add(tag + ": <L, v> farthest from -n", lam_est, -n, 1e-6, Compare::AbsDiff);
    s.add(tag + ": -sum c_i^2 lambda_i^2 farthest from -n", lam_closed, -n, 1e-6, Compare::AbsDiff);
}

void hopf_volume(Sink& s, int d) {
    const int n = (d - 1) / 2;
    const ChartManifold S = make_round_sphere(d);
    const SectionField v = hopf_field(S);
    GridOptions grid;
    grid.nodes = d == 3 ? std::vector<int>{16, 16, 16} : std::vector<int>{12, 12, 4, 4, 4};
    const Integral mu = integrate(S, [&](const Vec& p) { return volume_density(S, v, p); }, 1e-8, grid);
    double fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    const double vol = 2 * std::pow(kPi, n + 1) / fact;
    const std::string tag = sphere_name(d) + " Hopf";
    s.add(tag + ": mu(v_H) vs 2^n vol(S^{2n+1})", mu.value, std::pow(2.0, n) * vol, 1e-6 * std::pow(2.0, n) * vol,
          Compare::AbsDiff);
    if (d == 3) s.add(tag + ": mu(v_H) vs 4 pi^2", mu.value, 4 * kPi * kPi, 1e-6 * 4 * kPi * kPi, Compare::AbsDiff);
    s.data[tag + " volume"] = {{"mu", mu.value}, {"err", mu.err}, {"base_volume", vol}};
}

// Sectional curvatures of the graph's tangent planes, taken in the Sasaki metric of the bundle
// chart on the lifted unit-mode eigenframe.
struct GraphCurvatures {
    Mat K;          // K(i, j), i ≠ j
    Mat J;          // <Ĉ ê_i, ê_j> in orthonormal coordinates
    Vec lambda_sq;
    double sigma_K = 0;
    double H_sq_generic = 0;
    double H_sq_closed = 0;
};

GraphCurvatures graph_curvatures(const ChartManifold& M, const ChartManifold& B, const SectionField& v, const Vec& p) {
    const int m = M.dim;
    const FieldGeometry fg = field_geometry(M, v, p, true);
    const PointFrame fr = eigenframe_from(fg, true);
    const SubmanifoldGeometry sg = submanifold_geometry(B, graph_immersion(M, v), p);
    const PointGeometry ag = point_geometry(B, sg.point, true);
    const BundlePoint q{p, fg.jet.v};
    std::vector<Vec> raw;
    for (int i = 0; i < m; ++i) raw.push_back(raw_from_split(M, q, fr.lifted[i]));
    GraphCurvatures gc;
    gc.K = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) gc.K(i, j) = gc.K(j, i) = sectional_curvature(ag.riemann, ag.g, raw[i], raw[j]);
    const Mat Binv = orthonormal_basis(fg.geo.g).inverse();
    const Mat U = Binv * fr.e;
    gc.J = U.transpose() * (Binv * fg.Dv * orthonormal_basis(fg.geo.g)) * U;
    gc.lambda_sq = fr.lambda_sq;
    gc.sigma_K = sg.sigma_K;
    gc.H_sq_generic = sg.H_sq;
    gc.H_sq_closed = mean_curvature_from(fg, eigenframe_from(fg, false)).H_sq;
    return gc;
}

void scaled_hopf(Sink& s, int d) {
    const int n = (d - 1) / 2;
    const ChartManifold S = make_round_sphere(d);
    const ChartManifold B = bundle_chart(S);
    const std::vector<Vec> pts = sample_points(S, 100, 31 + d);
    for (double t : {0.5, 1.0, 2.0}) {
        const SectionField v = scaled(hopf_field(S), t);
        const double t2 = t * t, q = 1 + t2;
        const double H_published = t2 * n * n;
        const double H_corrected = 4.0 * n * n * t2 / (q * q);
        const double K0j = (1 - 0.75 * t2 + 0.25 * t2 * t2) / q;
        const double SK_published = n * (4 * n + 2 + 5 * t2 - 2 * t2 * t2 + t2 * t2 * t2) / (q * q);
        const double SK_corrected = 4.0 * n * K0j + (2.0 * n * (2 * n - 1) + 6.0 * n * t2) / (q * q);
        double dH = 0, dH_corr = 0, dK0 = 0, dKij = 0, dKij_corr = 0, dSK = 0, dSK_corr = 0;
        double H_seen = 0, SK_seen = 0;
        for (const Vec& p : pts) {
            const GraphCurvatures gc = graph_curvatures(S, B, v, p);
            H_seen = gc.H_sq_generic;
            SK_seen = gc.sigma_K;
            dH = std::max(dH, max_abs(gc.H_sq_closed - H_published, gc.H_sq_generic - H_published));
            dH_corr = std::max(dH_corr, max_abs(gc.H_sq_closed - H_corrected, gc.H_sq_generic - H_corrected));
            for (int j = 1; j < d; ++j) dK0 = std::max(dK0, std::abs(gc.K(0, j) - K0j));
            for (int i = 1; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    const double J2 = gc.J(i, j) * gc.J(i, j) / t2;
                    dKij = std::max(dKij, std::abs(gc.K(i, j) - (1 + 2 * t2 * J2) / (q * q)));
                    dKij_corr = std::max(dKij_corr, std::abs(gc.K(i, j) - (1 + 3 * t2 * J2) / (q * q)));
                }
            dSK = std::max(dSK, std::abs(gc.sigma_K - SK_published));
            dSK_corr = std::max(dSK_corr, std::abs(gc.sigma_K - SK_corrected));
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s t=%.1f", sphere_name(d).c_str(), t);
        const std::string tag = buf;
        s.bound(tag + ": |H|^2 vs t^2 n^2", dH, 1e-6);
        s.bound(tag + ": K(e_0, e_j) vs (1 - 3t^2/4 + t^4/4)/(1+t^2)", dK0, 1e-6);
        s.bound(tag + ": K(e_i, e_j) vs (1 + 2t^2<Je_i,e_j>^2)/(1+t^2)^2", dKij, 1e-6);
        s.bound(tag + ": sum K vs n(4n+2+5t^2-2t^4+t^6)/(1+t^2)^2", dSK, 1e-6);
        Check& c1 = s.bound(tag + ": |H|^2 vs 4n^2t^2/(1+t^2)^2", dH_corr, 1e-6);
        c1.gating = false;
        c1.note = "rederived closed form";
        Check& c2 = s.bound(tag + ": K(e_i, e_j) vs (1 + 3t^2<Je_i,e_j>^2)/(1+t^2)^2", dKij_corr, 1e-6);
        c2.gating = false;
        c2.note = "rederived closed form";
        Check& c3 = s.bound(tag + ": sum K vs rederived closed form", dSK_corr, 1e-6);
        c3.gating = false;
        c3.note = "4n K_0j + (2n(2n-1) + 6n t^2)/(1+t^2)^2";
        s.data[tag] = {{"H_sq", H_seen},          {"H_sq_published", H_published}, {"H_sq_rederived", H_corrected},
                       {"sigma_K", SK_seen},      {"sigma_K_published", SK_published},
                       {"sigma_K_rederived", SK_corrected}};
    }
}

void canonical_hopf(Sink& s) {
    const ChartManifold S = make_round_sphere(3);
    GridOptions grid;
    grid.nodes = {8, 12, 12};
    for (double t : {0.5, 1.0, 2.0}) {
        const DensityTest dt = canonical_density_test(S, scaled(hopf_field(S), t), 1e-5, grid);
        char buf[64];
        std::snprintf(buf, sizeof buf, "S^3 t=%.1f Hopf: density deviation", t);
        s.bound(buf, dt.max_deviation, 1e-5);
    }
    const DensityTest z = canonical_density_test(S, zero_field(3), 1e-5, grid);
    s.bound("S^3 zero section: density deviation", z.max_deviation, 1e-5);
}

void structure(Sink& s, int d) {
    const ChartManifold S = make_round_sphere(d);
    const SectionField v = hopf_field(S);
    double kill = 0, geo = 0;
    size_t used = 0;
    for (const Vec& p : sample_points(S, 100, 11 + d)) {
        if (minimal_unit_residual(S, v, p).residual_norm > 1e-6) continue;
        kill = std::max(kill, killing_residual(S, v, p));
        geo = std::max(geo, geodesic_flow_residual(S, v, p));
        ++used;
    }
    const std::string tag = sphere_name(d) + " Hopf";
    s.bound(tag + ": |L_v g| at minimal nodes", kill, 1e-6);
    s.bound(tag + ": |grad_v v| at minimal nodes", geo, 1e-6);
    s.data[tag + " structure nodes"] = used;
}

void nijenhuis(Sink& s) {
    const ChartManifold S = make_round_sphere(3);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> N01;
    std::vector<std::array<double, 3>> coeffs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int k = 0; k < 3; ++k) {
        std::array<double, 3> c{N01(rng), N01(rng), N01(rng)};
        const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        for (double& x : c) x /= r;
        coeffs.push_back(c);
    }
    double worst = 0, complex_defect = 0;
    for (const auto& c : coeffs) {
        const SectionField v = hopf_field(S, 1.0, c);
        for (const Vec& p : sample_points(S, 20, 43)) {
            const NijenhuisReport r = nijenhuis_check(S, v, p);
            worst = std::max(worst, r.nijenhuis);
            complex_defect = std::max(complex_defect, r.complex_defect);
        }
    }
    s.bound("S^3 v_H^{a,b,c}: Nijenhuis residual", worst, 1e-6);
    s.bound("S^3 v_H^{a,b,c}: |I^2 X + X|", complex_defect, 1e-6);
}

// ---- criteria ---------------------------------------------------------------------------------

void c1(Sink& s) {
    hopf_minimality(s, 3);
    hopf_minimality(s, 5);
}

void c2(Sink& s) {
    hopf_volume(s, 3);
    hopf_volume(s, 5);
}

void c3(Sink& s) {
    scaled_hopf(s, 3);
    scaled_hopf(s, 5);
}

void projected_density(Sink& s) {
    const ChartManifold S = make_round_sphere(2);
    GridOptions grid;
    grid.nodes = {16, 32};
    const DensityTest dt = canonical_density_test(S, normalized(S, projected_hopf(S)), 1e-5, grid);
    s.add("S^2 normalized projected field: density deviation", dt.max_deviation, 1e-2, 0.0, Compare::AtLeast);
}

void c4(Sink& s) {
    canonical_hopf(s);
    projected_density(s);
}

// Frame layout of the normalized projected field in unit mode: 0 = v, 1..2n-2 = the J-invariant
// horizontal directions, 2n-1 = e_r.
void singular_sphere(Sink& s, int d, bool gating) {
    const int n = d / 2;
    const ChartManifold S = make_round_sphere(d);
    const ChartManifold B = bundle_chart(S);
    const SectionField v = normalized(S, projected_hopf(S));
    const auto keep = [&](const Vec& p) { return std::abs(std::cos(p[0])) <= 0.95 && !is_masked(v, p); };
    const std::vector<Vec> pts = sample_points(S, gating ? 100 : 30, 53 + d, keep);
    const std::string tag = sphere_name(d) + " normalized projected field";
    const auto finish = [&](Check& c) -> Check& {
        if (!gating) {
            c.gating = false;
            c.note = "n > 1 extension";
        }
        return c;
    };

    double res = 0, dlam = 0;
    for (const Vec& p : pts) {
        const double x2 = std::cos(p[0]) * std::cos(p[0]);
        const double lam = -(x2 + 2.0 * (n - 1) / (2 - x2));
        const ResidualReport r = minimal_unit_residual(S, v, p);
        res = std::max(res, r.residual_norm);
        dlam = std::max(dlam, max_abs(r.lambda_est - lam, r.lambda_closed - lam));
    }
    finish(s.bound(tag + ": max minimal-unit residual (|x| <= 0.95)", res, 1e-5));
    finish(s.bound(tag + ": lambda vs -(x^2 + 2(n-1)/(2-x^2))", dlam, 1e-5));

    for (double t : {0.5, 1.0, 1.5}) {
        const SectionField tv = scaled(v, t);
        const double t2 = t * t;
        double dH = 0, dK0r = 0, dK0j = 0, dKij = 0, dKir = 0, minK = HUGE_VAL;
        for (const Vec& p : pts) {
            const double x2 = std::cos(p[0]) * std::cos(p[0]);
            const double y = 1 - x2;
            const double H = t2 * std::pow(x2 / (1 + (t2 - 1) * x2) + 2.0 * (n - 1) / (2 - x2), 2);
            const double K0r = y / (1 + (t2 - 1) * x2) * (1 - 0.75 * t2 + x2 / y * 0.25 * t2 * t2);
            const double K0j = y / (1 + (t2 - 1) * x2) * y / (y + t2) * (1 - 0.75 * t2 / y + 0.25 * t2 * t2 / (y * y));
            const double Kij = std::pow(y / (y + t2), 2) * (1 + 2 * t2 / y);
            const double Kir = y / (y + t2);
            const GraphCurvatures gc = graph_curvatures(S, B, tv, p);
            const int r = d - 1;
            dH = std::max(dH, max_abs(gc.H_sq_generic - H, gc.H_sq_closed - H));
            dK0r = std::max(dK0r, std::abs(gc.K(0, r) - K0r));
            for (int j = 1; j < r; ++j) {
                dK0j = std::max(dK0j, std::abs(gc.K(0, j) - K0j));
                dKir = std::max(dKir, std::abs(gc.K(j, r) - Kir));
                for (int i = j + 1; i < r; ++i) dKij = std::max(dKij, std::abs(gc.K(i, j) - Kij));
            }
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) minK = std::min(minK, gc.K(i, j));
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s t=%.1f", tag.c_str(), t);
        const std::string tt = buf;
        finish(s.bound(tt + ": |H|^2 vs t^2(x^2/(1+(t^2-1)x^2) + 2(n-1)/(2-x^2))^2", dH, 1e-5));
        finish(s.bound(tt + ": K(e_0, e_r)", dK0r, 1e-5));
        if (n > 1) {
            finish(s.bound(tt + ": K(e_0, e_j)", dK0j, 1e-5));
            finish(s.bound(tt + ": K(e_i, e_j) for a J-pair", dKij, 1e-5));
            finish(s.bound(tt + ": K(e_i, e_r)", dKir, 1e-5));
        }
        if (t == 1.0) finish(s.add(tt + ": min sectional curvature > 0", minK, 0.0, 0.0, Compare::AtLeast));
        s.data[tt + " min K"] = minK;
    }
    if (n == 1)
        s.data[tag + " note"] = "no frame indices between e_0 and e_r when n = 1: K(e_0,e_j), K(e_i,e_j), "
                                "K(e_i,e_r) have no instances";
}

void c5(Sink& s) {
    singular_sphere(s, 2, true);
    singular_sphere(s, 4, false);
}

void c6(Sink& s) {
    struct Case {
        int k, l;
        double r;
        bool minimal;
    };
    const double h = std::sqrt(0.5);
    for (const Case& c : {Case{1, 1, h, true}, Case{3, 3, h, true}, Case{3, 3, 0.6, false}}) {
        const double rs = std::sqrt(1 - c.r * c.r);
        const ChartManifold P = product_spheres(c.k, c.l, c.r, rs);
        const SectionField v = product_field(P, h, h);
        double res = 0;
        for (const Vec& p : sample_points(P, 100, 61 + c.k)) res = std::max(res, minimal_unit_residual(P, v, p).residual_norm);
        char buf[96];
        std::snprintf(buf, sizeof buf, "S^%d(%.3g) x S^%d(%.3g), a=b=1/sqrt2: max residual", c.k, c.r, c.l, rs);
        if (c.minimal)
            s.bound(buf, res, 1e-6);
        else
            s.add(buf, res, 1e-2, 0.0, Compare::AtLeast);
    }
}

void c7(Sink& s) {
    const std::pair<SurfaceKind, const char*> kinds[] = {
        {SurfaceKind::Spherical, "spherical"}, {SurfaceKind::Flat, "flat"}, {SurfaceKind::Hyperbolic, "hyperbolic"}};
    for (const auto& [kind, label] : kinds) {
        const UniformizedSurface U = uniformized_surface(kind);
        for (const auto& [field, fname] : {std::pair{U.e_theta, "e_theta"}, std::pair{U.e_r, "e_r"}}) {
            const SectionField v = normalized(U.M, field);
            double res = 0;
            const auto keep = [&](const Vec& p) { return !is_masked(v, p); };
            for (const Vec& p : sample_points(U.M, 100, 71, keep))
                res = std::max(res, minimal_unit_residual(U.M, v, p).residual_norm);
            s.bound(std::string(label) + " surface, normalized " + fname + ": max residual off the mask", res, 1e-6);
        }
    }
}

std::vector<std::pair<std::string, SectionField>> random_s3_fields(const ChartManifold& S, int count, double scale) {
    std::vector<std::pair<std::string, SectionField>> out;
    for (int k = 0; k < count; ++k) {
        const std::uint64_t seed = 101 + k;
        out.emplace_back("random quadratic #" + std::to_string(k + 1),
                         ambient_field(S, random_ambient_quadratic(seed, scale), "q" + std::to_string(seed)));
    }
    return out;
}

void c8(Sink& s) {
    const ChartManifold S = make_round_sphere(3);
    std::vector<std::pair<std::string, SectionField>> fields{{"Hopf", hopf_field(S)},
                                                             {"Hopf t=0.5", scaled(hopf_field(S), 0.5)},
                                                             {"Hopf t=2", scaled(hopf_field(S), 2.0)}};
    for (auto& f : random_s3_fields(S, 5, 0.5)) fields.push_back(f);
    for (const auto& [name, v] : fields) {
        double worst = 0;
        for (const Vec& p : sample_points(S, 30, 81)) worst = std::max(worst, std::abs(extrinsic_at(S, v, p, true).gauss_residual));
        s.bound("S^3 " + name + ": |s - sum K - |H|^2 + |alpha|^2|", worst, 1e-4, "structural");
    }
}

void c9(Sink& s) {
    struct Entry {
        std::string name;
        ChartManifold M;
        SectionField v;
    };
    std::vector<Entry> entries;
    const ChartManifold S2 = make_round_sphere(2), S3 = make_round_sphere(3), S4 = make_round_sphere(4),
                        S5 = make_round_sphere(5);
    entries.push_back({"S^3 Hopf", S3, hopf_field(S3)});
    entries.push_back({"S^3 v_H^{0.6,0,0.8} t=0.5", S3, hopf_field(S3, 0.5, {0.6, 0, 0.8})});
    entries.push_back({"S^5 Hopf t=2", S5, hopf_field(S5, 2.0)});
    entries.push_back({"S^2 projected", S2, projected_hopf(S2)});
    entries.push_back({"S^2 normalized projected", S2, normalized(S2, projected_hopf(S2))});
    entries.push_back({"S^2 normalized projected t=0.5", S2, scaled(normalized(S2, projected_hopf(S2)), 0.5)});
    entries.push_back({"S^4 normalized projected", S4, normalized(S4, projected_hopf(S4))});
    for (auto& [name, v] : random_s3_fields(S3, 2, 0.5)) entries.push_back({"S^3 " + name, S3, v});
    entries.push_back({"S^3 zero section", S3, zero_field(3)});
    const double h = std::sqrt(0.5);
    const ChartManifold P11 = product_spheres(1, 1, h, h), P33 = product_spheres(3, 3, 0.6, 0.8);
    entries.push_back({"S^1 x S^1 product field", P11, product_field(P11, h, h)});
    entries.push_back({"S^3(0.6) x S^3(0.8) product field", P33, product_field(P33, h, h)});
    for (SurfaceKind k : {SurfaceKind::Spherical, SurfaceKind::Flat, SurfaceKind::Hyperbolic}) {
        const UniformizedSurface U = uniformized_surface(k);
        const std::string label = k == SurfaceKind::Spherical ? "spherical" : k == SurfaceKind::Flat ? "flat" : "hyperbolic";
        entries.push_back({label + " e_theta", U.M, normalized(U.M, U.e_theta)});
        entries.push_back({label + " e_r", U.M, normalized(U.M, U.e_r)});
    }
    const ChartManifold T = flat_torus({0.3, 1.1});
    Vec c(2);
    c << 0.4, -1.3;
    entries.push_back({"flat torus constant field", T, constant_field(2, c)});

    for (const Entry& e : entries) {
        const ChartManifold B = bundle_chart(e.M);
        const int count = e.M.dim > 4 ? 10 : 20;
        double worst = 0;
        const auto keep = [&](const Vec& p) { return !is_masked(e.v, p); };
        for (const Vec& p : sample_points(e.M, count, 91, keep)) {
            const double generic = submanifold_geometry(B, graph_immersion(e.M, e.v), p).H_sq;
            const double closed = mean_curvature_tm(e.M, e.v, p).H_sq;
            worst = std::max(worst, std::abs(generic - closed));
        }
        s.bound(e.name + ": |H|^2 bundle-chart vs frame formula", worst, 1e-4, "oracle");
    }
}

void c10(Sink& s) {
    structure(s, 3);
    structure(s, 5);
    nijenhuis(s);
}

WeightVector random_weights(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> W(0.5, 2.5), Bd(-1.0, 1.0);
    WeightVector out;
    for (int i = 0; i <= n; ++i) {
        out.w.push_back(W(rng));
        out.b.push_back(Bd(rng));
    }
    return out;
}

void c11(Sink& s) {
    std::mt19937_64 rng(111);
    for (int n : {1, 2}) {
        for (int trial = 0; trial < 2; ++trial) {
            const WeightVector W = random_weights(rng, n);
            const double closed = futaki_character(W), integral = futaki_integral(W);
            s.bound("n=" + std::to_string(n) + " random weights #" + std::to_string(trial + 1) +
                        ": |closed - integral| / |integral|",
                    std::abs(closed - integral) / std::abs(integral), 1e-4, "oracle");
        }
        for (double c : {1.0, 2.0}) {
            WeightVector W = random_weights(rng, n);
            W.w.assign(n + 1, c);
            char buf[64];
            std::snprintf(buf, sizeof buf, "n=%d w=%g(1,...,1): |F|", n, c);
            s.bound(buf, std::abs(futaki_character(W)), 1e-12);
        }
        WeightVector A = random_weights(rng, n), Bw = A;
        const WeightVector other = random_weights(rng, n);
        Bw.b = other.b;
        WeightVector C = A;
        const double k = 0.7;
        for (int i = 0; i <= n; ++i) C.b[i] = A.b[i] + k * Bw.b[i];
        s.bound("n=" + std::to_string(n) + ": |F(b1 + k b2) - F(b1) - k F(b2)|",
                std::abs(futaki_character(C) - futaki_character(A) - k * futaki_character(Bw)), 1e-12, "structural");
    }
}

void c12(Sink& s) {
    const ChartManifold S = make_round_sphere(3);
    GridOptions grid;
    grid.nodes = {16, 24, 24};
    std::vector<std::pair<std::string, SectionField>> fields;
    for (int k = 0; k < 5; ++k) {
        const std::uint64_t seed = 121 + k;
        const SectionField q = ambient_field(S, random_ambient_quadratic(seed, 0.08 + 0.04 * k), "q" + std::to_string(seed));
        fields.emplace_back("random unit field #" + std::to_string(k + 1),
                            normalized(S, linear_combination(hopf_field(S, 1, {0.6, 0.8, 0}), 1, q, 1)));
    }
    fields.emplace_back("Hopf v_H^{0,0,1}", hopf_field(S, 1, {0, 0, 1}));
    fields.emplace_back("Hopf v_H^{0.48,0.6,0.64}", hopf_field(S, 1, {0.48, 0.6, 0.64}));
    for (const auto& [name, u] : fields) {
        const MinimalUnitContent r = minimal_unit_content(S, u, grid);
        const double err = r.mu_u.err + r.mu_content.err;
        s.add(name + ": max det", r.max_det, 1.0, 1e-9, Compare::AtMost);
        s.add(name + ": mu(v_H(u)) <= mu(u)", r.mu_content.value, r.mu_u.value, err, Compare::AtMost);
        if (name.rfind("Hopf", 0) == 0)
            s.add(name + ": mu(u) = mu(v_H(u))", r.mu_u.value, r.mu_content.value, err + 1e-12 * r.mu_u.value,
                  Compare::AbsDiff);
        s.data[name] = {{"mu_u", r.mu_u.value},          {"mu_content", r.mu_content.value},
                        {"min_det", r.min_det},          {"max_det", r.max_det},
                        {"equality_nodes", r.equality_nodes}, {"coincidence_nodes", r.coincidence_nodes},
                        {"mismatched_nodes", r.mismatched_nodes}, {"nodes", r.nodes}};
    }
}

void c13(Sink& s) {
    const ChartManifold S = make_round_sphere(3);
    const double target = 4 * kPi * kPi;
    GridField gf = make_grid_field(S, {24, 24, 24});
    assign(gf, hopf_field(S));
    s.bound("S^3 24^3 Hopf: gradient sup-norm", sup_norm(gradient(gf)), 5e-3, "oracle");
    Check& c = s.add("S^3 24^3 Hopf: objective vs 4 pi^2", objective(gf), target, 1e-4, Compare::AbsDiff);
    c.gating = false;

    perturb(gf, ambient_field(S, random_ambient_quadratic(131, 1.0), "q131"), 0.1);
    const OptTrajectory tr = optimize(gf);
    const double start = tr.iterates.front().objective, end = tr.iterates.back().objective;
    bool monotone = true;
    for (size_t i = 1; i < tr.iterates.size(); ++i) monotone = monotone && tr.iterates[i].objective <= tr.iterates[i - 1].objective;
    s.add("perturbed start lies above 4 pi^2", start, target, 0.0, Compare::AtLeast, "structural");
    s.add("objective non-increasing along the trajectory", monotone ? 1.0 : 0.0, 1.0, 0.0, Compare::AbsDiff, "structural");
    s.bound("final |objective / 4 pi^2 - 1|", std::abs(end / target - 1), 0.02);
    s.add("iterations used", tr.iterations, 500, 0.0, Compare::AtMost, "structural");
    s.data["optimizer"] = {{"start", start},
                           {"end", end},
                           {"start_gap", start / target - 1},
                           {"end_gap", end / target - 1},
                           {"iterations", tr.iterations},
                           {"final_grad_norm", tr.iterates.back().grad_norm},
                           {"reason", tr.reason}};
}

void c14(Sink& s) {
    const ChartManifold S = make_round_sphere(2);
    FunctionalOptions o;
    o.grid.nodes = {16, 32};
    o.tol = 1e-3;
    std::mt19937_64 rng(141);
    std::uniform_real_distribution<double> U(-1.0, 1.0), T(0.2, 0.8);
    for (double amp : {0.8, 1.3}) {
        SectionField v = scaled(projected_hopf(S), amp);
        v.zero_distance = nullptr;  // the unnormalized field is smooth through its zeros
        const FunctionalReport base = total_functionals(S, v, o);
        const double S0 = base.Theta.value + base.Psi.value - base.Pi.value;
        for (int k = 0; k < 3; ++k) {
            Vec c(3);
            c << U(rng), U(rng), U(rng);
            const double t = T(rng);
            const ConformalValues cv = conformal_eval_direct(S, v, ambient_linear_function(S, c), t, o);
            char buf[64];
            std::snprintf(buf, sizeof buf, "S^2 %.1f projected, deformation #%d", amp, k + 1);
            const std::string tag = buf;
            s.add(tag + ": W", cv.W.value, base.W.value, 1e-6, Compare::AbsDiff, "oracle");
            s.add(tag + ": D", cv.D.value, base.D.value, 1e-6, Compare::AbsDiff, "oracle");
            s.add(tag + ": S", cv.S->value, S0, 1e-6, Compare::AbsDiff, "oracle");
        }
    }
}

using Body = void (*)(Sink&);
const Body kBodies[kCriteria] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14};

const char* kTitles[kCriteria] = {
    "Hopf minimality on S^3 and S^5",
    "Hopf volume law",
    "Scaled Hopf extrinsic curvature",
    "Canonical-cycle density tests",
    "Singular projected field on S^2",
    "Products of spheres",
    "Uniformized surfaces",
    "Gauss identity",
    "Mean curvature cross-validation",
    "Killing, geodesic and CR structure",
    "Sasaki-Futaki character",
    "Wirtinger volume comparison",
    "Volume optimizer",
    "Conformal invariance for surfaces",
};

SuiteResult run_body(const std::string& name, const std::string& title, const std::function<void(Sink&)>& body) {
    SuiteResult r;
    r.name = name;
    r.title = title;
    Sink sink{r.checks, r.data};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(sink);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

std::string criterion_title(int n) {
    if (n < 1 || n > kCriteria) throw ParseError("no criterion " + std::to_string(n));
    return kTitles[n - 1];
}

SuiteResult run_criterion(int n) {
    return run_body("criterion-" + std::to_string(n), criterion_title(n), kBodies[n - 1]);
}

namespace {

const std::map<std::string, int>& named_criteria() {
    static const std::map<std::string, int> m{{"singular-s2", 5}, {"products", 6},      {"surfaces", 7},
                                              {"gauss", 8},       {"cross-validation", 9}, {"structure", 10},
                                              {"futaki", 11},     {"wirtinger", 12},   {"optimizer", 13},
                                              {"conformal", 14}};
    return m;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out{"all", "hopf-s3", "hopf-s5"};
    for (const auto& [name, n] : named_criteria()) out.push_back(name);
    for (int n = 1; n <= kCriteria; ++n) out.push_back("criterion-" + std::to_string(n));
    return out;
}

std::vector<SuiteResult> run_suite(const std::string& name) {
    std::vector<SuiteResult> out;
    if (name == "all") {
        for (int n = 1; n <= kCriteria; ++n) out.push_back(run_criterion(n));
        return out;
    }
    if (name == "hopf-s3" || name == "hopf-s5") {
        const int d = name == "hopf-s3" ? 3 : 5;
        out.push_back(run_body(name + " minimality", "Hopf minimality", [d](Sink& s) { hopf_minimality(s, d); }));
        out.push_back(run_body(name + " volume", "Hopf volume law", [d](Sink& s) { hopf_volume(s, d); }));
        out.push_back(run_body(name + " scaled", "Scaled Hopf extrinsic curvature", [d](Sink& s) { scaled_hopf(s, d); }));
        out.push_back(run_body(name + " structure", "Killing and geodesic structure", [d](Sink& s) {
            structure(s, d);
            if (d == 3) nijenhuis(s);
        }));
        if (d == 3) out.push_back(run_body(name + " canonical", "Canonical-cycle density", canonical_hopf));
        return out;
    }
    if (name.rfind("criterion-", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(name.substr(10));
        } catch (const std::exception&) {
            throw ParseError("unknown suite '" + name + "'");
        }
        if (n < 1 || n > kCriteria) throw ParseError("unknown suite '" + name + "'");
        out.push_back(run_criterion(n));
        return out;
    }
    const auto it = named_criteria().find(name);
    if (it == named_criteria().end()) throw ParseError("unknown suite '" + name + "'");
    out.push_back(run_criterion(it->second));
    return out;
}

nlohmann::json to_json(const SuiteResult& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["title"] = r.title;
    j["passed"] = r.passed();
    j["checks"] = nlohmann::json::array();
    for (const Check& c : r.checks) j["checks"].push_back(to_json(c));
    if (!r.data.empty()) j["data"] = r.data;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

Report suite_report(const std::vector<SuiteResult>& results) {
    Report rep;
    rep.task = "reproduce";
    rep.data["suites"] = nlohmann::json::array();
    for (const SuiteResult& r : results) {
        for (Check c : r.checks) {
            c.name = r.name + " | " + c.name;
            rep.checks.push_back(std::move(c));
        }
        if (!r.error.empty()) rep.error += (rep.error.empty() ? "" : "; ") + r.name + ": " + r.error;
        nlohmann::json sj = to_json(r);
        sj.erase("checks");
        rep.data["suites"].push_back(sj);
    }
    return rep;
}

}  // namespace vfc
