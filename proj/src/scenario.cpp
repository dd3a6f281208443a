#include "vfc/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "vfc/catalog.hpp"
#include "vfc/errors.hpp"

namespace vfc {

double default_tolerance() {
    if (const char* env = std::getenv("VFC_TOLERANCE")) {
        char* end = nullptr;
        const double t = std::strtod(env, &end);
        if (end != env && *end == '\0' && t > 0) return t;
    }
    return 1e-6;
}

namespace {

using nlohmann::json;

class Reader {
public:
    Reader(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
        if (!j_.is_object()) fail(ptr_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!ok.count(it.key())) fail(ptr_ + "/" + it.key(), "unknown key");
    }

    bool has(const char* key) const { return j_.contains(key); }

    template <class T>
    void get(const char* key, T& out) const {
        if (!j_.contains(key)) return;
        const std::string p = ptr_ + "/" + key;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            fail(p, e.what());
        }
    }

    Reader child(const char* key) const { return Reader(j_.at(key), ptr_ + "/" + key); }
    const std::string& pointer() const { return ptr_; }

    [[noreturn]] static void fail(const std::string& ptr, const std::string& what) {
        throw ParseError((ptr.empty() ? std::string("/") : ptr) + ": " + what);
    }

private:
    const json& j_;
    std::string ptr_;
};

void one_of(const std::string& ptr, const std::string& v, std::initializer_list<const char*> options) {
    for (const char* o : options)
        if (v == o) return;
    Reader::fail(ptr, "unsupported value '" + v + "'");
}

ManifoldSpec read_manifold(const Reader& r) {
    ManifoldSpec m;
    const_cast<Reader&>(r).allow({"kind", "dim", "radius", "k", "l", "r", "s", "surface", "radius_max", "tau"});
    r.get("kind", m.kind);
    one_of(r.pointer() + "/kind", m.kind, {"sphere", "product", "surface", "torus"});
    r.get("dim", m.dim);
    r.get("radius", m.radius);
    r.get("k", m.k);
    r.get("l", m.l);
    r.get("r", m.r);
    r.get("s", m.s);
    r.get("surface", m.surface);
    one_of(r.pointer() + "/surface", m.surface, {"spherical", "flat", "hyperbolic"});
    r.get("radius_max", m.radius_max);
    r.get("tau", m.tau);
    return m;
}

FieldSpec read_field(const Reader& r) {
    FieldSpec f;
    const_cast<Reader&>(r).allow({"kind", "t", "coeffs", "seed", "scale", "a", "b", "components", "normalize"});
    r.get("kind", f.kind);
    one_of(r.pointer() + "/kind", f.kind,
           {"hopf", "projected_hopf", "ambient_quadratic", "product", "e_theta", "e_r", "constant", "zero"});
    r.get("t", f.t);
    r.get("coeffs", f.coeffs);
    r.get("seed", f.seed);
    r.get("scale", f.scale);
    r.get("a", f.a);
    r.get("b", f.b);
    r.get("components", f.components);
    r.get("normalize", f.normalize);
    return f;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    Reader r(j, "");
    r.allow({"task", "manifold", "field", "grid", "tolerance", "samples", "seed", "futaki", "optimizer", "suite",
             "expect"});
    Scenario s;
    s.tolerance = default_tolerance();
    if (!r.has("task")) Reader::fail("/task", "missing");
    r.get("task", s.task);
    one_of("/task", s.task, {"verify", "residual", "functionals", "futaki", "optimize", "reproduce"});
    if (r.has("manifold")) s.manifold = read_manifold(r.child("manifold"));
    if (r.has("field")) s.field = read_field(r.child("field"));
    if (r.has("grid")) {
        Reader g = r.child("grid");
        g.allow({"nodes", "refine"});
        g.get("nodes", s.grid.nodes);
        g.get("refine", s.grid.refine);
    }
    r.get("tolerance", s.tolerance);
    if (!(s.tolerance > 0)) Reader::fail("/tolerance", "must be positive");
    r.get("samples", s.samples);
    r.get("seed", s.seed);
    if (r.has("futaki")) {
        Reader f = r.child("futaki");
        f.allow({"w", "b", "nodes"});
        f.get("w", s.futaki.w);
        f.get("b", s.futaki.b);
        f.get("nodes", s.futaki.nodes);
    }
    if (r.has("optimizer")) {
        Reader o = r.child("optimizer");
        o.allow({"shape", "max_iters", "tol", "initial_step", "perturbation", "seed"});
        o.get("shape", s.optimizer.shape);
        o.get("max_iters", s.optimizer.max_iters);
        o.get("tol", s.optimizer.tol);
        o.get("initial_step", s.optimizer.initial_step);
        o.get("perturbation", s.optimizer.perturbation);
        o.get("seed", s.optimizer.seed);
    }
    r.get("suite", s.suite);
    if (r.has("expect")) {
        s.expect = j.at("expect");
        if (!s.expect.is_object()) Reader::fail("/expect", "expected an object");
        for (auto it = s.expect.begin(); it != s.expect.end(); ++it) {
            one_of("/expect/" + it.key(), it.key(), {"mu", "S", "Theta", "Psi", "Pi", "W", "D"});
            if (!it.value().is_number()) Reader::fail("/expect/" + it.key(), "expected a number");
        }
    }
    const bool needs_geometry = s.task == "verify" || s.task == "residual" || s.task == "functionals";
    if (needs_geometry && !s.manifold) Reader::fail("/manifold", "required for task '" + s.task + "'");
    if (needs_geometry && !s.field) Reader::fail("/field", "required for task '" + s.task + "'");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read scenario '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

nlohmann::json to_json(const Scenario& s) {
    json j;
    j["task"] = s.task;
    if (s.manifold) {
        const ManifoldSpec& m = *s.manifold;
        j["manifold"] = {{"kind", m.kind}, {"dim", m.dim}, {"radius", m.radius}, {"k", m.k}, {"l", m.l},
                         {"r", m.r}, {"s", m.s}, {"surface", m.surface}, {"radius_max", m.radius_max},
                         {"tau", m.tau}};
    }
    if (s.field) {
        const FieldSpec& f = *s.field;
        j["field"] = {{"kind", f.kind}, {"t", f.t}, {"coeffs", f.coeffs}, {"seed", f.seed}, {"scale", f.scale},
                      {"a", f.a}, {"b", f.b}, {"components", f.components}, {"normalize", f.normalize}};
    }
    j["grid"] = {{"nodes", s.grid.nodes}, {"refine", s.grid.refine}};
    j["tolerance"] = s.tolerance;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    j["futaki"] = {{"w", s.futaki.w}, {"b", s.futaki.b}, {"nodes", s.futaki.nodes}};
    const OptimizerSpec& o = s.optimizer;
    j["optimizer"] = {{"shape", o.shape}, {"max_iters", o.max_iters}, {"tol", o.tol},
                      {"initial_step", o.initial_step}, {"perturbation", o.perturbation}, {"seed", o.seed}};
    j["suite"] = s.suite;
    if (!s.expect.empty()) j["expect"] = s.expect;
    return j;
}

namespace {

SurfaceKind surface_kind(const std::string& s) {
    if (s == "flat") return SurfaceKind::Flat;
    if (s == "hyperbolic") return SurfaceKind::Hyperbolic;
    return SurfaceKind::Spherical;
}

}  // namespace

ChartManifold build_manifold(const ManifoldSpec& m) {
    if (m.kind == "sphere") return make_round_sphere(m.dim, m.radius);
    if (m.kind == "product") return product_spheres(m.k, m.l, m.r, m.s);
    if (m.kind == "surface") return uniformized_surface(surface_kind(m.surface), m.radius_max).M;
    if (m.kind == "torus") return flat_torus({m.tau[0], m.tau[1]});
    throw ParseError("unknown manifold kind '" + m.kind + "'");
}

SectionField build_field(const FieldSpec& f, const ManifoldSpec& ms, const ChartManifold& M) {
    SectionField v;
    if (f.kind == "hopf") {
        v = hopf_field(M, 1.0, f.coeffs);
    } else if (f.kind == "projected_hopf") {
        v = projected_hopf(M);
    } else if (f.kind == "ambient_quadratic") {
        v = ambient_field(M, random_ambient_quadratic(f.seed, f.scale), "q" + std::to_string(f.seed));
    } else if (f.kind == "product") {
        v = product_field(M, f.a, f.b);
    } else if (f.kind == "e_theta" || f.kind == "e_r") {
        if (ms.kind != "surface") throw ParseError("/field/kind: " + f.kind + " needs a surface manifold");
        const UniformizedSurface s = uniformized_surface(surface_kind(ms.surface), ms.radius_max);
        v = f.kind == "e_theta" ? s.e_theta : s.e_r;
    } else if (f.kind == "constant") {
        if (static_cast<int>(f.components.size()) != M.dim)
            throw ParseError("/field/components: expected " + std::to_string(M.dim) + " entries");
        v = constant_field(M.dim, Eigen::Map<const Vec>(f.components.data(), M.dim));
    } else if (f.kind == "zero") {
        v = zero_field(M.dim);
    } else {
        throw ParseError("/field/kind: unknown field kind '" + f.kind + "'");
    }
    if (f.normalize) v = normalized(M, v);
    if (f.t != 1.0) v = scaled(v, f.t);
    return v;
}

}  // namespace vfc
