#include "vfc/field.hpp"

#include <cmath>
#include <sstream>

#include "vfc/errors.hpp"

namespace vfc {

bool is_masked(const SectionField& v, const Vec& p) {
    return v.zero_distance && v.zero_distance(p) < v.exclusion_radius;
}

Vec field_value(const SectionField& v, const Vec& p) {
    if (is_masked(v, p)) {
        std::ostringstream os;
        os << v.name << " within " << v.exclusion_radius << " of its zero set";
        throw SingularFieldPoint(os.str());
    }
    return v.eval(p);
}

FieldJet field_jet(const ChartManifold& M, const SectionField& v, const Vec& p) {
    if (is_masked(v, p)) field_value(v, p);
    const int m = v.dim;
    FieldJet out;
    if (v.jets) {
        const std::vector<Jet> j = v.jets(p);
        out.v = Vec(m);
        out.dv = Mat(m, m);
        out.d2v.assign(m, Mat(m, m));
        for (int i = 0; i < m; ++i) {
            out.v[i] = j[i].v;
            for (int k = 0; k < m; ++k) {
                out.dv(i, k) = j[i].g[k];
                for (int l = 0; l < m; ++l) out.d2v[i](k, l) = j[i].h[k][l];
            }
        }
        return out;
    }
    const double h = fd_step(M, p);
    out.v = v.eval(p);
    out.dv = Mat(m, m);
    out.d2v.assign(m, Mat(m, m));
    auto first = [&](const Vec& q, int k) -> Vec {
        return central_difference([&](const Vec& r) { return v.eval(r); }, q, k, h);
    };
    for (int k = 0; k < m; ++k) out.dv.col(k) = first(p, k);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            const Vec dkl = central_difference([&](const Vec& q) { return first(q, k); }, p, l, h);
            for (int i = 0; i < m; ++i) out.d2v[i](k, l) = dkl[i];
        }
    for (int i = 0; i < m; ++i) out.d2v[i] = 0.5 * (out.d2v[i] + out.d2v[i].transpose()).eval();
    return out;
}

SectionField scaled(const SectionField& v, double t) {
    SectionField out = v;
    out.name = v.name + "*t";
    out.unit_flag = false;
    const FieldFn e = v.eval;
    out.eval = [e, t](const Vec& x) { return Vec(t * e(x)); };
    if (v.jets) {
        const FieldJetFn j = v.jets;
        out.jets = [j, t](const Vec& x) {
            std::vector<Jet> r = j(x);
            for (auto& c : r) c = t * c;
            return r;
        };
    }
    return out;
}

SectionField linear_combination(const SectionField& a, double ca, const SectionField& b, double cb) {
    SectionField out;
    out.dim = a.dim;
    out.name = a.name + "+" + b.name;
    const FieldFn ea = a.eval, eb = b.eval;
    out.eval = [=](const Vec& x) { return Vec(ca * ea(x) + cb * eb(x)); };
    if (a.jets && b.jets) {
        const FieldJetFn ja = a.jets, jb = b.jets;
        out.jets = [=](const Vec& x) {
            std::vector<Jet> r = ja(x), s = jb(x);
            for (size_t i = 0; i < r.size(); ++i) r[i] = ca * r[i] + cb * s[i];
            return r;
        };
    }
    return out;
}

SectionField normalized(const ChartManifold& M, const SectionField& v) {
    SectionField out = v;
    out.name = v.name + "/|.|";
    out.unit_flag = true;
    const FieldFn e = v.eval;
    const MetricFn metric = M.metric_eval;
    const std::string name = out.name;
    out.eval = [e, metric, name](const Vec& x) {
        const Vec w = e(x);
        const double n2 = w.dot(metric(x) * w);
        if (!(n2 > 1e-16)) throw SingularFieldPoint(name + ": vanishing norm");
        return Vec(w / std::sqrt(n2));
    };
    if (v.jets && M.metric_jets) {
        const FieldJetFn j = v.jets;
        const MetricJetFn mj = M.metric_jets;
        const int m = v.dim;
        out.jets = [j, mj, m, name](const Vec& x) {
            std::vector<Jet> w = j(x);
            const std::vector<Jet> g = mj(x);
            Jet n2(0.0);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) n2 += g[a * m + b] * w[a] * w[b];
            if (!(n2.v > 1e-16)) throw SingularFieldPoint(name + ": vanishing norm");
            const Jet inv = 1.0 / sqrt(n2);
            for (auto& c : w) c = c * inv;
            return w;
        };
    } else {
        out.jets = nullptr;
    }
    return out;
}

SectionField zero_field(int m) {
    return make_analytic_field("zero", m, [m](const auto*, auto* out) {
        for (int i = 0; i < m; ++i) out[i] = 0.0;
    });
}

}  // namespace vfc
