#include "vfc/optimizer.hpp"

#include <cmath>
#include <sstream>

#include "vfc/errors.hpp"
#include "vfc/geometry.hpp"
#include "vfc/parallel.hpp"

namespace vfc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat fourier_diff(int n, double period) {
    Mat D = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const double a = kPi * (j - k) / n;
            const double sgn = ((j - k) % 2 == 0) ? 1.0 : -1.0;
            D(j, k) = (kPi / period) * sgn * (n % 2 == 0 ? 1.0 / std::tan(a) : 1.0 / std::sin(a));
        }
    return D;
}

Mat lagrange_diff(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> lam(n, 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j) lam[j] /= (x[j] - x[k]);
    Mat D = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            D(j, k) = (lam[k] / lam[j]) / (x[j] - x[k]);
            s += D(j, k);
        }
        D(j, j) = -s;
    }
    return D;
}

// out(n, a) = Σ_k D_b(i_n, i_k) in(k, a) along axis b lines (transpose when `adjoint`).
Mat apply_axis(const GridField& gf, int b, const Mat& in, bool adjoint) {
    const size_t N = gf.nodes.size();
    const int nb = gf.shape[b];
    const size_t st = gf.stride[b];
    const Mat& D = gf.diff[b];
    Mat out = Mat::Zero(N, in.cols());
    for (size_t base = 0; base < N; ++base) {
        if ((base / st) % nb != 0) continue;  // first node of its line
        for (int j = 0; j < nb; ++j) {
            const size_t row = base + j * st;
            for (int k = 0; k < nb; ++k) {
                const double d = adjoint ? D(k, j) : D(j, k);
                if (d == 0) continue;
                out.row(row) += d * in.row(base + k * st);
            }
        }
    }
    return out;
}

// Ĉ(a, b) = <e_a, ∇_{e_b} v> at node n from spectral derivatives.
Mat node_shape(const GridField& gf, const std::vector<Mat>& dw, size_t n) {
    const int m = gf.M.dim;
    Mat C(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double s = dw[b](n, a) / gf.scale(n, b);
            for (int c = 0; c < m; ++c) s += gf.values(n, c) * gf.omega[n](a, b, c);
            C(a, b) = s;
        }
    return C;
}

std::vector<Mat> derivatives(const GridField& gf) {
    std::vector<Mat> dw;
    for (int b = 0; b < gf.M.dim; ++b) dw.push_back(apply_axis(gf, b, gf.values, false));
    return dw;
}

}  // namespace

GridField make_grid_field(const ChartManifold& M, const std::vector<int>& shape) {
    const int m = M.dim;
    if (static_cast<int>(shape.size()) != m) throw DimensionUnsupported("grid shape does not match the chart");
    GridField gf;
    gf.M = M;
    gf.shape = shape;
    GridOptions o;
    o.nodes = shape;
    const Grid g = make_grid(M, o);
    size_t total = 1;
    for (int s : shape) total *= static_cast<size_t>(s);
    if (g.nodes.size() != total) throw SingularChartPoint("optimizer grid contains excluded nodes");
    gf.nodes = g.nodes;
    gf.weight = g.weight;
    gf.stride.assign(m, 1);
    for (int k = m - 2; k >= 0; --k) gf.stride[k] = gf.stride[k + 1] * shape[k + 1];
    for (int k = 0; k < m; ++k) {
        const Axis& a = M.axes[k];
        if (a.periodic) {
            gf.diff.push_back(fourier_diff(shape[k], a.hi - a.lo));
        } else {
            gf.diff.push_back(lagrange_diff(gauss_legendre(shape[k], a.lo, a.hi).nodes));
        }
    }
    gf.scale = Mat(total, m);
    gf.omega.assign(total, Tensor3(m));
    gf.values = Mat::Zero(total, m);
    parallel_for(total, [&](size_t n) {
        const Vec& p = gf.nodes[n];
        const Mat gm = metric_at(M, p);
        const double off = (gm - Mat(gm.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
        if (off > 1e-12 * gm.diagonal().cwiseAbs().maxCoeff())
            throw DimensionUnsupported(M.name + ": optimizer needs a diagonal metric");
        for (int a = 0; a < m; ++a) gf.scale(n, a) = std::sqrt(gm(a, a));
        const Tensor3 G = christoffel_at(M, p);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    gf.omega[n](a, b, c) =
                        a == c ? 0.0 : gf.scale(n, a) * G(a, b, c) / (gf.scale(n, b) * gf.scale(n, c));
    });
    return gf;
}

void assign(GridField& gf, const SectionField& v) {
    const int m = gf.M.dim;
    parallel_for(gf.nodes.size(), [&](size_t n) {
        const Vec x = field_value(v, gf.nodes[n]);
        for (int a = 0; a < m; ++a) gf.values(n, a) = gf.scale(n, a) * x[a];
    });
    if (gf.unit) project(gf);
}

void perturb(GridField& gf, const SectionField& delta, double eps) {
    const int m = gf.M.dim;
    Mat D(gf.nodes.size(), m);
    parallel_for(gf.nodes.size(), [&](size_t n) {
        const Vec x = field_value(delta, gf.nodes[n]);
        for (int a = 0; a < m; ++a) D(n, a) = gf.scale(n, a) * x[a];
    });
    double vol = 0;
    for (double w : gf.weight) vol += w;
    const double rms = std::sqrt(weighted_inner(gf, D, D) / vol);
    if (!(rms > 0)) throw ZeroContent("perturbation direction vanishes on the grid");
    gf.values += (eps / rms) * D;
    if (gf.unit) project(gf);
}

Mat chart_values(const GridField& gf) { return gf.values.cwiseQuotient(gf.scale); }

void project(GridField& gf) {
    for (Eigen::Index n = 0; n < gf.values.rows(); ++n) {
        const double r = gf.values.row(n).norm();
        if (!(r > 0)) throw SingularFieldPoint("nodal vector vanishes");
        if (r != 1.0) gf.values.row(n) /= r;
    }
}

double objective(const GridField& gf) {
    const std::vector<Mat> dw = derivatives(gf);
    const int m = gf.M.dim;
    std::vector<double> f(gf.nodes.size());
    parallel_for(gf.nodes.size(), [&](size_t n) {
        const Mat C = node_shape(gf, dw, n);
        f[n] = std::sqrt((Mat::Identity(m, m) + C.transpose() * C).determinant());
    });
    return weighted_sum(gf.weight, f);
}

Mat gradient(const GridField& gf) {
    const std::vector<Mat> dw = derivatives(gf);
    const int m = gf.M.dim;
    const size_t N = gf.nodes.size();
    // Gd(n) = ∂f/∂Ĉ = f Ĉ (I + ĈᵀĈ)^{-1}
    std::vector<Mat> Gd(N);
    parallel_for(N, [&](size_t n) {
        const Mat C = node_shape(gf, dw, n);
        const Mat A = Mat::Identity(m, m) + C.transpose() * C;
        const double f = std::sqrt(A.determinant());
        Gd[n] = f * C * A.inverse();
    });
    Mat grad = Mat::Zero(N, m);
    for (int b = 0; b < m; ++b) {
        Mat Y(N, m);
        for (size_t n = 0; n < N; ++n)
            for (int a = 0; a < m; ++a) Y(n, a) = gf.weight[n] * Gd[n](a, b) / gf.scale(n, b);
        grad += apply_axis(gf, b, Y, true);
    }
    parallel_for(N, [&](size_t n) {
        for (int c = 0; c < m; ++c) {
            double s = 0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) s += Gd[n](a, b) * gf.omega[n](a, b, c);
            grad(n, c) += gf.weight[n] * s;
        }
        grad.row(n) /= gf.weight[n];
        if (gf.unit) {
            const Eigen::RowVectorXd w = gf.values.row(n);
            grad.row(n) -= grad.row(n).dot(w) * w;
        }
    });
    return grad;
}

double sup_norm(const Mat& grad) {
    double s = 0;
    for (Eigen::Index n = 0; n < grad.rows(); ++n) s = std::max(s, grad.row(n).norm());
    return s;
}

double weighted_inner(const GridField& gf, const Mat& a, const Mat& b) {
    double s = 0;
    for (size_t n = 0; n < gf.nodes.size(); ++n) s += gf.weight[n] * a.row(n).dot(b.row(n));
    return s;
}

OptTrajectory optimize(GridField& gf, const OptConfig& cfg) {
    OptTrajectory tr;
    if (gf.unit) project(gf);
    double f = objective(gf);
    Mat g = gradient(gf);
    tr.iterates.push_back({f, sup_norm(g), 0.0});
    for (int it = 0;; ++it) {
        if (tr.iterates.back().grad_norm <= cfg.tol) {
            tr.reason = "gradient_tolerance";
            break;
        }
        if (it >= cfg.max_iters) {
            tr.reason = "max_iterations";
            break;
        }
        const double slope = weighted_inner(gf, g, g);
        const Mat start = gf.values;
        double step = cfg.initial_step;
        bool accepted = false;
        double fn = f;
        while (step >= cfg.min_step) {
            gf.values = start - step * g;
            if (gf.unit) project(gf);
            fn = objective(gf);
            if (fn <= f - cfg.armijo_c * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            gf.values = start;
            tr.reason = "LineSearchStall";
            break;
        }
        f = fn;
        g = gradient(gf);
        tr.iterates.push_back({f, sup_norm(g), step});
        tr.iterations = it + 1;
    }
    return tr;
}

}  // namespace vfc
