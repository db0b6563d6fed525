#include "bishop/manifolds.hpp"

#include <cmath>
#include <numbers>

namespace bishop {

namespace {

constexpr double kPi = std::numbers::pi;

double bump_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double bump_g_prime(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// Deterministic probe directions: +-axes plus an equiangular fan for n = 2
// and a fixed low-discrepancy set for n >= 3.
std::vector<Vec> probe_directions(int dim, int count) {
    std::vector<Vec> dirs;
    for (int j = 0; j < dim; ++j) {
        Vec e = Vec::Zero(dim);
        e(j) = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    if (dim == 1) return dirs;
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            double a = 2.0 * kPi * k / count;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            dirs.push_back(v);
        }
        return dirs;
    }
    double phi = 1.6180339887498949;
    for (int k = 0; k < count; ++k) {
        Vec v(dim);
        for (int j = 0; j < dim; ++j) v(j) = std::fmod(0.5 + (k + 1) * std::pow(phi, -(j + 1)), 1.0) - 0.5;
        if (v.norm() > 1e-9) dirs.push_back(v.normalized());
    }
    return dirs;
}

} // namespace

ManifoldGraph flat_graph(int dim) {
    ManifoldGraph g;
    g.dim = dim;
    g.value = [dim](const Vec&) { return Vec::Zero(dim); };
    g.jacobian = [dim](const Vec&) { return Mat::Zero(dim, dim); };
    g.tag = "flat";
    return g;
}

ManifoldGraph quadratic_graph(const std::vector<Mat>& a) {
    const int dim = static_cast<int>(a.size());
    for (const auto& m : a)
        if (m.rows() != dim || m.cols() != dim)
            throw InvalidInput("quadratic_graph: coefficient matrices must be n x n");
    ManifoldGraph g;
    g.dim = dim;
    g.value = [a, dim](const Vec& x) {
        Vec h(dim);
        for (int j = 0; j < dim; ++j) h(j) = x.dot(a[j] * x);
        return h;
    };
    g.jacobian = [a, dim](const Vec& x) {
        Mat jac(dim, dim);
        for (int j = 0; j < dim; ++j) jac.row(j) = ((a[j] + a[j].transpose()) * x).transpose();
        return jac;
    };
    g.tag = "quadratic";
    return g;
}

ManifoldGraph c1_profile_graph(int dim, double beta, const Vec& amplitude) {
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("c1_profile_graph: beta must lie in (0,1)");
    if (amplitude.size() != dim) throw InvalidInput("c1_profile_graph: amplitude size mismatch");
    ManifoldGraph g;
    g.dim = dim;
    g.value = [amplitude, beta](const Vec& x) {
        return Vec(amplitude * std::pow(x.norm(), 1.0 + beta));
    };
    g.jacobian = [amplitude, beta, dim](const Vec& x) {
        double r = x.norm();
        if (r == 0.0) return Mat(Mat::Zero(dim, dim));
        Vec radial = (1.0 + beta) * std::pow(r, beta - 1.0) * x;
        return Mat(amplitude * radial.transpose());
    };
    g.tag = "c1profile";
    return g;
}

ManifoldGraph polynomial_graph(const std::vector<double>& coeffs) {
    ManifoldGraph g;
    g.dim = 1;
    g.value = [coeffs](const Vec& x) {
        double t = x(0), xs = t * t, h = 0.0;
        for (double c : coeffs) {
            h += c * xs;
            xs *= t;
        }
        return Vec::Constant(1, h);
    };
    g.jacobian = [coeffs](const Vec& x) {
        double t = x(0), xs = t, d = 0.0;
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            d += static_cast<double>(m + 2) * coeffs[m] * xs;
            xs *= t;
        }
        return Mat(Mat::Constant(1, 1, d));
    };
    g.tag = "polynomial";
    return g;
}

void check_normal_form(const ManifoldGraph& g, double fd_tol) {
    Vec zero = Vec::Zero(g.dim);
    if (g.value(zero).cwiseAbs().maxCoeff() > 1e-12)
        throw DegenerateManifold("normal form: h(0) != 0");
    if (g.jacobian(zero).cwiseAbs().maxCoeff() > 1e-12)
        throw DegenerateManifold("normal form: Dh(0) != 0");
    const double eps = 1e-6;
    for (double radius : {0.1, 0.3, 0.7}) {
        for (const Vec& dir : probe_directions(g.dim, 8)) {
            Vec x = radius * dir;
            Mat jac = g.jacobian(x);
            for (int j = 0; j < g.dim; ++j) {
                Vec e = Vec::Zero(g.dim);
                e(j) = 1.0;
                Vec fd = (g.value(x + eps * e) - g.value(x - eps * e)) / (2.0 * eps);
                double err = (jac.col(j) - fd).cwiseAbs().maxCoeff();
                if (err > fd_tol * (1.0 + jac.cwiseAbs().maxCoeff()))
                    throw DegenerateManifold("normal form: Jacobian inconsistent with finite differences");
            }
        }
    }
}

double totally_real_margin(const ManifoldGraph& g, double probe_radius, int probes) {
    double margin = std::numeric_limits<double>::infinity();
    for (const Vec& dir : probe_directions(g.dim, probes)) {
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            Vec x = s * probe_radius * dir;
            Eigen::MatrixXcd m =
                Eigen::MatrixXcd::Identity(g.dim, g.dim) + Complex(0.0, 1.0) * g.jacobian(x).cast<Complex>();
            margin = std::min(margin, std::abs(m.determinant()));
        }
    }
    return margin;
}

double BumpFunction::radial(double r) const {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double u = bump_g(2.0 - r), v = bump_g(r - 1.0);
    return u / (u + v);
}

double BumpFunction::radial_derivative(double r) const {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    double u = bump_g(2.0 - r), v = bump_g(r - 1.0);
    double up = -bump_g_prime(2.0 - r), vp = bump_g_prime(r - 1.0);
    double s = u + v;
    return (up * v - u * vp) / (s * s);
}

CutoffGraph::CutoffGraph(ManifoldGraph base, double delta, double tau)
    : base_(std::move(base)), delta_(delta), tau_(tau) {
    if (!(delta_ > 0.0) || !(tau_ > 0.0))
        throw InvalidInput("CutoffGraph: delta and tau must be positive");
}

Vec CutoffGraph::value(const Vec& x) const {
    double lam = bump_.radial(x.norm() / delta_);
    if (lam == 0.0) return Vec::Zero(base_.dim);
    return lam * base_.value(x);
}

Mat CutoffGraph::jacobian(const Vec& x) const {
    double r = x.norm();
    double s = r / delta_;
    double lam = bump_.radial(s);
    if (lam == 0.0 && s > 2.0) return Mat::Zero(base_.dim, base_.dim);
    Mat jac = lam * base_.jacobian(x);
    double dlam = bump_.radial_derivative(s);
    if (dlam != 0.0 && r > 0.0)
        jac += (dlam / (delta_ * r)) * base_.value(x) * x.transpose();
    return jac;
}

double CutoffGraph::gradient_bound(int radial_samples) const {
    double bound = 0.0;
    auto dirs = probe_directions(base_.dim, 64);
    for (int i = 0; i <= radial_samples; ++i) {
        double r = 2.0 * delta_ * i / radial_samples;
        for (const Vec& dir : dirs) {
            Mat jac = jacobian(r * dir);
            bound = std::max(bound, jac.cwiseAbs().rowwise().sum().maxCoeff());
        }
    }
    return bound;
}

CutoffGraph choose_tau_delta(const ManifoldGraph& g, double contraction_target, double t_norm) {
    if (!(contraction_target > 0.0 && contraction_target < 1.0))
        throw InvalidInput("choose_tau_delta: contraction_target must lie in (0,1)");
    if (!(t_norm > 0.0)) throw InvalidInput("choose_tau_delta: t_norm must be positive");
    const double tau = contraction_target / t_norm;
    const double delta_min = 1e-8;

    auto bound_at = [&](double delta) {
        return CutoffGraph(g, delta, tau).gradient_bound();
    };

    double hi = 1.0;
    if (bound_at(hi) <= tau) return CutoffGraph(g, hi, tau);
    double lo = delta_min;
    if (bound_at(lo) > tau)
        throw DegenerateManifold("choose_tau_delta: gradient bound exceeds tau down to delta = 1e-8");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (bound_at(mid) <= tau ? lo : hi) = mid;
    }
    return CutoffGraph(g, lo, tau);
}

ManifoldGraph DilationFamily::dilate(double d) const {
    if (d == 0.0) return flat_graph(base.dim);
    ManifoldGraph g;
    g.dim = base.dim;
    const ManifoldGraph b = base;
    g.value = [b, d](const Vec& x) { return Vec(b.value(d * x) / d); };
    g.jacobian = [b, d](const Vec& x) { return b.jacobian(d * x); };
    g.tag = base.tag + "@d=" + std::to_string(d);
    return g;
}

double c1_norm_on_box(const ManifoldGraph& g, double half_width, int samples_per_axis) {
    if (g.dim > 1 && samples_per_axis > 201) samples_per_axis = 201;
    double norm = 0.0;
    std::vector<int> idx(g.dim, 0);
    const int m = samples_per_axis;
    while (true) {
        Vec x(g.dim);
        for (int j = 0; j < g.dim; ++j) x(j) = half_width * (2.0 * idx[j] / (m - 1) - 1.0);
        norm = std::max(norm, g.value(x).cwiseAbs().maxCoeff());
        norm = std::max(norm, g.jacobian(x).cwiseAbs().rowwise().sum().maxCoeff());
        int j = 0;
        for (; j < g.dim; ++j) {
            if (++idx[j] < m) break;
            idx[j] = 0;
        }
        if (j == g.dim) break;
    }
    return norm;
}

CollarFunction build_collar(const CircleGrid& grid) {
    auto value = [](double theta) {
        double t = std::fmod(theta, 2.0 * kPi);
        if (t < 0.0) t += 2.0 * kPi;
        if (t <= kPi) return 0.0;
        double q = (t - kPi) * (2.0 * kPi - t);
        if (q <= 0.0) return 0.0;
        return -std::exp(-1.0 / q);
    };
    // Sample by index so psi = 0 holds exactly at every upper-semicircle node.
    Eigen::MatrixXcd v(1, grid.size());
    for (int j = 0; j < grid.size(); ++j)
        v(0, j) = (j <= grid.size() / 2) ? 0.0 : value(grid.theta(j));
    return CollarFunction{value, CircleFunction(grid, std::move(v))};
}

DistanceResult dist_to_manifold(const ManifoldGraph& g, const Eigen::VectorXcd& z,
                                const DistanceOptions& opts) {
    if (z.size() != g.dim) throw InvalidInput("dist_to_manifold: dimension mismatch");
    if (!z.allFinite()) throw InvalidInput("dist_to_manifold: non-finite point");
    const Vec xr = z.real();
    const Vec yr = z.imag();

    auto objective = [&](const Vec& x) {
        Vec res_im = yr - g.value(x);
        return 0.5 * ((xr - x).squaredNorm() + res_im.squaredNorm());
    };

    double box = opts.box_radius;
    if (box <= 0.0) box = std::max(0.5, 2.0 * (yr - g.value(xr)).norm());

    // Grid seeding around Re z.
    const int m = std::max(3, opts.seeds_per_axis);
    std::vector<Vec> seeds;
    std::vector<int> idx(g.dim, 0);
    while (true) {
        Vec x(g.dim);
        for (int j = 0; j < g.dim; ++j) x(j) = xr(j) + box * (2.0 * idx[j] / (m - 1) - 1.0);
        seeds.push_back(x);
        int j = 0;
        for (; j < g.dim; ++j) {
            if (++idx[j] < m) break;
            idx[j] = 0;
        }
        if (j == g.dim) break;
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](const Vec& a, const Vec& b) { return objective(a) < objective(b); });

    DistanceResult best;
    best.distance = std::numeric_limits<double>::infinity();
    const int n_starts = std::min<std::size_t>(4, seeds.size());
    for (int s = 0; s < n_starts; ++s) {
        Vec x = seeds[s];
        bool clipped = false;
        for (int it = 0; it < opts.max_iterations; ++it) {
            Mat jac = g.jacobian(x);
            Vec res_im = yr - g.value(x);
            Vec grad = -(xr - x) - jac.transpose() * res_im;
            Mat h = Mat::Identity(g.dim, g.dim) + jac.transpose() * jac;
            Vec step = h.ldlt().solve(-grad);
            double f0 = objective(x);
            double t = 1.0;
            int bt = 0;
            while (bt < 40 && objective(x + t * step) > f0 - 1e-4 * t * std::abs(grad.dot(step))) {
                t *= 0.5;
                ++bt;
            }
            x += t * step;
            for (int j = 0; j < g.dim; ++j) {
                double lo = xr(j) - 2.0 * box, hi = xr(j) + 2.0 * box;
                if (x(j) < lo) { x(j) = lo; clipped = true; }
                if (x(j) > hi) { x(j) = hi; clipped = true; }
            }
            if (t * step.norm() <= 1e-13 * (1.0 + x.norm())) break;
        }
        double d = std::sqrt(2.0 * objective(x));
        if (d < best.distance) {
            best.distance = d;
            best.x_star = x;
            best.approximate = clipped;
        }
    }
    return best;
}

} // namespace bishop
