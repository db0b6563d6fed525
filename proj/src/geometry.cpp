#include "bishop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace bishop {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double fd_step(const CVec& z) { return 1e-5 * (1.0 + z.norm()); }

CVec unit_re(int dim, int j) {
    CVec e = CVec::Zero(dim);
    e(j) = 1.0;
    return e;
}
CVec unit_im(int dim, int j) {
    CVec e = CVec::Zero(dim);
    e(j) = kI;
    return e;
}

// Deterministic uniform in [0,1) from raw 64-bit draws.
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

DefiningFunction DefiningFunction::from_evaluator(int dim,
                                                  std::function<double(const CVec&)> f,
                                                  Smoothness cls) {
    DefiningFunction rho;
    rho.dim = dim;
    rho.value = f;
    rho.cls = cls;
    rho.grad_z = [f, dim](const CVec& z) {
        const double eps = fd_step(z);
        CVec g(dim);
        for (int j = 0; j < dim; ++j) {
            CVec ex = unit_re(dim, j), ey = unit_im(dim, j);
            double fx = (f(z + eps * ex) - f(z - eps * ex)) / (2.0 * eps);
            double fy = (f(z + eps * ey) - f(z - eps * ey)) / (2.0 * eps);
            g(j) = 0.5 * Complex(fx, -fy);
        }
        return g;
    };
    rho.hessian = [f, dim](const CVec& z) {
        const double eps = fd_step(z);
        auto mixed = [&](const CVec& a, const CVec& b) {
            if ((a - b).norm() < 1e-18)
                return (f(z + eps * a) - 2.0 * f(z) + f(z - eps * a)) / (eps * eps);
            return (f(z + eps * (a + b)) - f(z + eps * (a - b)) - f(z + eps * (b - a)) +
                    f(z - eps * (a + b))) /
                   (4.0 * eps * eps);
        };
        CMat h(dim, dim);
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) {
                CVec xj = unit_re(dim, j), yj = unit_im(dim, j);
                CVec xk = unit_re(dim, k), yk = unit_im(dim, k);
                double xx = mixed(xj, xk), yy = mixed(yj, yk);
                double xy = mixed(xj, yk), yx = mixed(yj, xk);
                h(j, k) = 0.25 * Complex(xx + yy, xy - yx);
            }
        }
        return h;
    };
    return rho;
}

DefiningFunction DefiningFunction::ball(const CVec& center, double radius) {
    DefiningFunction rho;
    rho.dim = static_cast<int>(center.size());
    rho.value = [center, radius](const CVec& z) {
        return (z - center).squaredNorm() - radius * radius;
    };
    rho.grad_z = [center](const CVec& z) { return CVec((z - center).conjugate()); };
    int dim = rho.dim;
    rho.hessian = [dim](const CVec&) { return CMat(CMat::Identity(dim, dim)); };
    return rho;
}

DefiningFunction DefiningFunction::ellipsoid(const Vec& coeffs) {
    DefiningFunction rho;
    rho.dim = static_cast<int>(coeffs.size());
    rho.value = [coeffs](const CVec& z) {
        double s = -1.0;
        for (int j = 0; j < coeffs.size(); ++j) s += coeffs(j) * std::norm(z(j));
        return s;
    };
    rho.grad_z = [coeffs](const CVec& z) {
        return CVec(coeffs.cast<Complex>().cwiseProduct(z.conjugate()));
    };
    rho.hessian = [coeffs](const CVec&) {
        return CMat(coeffs.cast<Complex>().asDiagonal());
    };
    return rho;
}

DefiningFunction DefiningFunction::linear_re(int dim, int j) {
    DefiningFunction rho;
    rho.dim = dim;
    rho.value = [j](const CVec& z) { return z(j).real(); };
    rho.grad_z = [dim, j](const CVec&) { return CVec(0.5 * unit_re(dim, j)); };
    rho.hessian = [dim](const CVec&) { return CMat(CMat::Zero(dim, dim)); };
    return rho;
}

DefiningFunction DefiningFunction::linear_im(int dim, int j) {
    DefiningFunction rho;
    rho.dim = dim;
    rho.value = [j](const CVec& z) { return z(j).imag(); };
    rho.grad_z = [dim, j](const CVec&) { return CVec(Complex(0.0, -0.5) * unit_re(dim, j)); };
    rho.hessian = [dim](const CVec&) { return CMat(CMat::Zero(dim, dim)); };
    return rho;
}

DefiningFunction DefiningFunction::graph_face(const ManifoldGraph& g, int j, Smoothness cls) {
    DefiningFunction rho;
    rho.dim = g.dim;
    rho.cls = cls;
    rho.value = [g, j](const CVec& z) {
        return z(j).imag() - g.value(z.real())(j);
    };
    rho.grad_z = [g, j](const CVec& z) {
        Vec row = g.jacobian(z.real()).row(j);
        CVec out = -0.5 * row.cast<Complex>();
        out(j) += Complex(0.0, -0.5);
        return out;
    };
    if (cls == Smoothness::C2) {
        rho.hessian = [g, j](const CVec& z) {
            // -(1/4) Hess_x h_j via centered differences of the Jacobian row.
            const int dim = g.dim;
            const Vec x = z.real();
            const double eps = 1e-5 * (1.0 + x.norm());
            CMat h(dim, dim);
            for (int l = 0; l < dim; ++l) {
                Vec e = Vec::Zero(dim);
                e(l) = eps;
                Vec diff = (g.jacobian(x + e).row(j) - g.jacobian(x - e).row(j)) / (2.0 * eps);
                for (int k = 0; k < dim; ++k) h(k, l) = -0.25 * diff(k);
            }
            return CMat(0.5 * (h + h.adjoint()));
        };
    } else {
        rho.hessian = nullptr;
    }
    return rho;
}

DefiningFunction DefiningFunction::flat_edge_distance_sq(int dim) {
    DefiningFunction rho;
    rho.dim = dim;
    rho.value = [](const CVec& z) { return z.imag().squaredNorm(); };
    rho.grad_z = [](const CVec& z) {
        return CVec(Complex(0.0, -1.0) * z.imag().cast<Complex>());
    };
    rho.hessian = [dim](const CVec&) { return CMat(0.5 * CMat::Identity(dim, dim)); };
    return rho;
}

double levi_form(const DefiningFunction& rho, const CVec& p, const CVec& v) {
    if (rho.cls == Smoothness::C1 || !rho.hessian)
        throw Unsupported("levi_form: defining function is only C1");
    CMat h = rho.hessian(p);
    CMat hs = 0.5 * (h + h.adjoint());
    return (v.adjoint() * hs * v)(0).real();
}

PseudoconvexityReport strict_pseudoconvexity_check(const DefiningFunction& rho,
                                                   const std::vector<CVec>& samples) {
    PseudoconvexityReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const CVec& p : samples) {
        if (std::abs(rho.value(p)) > 1e-8)
            throw InvalidInput("pseudoconvexity: sample not on the boundary");
        CVec g = rho.grad_z(p);
        if (g.norm() < 1e-10 * (1.0 + p.norm()))
            throw DegenerateBoundary("pseudoconvexity: vanishing gradient at a sample");
        const int dim = rho.dim;
        if (dim == 1) {
            report.per_sample.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        // H_p = {v : sum_j g_j v_j = 0} = Hermitian complement of conj(g).
        CMat q = Eigen::HouseholderQR<CMat>(g.conjugate()).householderQ();
        CMat basis = q.rightCols(dim - 1);
        CMat h = rho.hessian(p);
        CMat restricted = basis.adjoint() * (0.5 * (h + h.adjoint())) * basis;
        Eigen::SelfAdjointEigenSolver<CMat> eig(restricted);
        double lo = eig.eigenvalues().minCoeff();
        report.per_sample.push_back(lo);
        report.min_eigenvalue = std::min(report.min_eigenvalue, lo);
    }
    report.strict = report.min_eigenvalue > 0.0;
    return report;
}

bool Wedge::member(const CVec& z) const {
    for (const auto& face : faces)
        if (!(face.value(z) < 0.0)) return false;
    return true;
}

bool Wedge::member_shrunk(const CVec& z) const {
    const int n = static_cast<int>(faces.size());
    Vec phi(n);
    for (int j = 0; j < n; ++j) phi(j) = faces[j].value(z);
    double total = phi.sum();
    for (int j = 0; j < n; ++j)
        if (!(phi(j) - delta * (total - phi(j)) < 0.0)) return false;
    return true;
}

double Wedge::dist_to_boundary(const CVec& z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& face : faces) {
        CVec w = z;
        for (int it = 0; it < 40; ++it) {
            double v = face.value(w);
            if (std::abs(v) < 1e-15) break;
            CVec g = face.grad_z(w);
            double gn2 = g.squaredNorm();
            if (gn2 < 1e-30) break;
            w -= (v / (2.0 * gn2)) * g.conjugate();
        }
        best = std::min(best, (z - w).norm());
    }
    return best;
}

Wedge model_wedge(int dim, double delta) {
    Wedge w;
    w.delta = delta;
    for (int j = 0; j < dim; ++j) w.faces.push_back(DefiningFunction::linear_im(dim, j));
    w.edge = flat_graph(dim);
    return w;
}

Wedge graph_wedge(const ManifoldGraph& g, double delta, Smoothness cls) {
    Wedge w;
    w.delta = delta;
    for (int j = 0; j < g.dim; ++j) w.faces.push_back(DefiningFunction::graph_face(g, j, cls));
    w.edge = g;
    return w;
}

double wedge_genericity_margin(const Wedge& w, const std::vector<CVec>& probes) {
    const int n = static_cast<int>(w.faces.size());
    double margin = std::numeric_limits<double>::infinity();
    for (const CVec& p : probes) {
        CMat m(n, n);
        for (int j = 0; j < n; ++j) m.row(j) = w.faces[j].grad_z(p).transpose();
        margin = std::min(margin, std::abs(m.determinant()));
    }
    return margin;
}

bool Cone::contains(const Vec& point) const {
    Vec v = point - vertex;
    double r = v.norm();
    if (r > radius) return false;
    if (r == 0.0) return true;
    return v.dot(axis) >= cos_half_angle * r;
}

Cone model_cone(int dim, double margin, double radius) {
    Cone cone;
    cone.vertex = Vec::Zero(2 * dim);
    cone.axis = Vec::Zero(2 * dim);
    for (int j = 0; j < dim; ++j) cone.axis(dim + j) = -1.0 / std::sqrt(double(dim));
    double tan_half = (1.0 - margin) / std::sqrt(double(dim));
    cone.cos_half_angle = 1.0 / std::sqrt(1.0 + tan_half * tan_half);
    cone.radius = radius;
    return cone;
}

EdgeDistanceReport edge_distance_comparability(const Wedge& w,
                                               const std::vector<CVec>& samples) {
    if (!w.edge) throw InvalidInput("edge_distance_comparability: wedge has no edge graph");
    EdgeDistanceReport report;
    for (const CVec& z : samples) {
        if (!w.member_shrunk(z)) {
            ++report.skipped;
            continue;
        }
        double db = w.dist_to_boundary(z);
        double de = dist_to_manifold(*w.edge, z).distance;
        if (db < 1e-15 || de < 1e-15) {
            ++report.skipped;
            continue;
        }
        double ratio = de / db;
        report.ratios.push_back(ratio);
        report.comparability = std::max({report.comparability, ratio, 1.0 / ratio});
        ++report.used;
    }
    return report;
}

HopfReport hopf_bound_check(const AnalyticDisc& disc, const DefiningFunction& rho,
                            const ManifoldGraph& edge, const HopfOptions& opts) {
    HopfReport report;
    double max_abs_rho = 0.0;
    for (int i = 0; i < opts.rays; ++i) {
        double theta = 2.0 * kPi * i / opts.rays;
        for (int k = 0; k < opts.radii; ++k) {
            double frac = opts.radii == 1 ? 0.0 : static_cast<double>(k) / (opts.radii - 1);
            double omr = opts.window_hi * std::pow(opts.window_lo / opts.window_hi, frac);
            Complex zeta = (1.0 - omr) * std::exp(kI * theta);
            CVec w = disc.evaluate(zeta);
            double rv = rho.value(w);
            if (rv > opts.domain_tol)
                throw DomainViolation("hopf_bound_check: disc image leaves {rho <= 0}");
            HopfTriple triple;
            triple.one_minus_r = omr;
            triple.abs_rho = std::abs(rv);
            triple.dist_edge = dist_to_manifold(edge, w).distance;
            report.triples.push_back(triple);
            max_abs_rho = std::max(max_abs_rho, triple.abs_rho);
        }
    }
    if (max_abs_rho <= 1e-13) {
        report.applicable = false;   // disc lies in the zero set (t = 0 case)
        return report;
    }
    report.c_hopf = std::numeric_limits<double>::infinity();
    for (const auto& t : report.triples) {
        report.c_hopf = std::min(report.c_hopf, t.abs_rho / t.one_minus_r);
        if (t.dist_edge > 1e-15) {
            report.c_chain = std::max(report.c_chain, t.one_minus_r / t.dist_edge);
            report.c_rho_edge = std::max(report.c_rho_edge, t.abs_rho / t.dist_edge);
        }
    }
    if (opts.boundary_distance) {
        for (int i = 0; i < opts.rays; ++i) {
            double theta = 2.0 * kPi * i / opts.rays;
            for (int k = 0; k < opts.radii; ++k) {
                double frac = opts.radii == 1 ? 0.0 : static_cast<double>(k) / (opts.radii - 1);
                double omr = opts.window_hi * std::pow(opts.window_lo / opts.window_hi, frac);
                CVec w = disc.evaluate((1.0 - omr) * std::exp(kI * theta));
                double db = opts.boundary_distance(w);
                if (db > 1e-15)
                    report.c_rho_boundary =
                        std::max(report.c_rho_boundary, std::abs(rho.value(w)) / db);
            }
        }
    }
    return report;
}

FillReport wedge_fill_check(const std::vector<AnalyticDisc>& discs, const Wedge& w,
                            double r, double eps_fill, const FillOptions& opts) {
    if (discs.empty()) throw InvalidInput("wedge_fill_check: empty disc sweep");
    const int dim = discs.front().trace.dim();
    if (dim != 1 && dim != 2)
        throw InvalidInput("wedge_fill_check: desk scale supports dim 1 and 2 only");

    // Rejection-sample the shrunk wedge inside the r-ball.
    std::mt19937_64 rng(opts.seed);
    std::vector<CVec> samples;
    int guard = 0;
    while (static_cast<int>(samples.size()) < opts.samples && guard < 1000000) {
        ++guard;
        CVec z(dim);
        for (int j = 0; j < dim; ++j)
            z(j) = Complex(r * (2.0 * u01(rng) - 1.0), r * (2.0 * u01(rng) - 1.0));
        if (z.norm() >= r) continue;
        if (!w.member_shrunk(z)) continue;
        samples.push_back(z);
    }
    if (static_cast<int>(samples.size()) < opts.samples)
        throw InvalidInput("wedge_fill_check: sampling the shrunk wedge failed");

    std::vector<double> best(samples.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> covered(samples.size(), false);
    std::size_t n_covered = 0;

    auto absorb_point = [&](const CVec& p) {
        for (std::size_t s = 0; s < samples.size(); ++s) {
            if (covered[s]) continue;
            double d = (samples[s] - p).norm();
            if (d < best[s]) {
                best[s] = d;
                if (d <= eps_fill) {
                    covered[s] = true;
                    ++n_covered;
                }
            }
        }
    };

    for (const auto& disc : discs) {
        const int n = disc.trace.nodes();
        const int theta_count = std::min(n, 256);
        const int stride = n / theta_count;
        for (int j = 0; j < n; j += stride) absorb_point(disc.trace.value(j));
        if (n_covered == samples.size()) break;
        for (int k = 0; k < opts.interior_rings; ++k) {
            double back = 1.0 - static_cast<double>(k) / opts.interior_rings;
            double rr = 1.0 - back * back;
            for (int j = 0; j < n; j += stride) {
                Complex zeta = rr * std::exp(kI * (2.0 * kPi * j / n));
                absorb_point(disc.evaluate(zeta));
            }
            if (n_covered == samples.size()) break;
        }
        if (n_covered == samples.size()) break;
    }

    FillReport report;
    report.samples = static_cast<int>(samples.size());
    report.eps_fill = eps_fill;
    report.fraction = static_cast<double>(n_covered) / samples.size();
    report.worst_distance = *std::max_element(best.begin(), best.end());
    return report;
}

KeyEstimateReport key_estimate_check(const HoloMap& f, const std::vector<AnalyticDisc>& discs,
                                     const DefiningFunction& rho_m, const ManifoldGraph& edge,
                                     const KeyEstimateOptions& opts) {
    if (discs.empty()) throw InvalidInput("key_estimate_check: empty disc list");
    const int dim = edge.dim;

    // Hypothesis f(E) subset M at edge probes.
    const int per_axis = dim == 1 ? opts.edge_probes
                                  : std::max(3, static_cast<int>(std::round(
                                                    std::pow(opts.edge_probes, 1.0 / dim))));
    std::vector<int> idx(dim, 0);
    while (true) {
        Vec x(dim);
        for (int j = 0; j < dim; ++j)
            x(j) = opts.edge_box * (2.0 * idx[j] / (per_axis - 1) - 1.0);
        CVec z = x.cast<Complex>() + kI * edge.value(x).cast<Complex>();
        if (rho_m.value(f(z)) > opts.membership_tol)
            throw HypothesisViolation("key_estimate_check: f(E) leaves M at an edge probe");
        int j = 0;
        for (; j < dim; ++j) {
            if (++idx[j] < per_axis) break;
            idx[j] = 0;
        }
        if (j == dim) break;
    }

    KeyEstimateReport report;
    std::vector<double> pair_dz, pair_df;
    for (const auto& disc : discs) {
        const int n = disc.trace.nodes();
        for (int i = 0; i < opts.rays; ++i) {
            int node = (i * n) / opts.rays;
            double theta = 2.0 * kPi * node / n;
            for (int k = 0; k < opts.radii; ++k) {
                double frac = opts.radii == 1 ? 0.0 : static_cast<double>(k) / (opts.radii - 1);
                double omr = 0.3 * std::pow(1e-4 / 0.3, frac);
                CVec z = disc.evaluate((1.0 - omr) * std::exp(kI * theta));
                double rv = rho_m.value(f(z));
                double de = dist_to_manifold(edge, z).distance;
                if (de > 1e-14) {
                    report.c_fit = std::max(report.c_fit, rv / de);
                    ++report.samples;
                }
            }
            // Holder pairs along rays landing on the upper semicircle.
            if (node > 0 && node < n / 2) {
                CVec boundary = disc.trace.value(node);
                CVec f_boundary = f(boundary);
                for (int m = opts.dyadic_lo; m <= opts.dyadic_hi; ++m) {
                    double omr = std::pow(2.0, -m);
                    CVec z = disc.evaluate((1.0 - omr) * std::exp(kI * theta));
                    double dz = (z - boundary).norm();
                    double df = (f(z) - f_boundary).norm();
                    if (dz > 1e-15 && df > 1e-15) {
                        pair_dz.push_back(dz);
                        pair_df.push_back(df);
                    }
                }
            }
        }
    }
    if (pair_dz.size() >= 3) {
        LogLogFit fit = fit_loglog(pair_dz, pair_df);
        report.holder_slope = fit.slope;
        report.holder_band_lo = fit.slope - 2.0 * fit.stderr_slope;
        report.holder_band_hi = fit.slope + 2.0 * fit.stderr_slope;
    }
    report.pass = std::isfinite(report.c_fit) && report.samples > 0 &&
                  report.holder_slope >= 0.9 && report.holder_band_lo > 0.8;
    return report;
}

} // namespace bishop
