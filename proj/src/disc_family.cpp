#include "bishop/disc_family.hpp"

#include <cmath>
#include <sstream>

namespace bishop {

namespace {

Eigen::MatrixXcd nonnegative_series(const CircleFunction& trace) {
    FourierCoeffs coeffs = fourier_analyze(trace);
    const int n = trace.nodes();
    const int dim = trace.dim();
    int keep = n / 2;
    double scale = 0.0;
    Eigen::MatrixXcd full(dim, n / 2);
    for (int k = 0; k < n / 2; ++k) {
        for (int c = 0; c < dim; ++c) full(c, k) = coeffs.coeff(c, k);
        scale = std::max(scale, full.col(k).cwiseAbs().maxCoeff());
    }
    // Drop the negligible spectral tail; the trace is smooth so this only
    // trims coefficients below roundoff.
    while (keep > 1 && full.col(keep - 1).cwiseAbs().maxCoeff() <= 1e-14 * scale) --keep;
    return full.leftCols(keep);
}

CircleFunction assemble_trace(const CircleFunction& u,
                              const std::function<Vec(const Vec&)>& h,
                              const CollarFunction& psi, const Vec& t) {
    const int dim = u.dim();
    const int n = u.nodes();
    Eigen::MatrixXcd vals(dim, n);
    const Eigen::MatrixXd ur = u.real_part();
    for (int j = 0; j < n; ++j) {
        Vec hj = h(ur.col(j));
        double pj = psi.samples.values()(0, j).real();
        for (int c = 0; c < dim; ++c)
            vals(c, j) = Complex(ur(c, j), hj(c) + t(c) * pj);
    }
    return CircleFunction(u.grid(), std::move(vals));
}

double attach_residual_of(const CircleFunction& trace,
                          const std::function<Vec(const Vec&)>& h) {
    const int n = trace.nodes();
    double r = 0.0;
    for (int j = 0; j <= n / 2; ++j) {   // closed upper semicircle nodes
        Vec re = trace.values().col(j).real();
        Vec im = trace.values().col(j).imag();
        r = std::max(r, (im - h(re)).cwiseAbs().maxCoeff());
    }
    return r;
}

} // namespace

Eigen::VectorXcd AnalyticDisc::evaluate(Complex zeta) const {
    if (std::abs(zeta) >= 1.0) throw OutOfDomain("AnalyticDisc: |zeta| must be < 1");
    const int dim = static_cast<int>(series.rows());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int c = 0; c < dim; ++c) {
        Complex acc = 0.0;
        for (int k = static_cast<int>(series.cols()) - 1; k >= 0; --k)
            acc = acc * zeta + series(c, k);
        out(c) = acc;
    }
    return out;
}

AnalyticDisc build_disc(const BishopSolution& sol, const ManifoldGraph& g,
                        const CollarFunction& psi, const DiscTolerances& tol,
                        double eps_picard) {
    if (!sol.localized)
        throw InvalidInput("build_disc: solution is not localized (sup|u| > delta)");
    if (g.dim != sol.u.dim()) throw InvalidInput("build_disc: dimension mismatch");

    AnalyticDisc disc;
    disc.params = sol.params;
    disc.trace = assemble_trace(sol.u, g.value, psi, sol.params.t);
    disc.holo_residual = negative_frequency_residual(disc.trace);
    disc.attach_residual = attach_residual_of(disc.trace, g.value);
    disc.series = nonnegative_series(disc.trace);

    double dh_probe = 0.0;
    for (int j = 0; j < sol.u.nodes(); ++j) {
        Vec x = sol.u.values().col(j).real();
        dh_probe = std::max(dh_probe, g.jacobian(x).cwiseAbs().rowwise().sum().maxCoeff());
    }
    double default_tol = std::max(1e-8, 100.0 * eps_picard * (1.0 + dh_probe));
    double tol_holo = tol.holo > 0.0 ? tol.holo : default_tol;
    double tol_attach = tol.attach > 0.0 ? tol.attach : default_tol;

    auto fmt = [](double v) {
        std::ostringstream s;
        s.precision(3);
        s << std::scientific << v;
        return s.str();
    };
    if (disc.holo_residual > tol_holo)
        throw HolomorphyFailure("build_disc: negative-frequency residual " +
                                fmt(disc.holo_residual) + " exceeds tolerance " + fmt(tol_holo));
    if (disc.attach_residual > tol_attach)
        throw AttachmentFailure("build_disc: attachment residual " + fmt(disc.attach_residual) +
                                " exceeds tolerance " + fmt(tol_attach));
    return disc;
}

AnalyticDisc flat_disc(const DiscParameters& params, const CollarFunction& psi) {
    params.validate();
    const CircleGrid grid = psi.samples.grid();
    const int dim = static_cast<int>(params.c.size());
    CircleFunction t_psi_transform = hilbert_transform(psi.samples);

    Eigen::MatrixXcd vals(dim, grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        double tp = t_psi_transform.values()(0, j).real();
        double pv = psi.samples.values()(0, j).real();
        for (int c = 0; c < dim; ++c)
            vals(c, j) = Complex(params.c(c) - params.t(c) * tp, params.t(c) * pv);
    }
    AnalyticDisc disc;
    disc.params = params;
    disc.trace = CircleFunction(grid, std::move(vals));
    disc.holo_residual = negative_frequency_residual(disc.trace);
    disc.attach_residual = attach_residual_of(disc.trace, [dim](const Vec&) {
        return Vec::Zero(dim);
    });
    disc.series = nonnegative_series(disc.trace);
    disc.closed_form = true;
    return disc;
}

Eigen::VectorXcd evaluate_interior(const AnalyticDisc& disc, Complex zeta) {
    return disc.evaluate(zeta);
}

namespace {

// Shared tau/delta for the whole d list (uniform-in-d certificate).
CutoffGraph family_cutoff(const DilationFamily& fam, const std::vector<double>& d_list,
                          double contraction_target, double t_norm) {
    CutoffGraph base_cut = choose_tau_delta(fam.base, contraction_target, t_norm);
    const double tau = base_cut.tau();
    auto admissible = [&](double delta) {
        for (double d : d_list) {
            if (d == 0.0) continue;
            if (CutoffGraph(fam.dilate(d), delta, tau).gradient_bound() > tau) return false;
        }
        return CutoffGraph(fam.base, delta, tau).gradient_bound() <= tau;
    };
    double delta = base_cut.delta();
    if (admissible(delta)) return base_cut;
    double lo = 1e-8, hi = delta;
    if (!admissible(lo))
        throw DegenerateManifold("stability_sweep: no uniform delta across the d list");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
    }
    return CutoffGraph(fam.base, lo, tau);
}

CircleFunction family_trace(const DilationFamily& fam, double d, const CutoffGraph& shared,
                            const Vec& c, const Vec& t, const CollarFunction& psi,
                            const SolverOptions& sopts) {
    CutoffGraph cut(fam.dilate(d), shared.delta(), shared.tau());
    DiscParameters params{c, t, d};
    BishopSolution sol = solve(cut, psi, params, sopts);
    return assemble_trace(sol.u, [&cut](const Vec& x) { return cut.value(x); }, psi, t);
}

} // namespace

std::vector<StabilityPoint> stability_sweep(const DilationFamily& fam, const Vec& c,
                                            const Vec& t, const std::vector<double>& d_list,
                                            const CollarFunction& psi,
                                            const StabilityOptions& opts) {
    const double t_norm = hilbert_sup_norm(psi.samples.grid());
    CutoffGraph shared = family_cutoff(fam, d_list, opts.contraction_target, t_norm);
    CircleFunction flat_trace = family_trace(fam, 0.0, shared, c, t, psi, opts.solver);
    std::vector<StabilityPoint> out;
    for (double d : d_list) {
        CircleFunction trace = family_trace(fam, d, shared, c, t, psi, opts.solver);
        out.push_back({d, sobolev_norm(trace - flat_trace, opts.p)});
    }
    return out;
}

std::vector<StabilityPoint> stability_sweep_grid(const DilationFamily& fam,
                                                 const ParameterGrid& grid,
                                                 const std::vector<double>& d_list,
                                                 const CollarFunction& psi,
                                                 const StabilityOptions& opts) {
    const double t_norm = hilbert_sup_norm(psi.samples.grid());
    CutoffGraph shared = family_cutoff(fam, d_list, opts.contraction_target, t_norm);
    std::vector<StabilityPoint> out;
    for (double d : d_list) {
        double acc = 0.0;
        int count = 0;
        for (int i = 0; i < grid.total_points(); ++i) {
            DiscParameters q = grid.point(i);
            CircleFunction flat_trace = family_trace(fam, 0.0, shared, q.c, q.t, psi, opts.solver);
            CircleFunction trace = family_trace(fam, d, shared, q.c, q.t, psi, opts.solver);
            double dev = sobolev_norm(trace - flat_trace, opts.p);
            acc += std::pow(dev, opts.p);
            ++count;
        }
        out.push_back({d, std::pow(acc / count, 1.0 / opts.p)});
    }
    return out;
}

} // namespace bishop
