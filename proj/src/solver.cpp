#include "bishop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bishop {

void DiscParameters::validate() const {
    if (c.size() != t.size()) throw InvalidInput("DiscParameters: c and t sizes differ");
    for (int j = 0; j < t.size(); ++j)
        if (t(j) < 0.0) throw InvalidInput("DiscParameters: t components must be >= 0");
    if (!c.allFinite() || !t.allFinite() || !std::isfinite(d))
        throw InvalidInput("DiscParameters: non-finite entry");
}

int ParameterGrid::total_points() const {
    return c_res * t_res * static_cast<int>(d_values.size());
}

DiscParameters ParameterGrid::point(int flat_index) const {
    const int nd = static_cast<int>(d_values.size());
    int id = flat_index % nd;
    int rest = flat_index / nd;
    int it = rest % t_res;
    int ic = rest / t_res;
    auto lerp = [](double lo, double hi, int i, int n) {
        return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1);
    };
    DiscParameters p;
    p.c = Vec::Constant(dim, lerp(c_lo, c_hi, ic, c_res));
    p.t = Vec::Constant(dim, lerp(t_lo, t_hi, it, t_res));
    p.d = d_values[id];
    return p;
}

namespace {

// Pointwise h_delta through a sampled real function.
Eigen::MatrixXd apply_cutoff(const CutoffGraph& g, const Eigen::MatrixXd& u) {
    Eigen::MatrixXd out(u.rows(), u.cols());
    for (int j = 0; j < u.cols(); ++j) out.col(j) = g.value(u.col(j));
    return out;
}

CircleFunction phi_apply(const CircleFunction& u, const CutoffGraph& g,
                         const CircleFunction& t_psi_scaled, const Vec& c) {
    CircleFunction h_of_u =
        CircleFunction::from_real(u.grid(), apply_cutoff(g, u.real_part()));
    CircleFunction th = hilbert_transform(h_of_u);
    Eigen::MatrixXcd vals = -th.values() - t_psi_scaled.values();
    vals.colwise() += c.cast<Complex>();
    return CircleFunction(u.grid(), std::move(vals));
}

// t (.) Tpsi broadcast over components.
CircleFunction scaled_collar_transform(const CollarFunction& psi, const Vec& t) {
    const CircleGrid grid = psi.samples.grid();
    CircleFunction t_psi = hilbert_transform(psi.samples);
    Eigen::MatrixXcd vals(t.size(), grid.size());
    for (int c = 0; c < t.size(); ++c) vals.row(c) = t(c) * t_psi.values().row(0);
    return CircleFunction(grid, std::move(vals));
}

} // namespace

CircleFunction picard_step(const CircleFunction& u, const CutoffGraph& g,
                           const CollarFunction& psi, const DiscParameters& params) {
    params.validate();
    if (u.dim() != g.base().dim || params.c.size() != u.dim())
        throw InvalidInput("picard_step: shape mismatch");
    return phi_apply(u, g, scaled_collar_transform(psi, params.t), params.c);
}

BishopSolution solve(const CutoffGraph& g, const CollarFunction& psi,
                     const DiscParameters& params, const SolverOptions& opts) {
    params.validate();
    const int dim = g.base().dim;
    if (params.c.size() != dim) throw InvalidInput("solve: parameter dimension mismatch");
    const CircleGrid grid = psi.samples.grid();

    CircleFunction t_psi = scaled_collar_transform(psi, params.t);

    CircleFunction u(grid, dim);
    switch (opts.start) {
        case SolverOptions::Start::ConstantC:
            u.values().colwise() = params.c.cast<Complex>();
            break;
        case SolverOptions::Start::Zero:
            break;
        case SolverOptions::Start::Custom:
            if (!opts.custom_start) throw InvalidInput("solve: custom start missing");
            u = *opts.custom_start;
            break;
    }

    BishopSolution sol;
    sol.params = params;
    sol.delta = g.delta();

    double prev_delta = -1.0;
    int expanding_streak = 0;
    bool converged = false;
    int iterations = 0;
    double contraction = 0.0;

    for (int it = 0; it < opts.max_iterations; ++it) {
        CircleFunction next = phi_apply(u, g, t_psi, params.c);
        double step = (next - u).sup_norm();
        ++iterations;
        if (prev_delta > 1e-300) {
            double ratio = step / prev_delta;
            contraction = std::max(contraction, ratio);
            expanding_streak = ratio > 1.0 ? expanding_streak + 1 : 0;
            if (expanding_streak >= 10)
                throw NonContraction("solve: increment ratios exceeded 1 over 10 consecutive steps");
        }
        u = next;
        prev_delta = step;
        double floor = std::max(opts.eps_picard,
                                10.0 * std::numeric_limits<double>::epsilon() * u.sup_norm());
        if (step <= floor) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("solve: no convergence within " +
                            std::to_string(opts.max_iterations) + " iterations");

    sol.u = CircleFunction(grid, u.values().real().cast<Complex>());
    sol.iterations = iterations;
    sol.contraction_factor = contraction;
    sol.residual = (phi_apply(sol.u, g, t_psi, params.c) - sol.u).sup_norm();
    sol.sup_u = sol.u.sup_euclidean();
    sol.localized = sol.sup_u <= g.delta();
    return sol;
}

RegularityReport finite_difference_regularity_probe(const CutoffGraph& g,
                                                    const CollarFunction& psi,
                                                    const ParameterGrid& grid, double p,
                                                    int levels, const SolverOptions& opts) {
    if (levels < 3) throw InvalidInput("regularity probe: need at least 3 step levels");
    if (!(p > 1.0)) throw InvalidInput("regularity probe: p must be > 1");
    const int dim = grid.dim;
    const double c_width = grid.c_hi - grid.c_lo;
    const double t_width = grid.t_hi - grid.t_lo;
    if (!(c_width > 0.0) || !(t_width > 0.0))
        throw InvalidInput("regularity probe: parameter boxes must have positive width");

    // Base points: the grid itself (one d value at a time is expected;
    // probes run at each point's own d).
    std::vector<DiscParameters> base;
    for (int i = 0; i < grid.total_points(); ++i) base.push_back(grid.point(i));

    auto solve_at = [&](const DiscParameters& q) { return solve(g, psi, q, opts).u; };

    RegularityReport report;
    report.p = p;

    auto lp_aggregate = [&](const std::vector<CircleFunction>& fs) {
        // L^p over (base points) x circle, normalized measure, summed components.
        double total = 0.0;
        const int n = fs.front().nodes();
        for (int c = 0; c < fs.front().dim(); ++c) {
            double s = 0.0;
            for (const auto& f : fs)
                for (int j = 0; j < n; ++j) s += std::pow(std::abs(f.values()(c, j)), p);
            total += std::pow(s / (n * fs.size()), 1.0 / p);
        }
        return total;
    };

    for (int axis = 0; axis < 2 * dim; ++axis) {
        const bool is_c = axis < dim;
        const int comp = is_c ? axis : axis - dim;
        DirectionProbe probe;
        probe.direction = (is_c ? "c" : "t") + std::to_string(comp + 1);
        double s0 = (is_c ? c_width : t_width) / 16.0;
        std::vector<std::vector<CircleFunction>> quotients(levels);
        for (int l = 0; l < levels; ++l) {
            double s = s0 / std::pow(2.0, l);
            probe.steps.push_back(s);
            for (const auto& q : base) {
                DiscParameters shifted = q;
                (is_c ? shifted.c : shifted.t)(comp) += s;
                CircleFunction fd = (solve_at(shifted) - solve_at(q)).scaled(1.0 / s);
                quotients[l].push_back(fd);
            }
            probe.norms.push_back(lp_aggregate(quotients[l]));
        }
        for (int l = 0; l + 1 < levels; ++l) {
            std::vector<CircleFunction> diff;
            for (std::size_t i = 0; i < base.size(); ++i)
                diff.push_back(quotients[l + 1][i] - quotients[l][i]);
            probe.cauchy.push_back(lp_aggregate(diff));
        }
        double mx = *std::max_element(probe.norms.begin(), probe.norms.end());
        double mn = *std::min_element(probe.norms.begin(), probe.norms.end());
        probe.max_norm = mx;
        probe.drift = mn > 0.0 ? (mx - mn) / mn : 0.0;
        report.directions.push_back(std::move(probe));
    }

    // theta direction: node-shift quotients at 4, 2, 1 grid spacings.
    {
        DirectionProbe probe;
        probe.direction = "theta";
        const int n = psi.samples.grid().size();
        std::vector<std::vector<CircleFunction>> quotients(levels);
        std::vector<CircleFunction> solved;
        for (const auto& q : base) solved.push_back(solve_at(q));
        for (int l = 0; l < levels; ++l) {
            int shift = 1 << (levels - 1 - l);
            double s = 2.0 * std::numbers::pi * shift / n;
            probe.steps.push_back(s);
            for (const auto& u : solved) {
                Eigen::MatrixXcd rolled(u.dim(), n);
                for (int j = 0; j < n; ++j) rolled.col(j) = u.values().col((j + shift) % n);
                quotients[l].push_back(
                    CircleFunction(u.grid(), (rolled - u.values()) / s));
            }
            probe.norms.push_back(lp_aggregate(quotients[l]));
        }
        for (int l = 0; l + 1 < levels; ++l) {
            std::vector<CircleFunction> diff;
            for (std::size_t i = 0; i < base.size(); ++i)
                diff.push_back(quotients[l + 1][i] - quotients[l][i]);
            probe.cauchy.push_back(lp_aggregate(diff));
        }
        double mx = *std::max_element(probe.norms.begin(), probe.norms.end());
        double mn = *std::min_element(probe.norms.begin(), probe.norms.end());
        probe.max_norm = mx;
        probe.drift = mn > 0.0 ? (mx - mn) / mn : 0.0;
        report.directions.push_back(std::move(probe));
    }

    return report;
}

std::map<double, double> holder_report(const BishopSolution& sol,
                                       const std::vector<double>& alphas) {
    std::map<double, double> out;
    for (double a : alphas) out[a] = holder_norm(sol.u, a);
    return out;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fit_loglog: need >= 2 points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    LogLogFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    if (n > 2) {
        double ss = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = std::log(y[i]) - (fit.intercept + fit.slope * std::log(x[i]));
            ss += r * r;
        }
        fit.stderr_slope = std::sqrt(ss / (n - 2) / (sxx - sx * sx / n));
    }
    return fit;
}

} // namespace bishop
