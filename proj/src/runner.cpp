#include "bishop/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace bishop {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CircleFunction random_real_function(const CircleGrid& grid, int dim, std::mt19937_64& rng,
                                    double scale = 1.0) {
    Eigen::MatrixXd v(dim, grid.size());
    for (int c = 0; c < dim; ++c)
        for (int j = 0; j < grid.size(); ++j) v(c, j) = scale * (2.0 * u01(rng) - 1.0);
    return CircleFunction::from_real(grid, v);
}

CircleFunction random_trig_poly(const CircleGrid& grid, int degree, std::mt19937_64& rng,
                                bool zero_mean) {
    const int n = grid.size();
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(1, n);
    for (int k = zero_mean ? 1 : 0; k <= degree; ++k) {
        double a = 2.0 * u01(rng) - 1.0;
        double b = 2.0 * u01(rng) - 1.0;
        for (int j = 0; j < n; ++j) {
            double th = grid.theta(j);
            v(0, j) += a * std::cos(k * th) + (k == 0 ? 0.0 : b * std::sin(k * th));
        }
    }
    return CircleFunction::from_real(grid, v);
}

CutoffGraph make_cutoff(const ScenarioConfig& cfg, const ManifoldGraph& g, double t_norm) {
    if (cfg.tau_override > 0.0 && cfg.delta_override > 0.0)
        return CutoffGraph(g, cfg.delta_override, cfg.tau_override);
    if (cfg.tau_override > 0.0) {
        // Bisect delta for the forced tau (no contraction certificate implied).
        double tau = cfg.tau_override;
        auto bound = [&](double delta) { return CutoffGraph(g, delta, tau).gradient_bound(); };
        if (bound(1.0) <= tau) return CutoffGraph(g, 1.0, tau);
        double lo = 1e-8, hi = 1.0;
        if (bound(lo) > tau)
            throw DegenerateManifold("make_cutoff: forced tau unattainable at delta = 1e-8");
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (bound(mid) <= tau ? lo : hi) = mid;
        }
        return CutoffGraph(g, lo, tau);
    }
    CutoffGraph cut = choose_tau_delta(g, cfg.contraction_target, t_norm);
    if (cfg.delta_override > 0.0) return CutoffGraph(g, cfg.delta_override, cut.tau());
    return cut;
}

json holder_to_json(const std::map<double, double>& h) {
    json out = json::object();
    for (const auto& [alpha, norm] : h) {
        std::ostringstream key;
        key << alpha;
        out[key.str()] = norm;
    }
    return out;
}

} // namespace

json RunReport::to_json() const {
    json j;
    j["schema"] = schema;
    j["config"] = config_echo;
    j["t_norm"] = t_norm;
    j["tau"] = tau;
    j["delta"] = delta;
    json pts = json::array();
    for (const auto& p : points) {
        json r;
        r["index"] = p.index;
        r["c"] = std::vector<double>(p.params.c.data(), p.params.c.data() + p.params.c.size());
        r["t"] = std::vector<double>(p.params.t.data(), p.params.t.data() + p.params.t.size());
        r["d"] = p.params.d;
        r["status"] = p.status;
        if (!p.detail.empty()) r["detail"] = p.detail;
        r["iterations"] = p.iterations;
        r["contraction_factor"] = p.contraction_factor;
        r["residual"] = p.residual;
        r["attach_residual"] = p.attach_residual;
        r["holo_residual"] = p.holo_residual;
        r["sup_u"] = p.sup_u;
        r["localized"] = p.localized;
        if (!p.holder.empty()) r["holder"] = holder_to_json(p.holder);
        pts.push_back(r);
    }
    j["points"] = pts;
    j["aggregates"] = aggregates;
    j["suites"] = suites;
    j["pass"] = pass;
    return j;
}

RunReport run(const ScenarioConfig& config) {
    config.validate();
    RunReport report;
    report.config_echo = config.to_json();

    const CircleGrid grid(config.grid_n);
    const CollarFunction psi = build_collar(grid);
    const ManifoldGraph base = config.manifold.build();
    const double t_norm = hilbert_sup_norm(grid);
    const CutoffGraph cutoff = make_cutoff(config, base, t_norm);
    report.t_norm = t_norm;
    report.tau = cutoff.tau();
    report.delta = cutoff.delta();

    const ParameterGrid pgrid = config.parameter_grid();
    const int total = pgrid.total_points();
    report.points.resize(total);

    SolverOptions sopts;
    sopts.eps_picard = config.eps_picard;
    sopts.contraction_target = config.contraction_target;

    DiscTolerances tol{config.tol_attach, config.tol_holo};
    const std::vector<double> alphas{0.5, 0.9};

    DilationFamily family{base};

    auto process_point = [&](int index) {
        PointRecord rec;
        rec.index = index;
        rec.params = pgrid.point(index);
        try {
            ManifoldGraph dilated = family.dilate(rec.params.d);
            CutoffGraph cut(dilated, cutoff.delta(), cutoff.tau());
            BishopSolution sol = solve(cut, psi, rec.params, sopts);
            rec.iterations = sol.iterations;
            rec.contraction_factor = sol.contraction_factor;
            rec.residual = sol.residual;
            rec.sup_u = sol.sup_u;
            rec.localized = sol.localized;
            AnalyticDisc disc = build_disc(sol, dilated, psi, tol, config.eps_picard);
            rec.attach_residual = disc.attach_residual;
            rec.holo_residual = disc.holo_residual;
            if (config.diag_holder)
                for (double a : alphas) rec.holder[a] = holder_norm(disc.trace, a);
            rec.status = "accepted";
        } catch (const NonContraction& e) {
            rec.status = "NonContraction";
            rec.detail = e.what();
        } catch (const NoConvergence& e) {
            rec.status = "NoConvergence";
            rec.detail = e.what();
        } catch (const HolomorphyFailure& e) {
            rec.status = "HolomorphyFailure";
            rec.detail = e.what();
        } catch (const AttachmentFailure& e) {
            rec.status = "AttachmentFailure";
            rec.detail = e.what();
        } catch (const Error& e) {
            rec.status = "Error";
            rec.detail = e.what();
        }
        report.points[index] = std::move(rec);
    };

    if (config.jobs <= 1) {
        for (int i = 0; i < total; ++i) process_point(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        int n_workers = std::min(config.jobs, total);
        for (int w = 0; w < n_workers; ++w)
            workers.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    process_point(i);
            });
        for (auto& t : workers) t.join();
    }

    int accepted = 0;
    double max_attach = 0.0, max_holo = 0.0, max_contraction = 0.0, max_residual = 0.0;
    double holder_bound = 0.0;
    for (const auto& p : report.points) {
        if (p.status == "accepted") {
            ++accepted;
            max_attach = std::max(max_attach, p.attach_residual);
            max_holo = std::max(max_holo, p.holo_residual);
            max_contraction = std::max(max_contraction, p.contraction_factor);
            max_residual = std::max(max_residual, p.residual);
            auto it = p.holder.find(0.9);
            if (it != p.holder.end()) holder_bound = std::max(holder_bound, it->second);
        }
    }
    report.aggregates = {{"accepted", accepted},
                         {"failed", total - accepted},
                         {"max_attach_residual", max_attach},
                         {"max_holo_residual", max_holo},
                         {"max_contraction_factor", max_contraction},
                         {"max_residual", max_residual},
                         {"holder09_uniform_bound", holder_bound}};

    bool suites_pass = true;
    report.suites = json::object();

    if (config.diag_stability) {
        json s;
        try {
            std::vector<double> d_list{0.5, 0.25, 0.125, 0.0625};
            Vec c_mid = Vec::Constant(base.dim, 0.5 * (config.c_lo + config.c_hi));
            Vec t_mid = Vec::Constant(base.dim, 0.5 * (config.t_lo + config.t_hi));
            StabilityOptions sto;
            sto.p = config.p;
            sto.contraction_target = config.contraction_target;
            sto.solver = sopts;
            auto pts = stability_sweep(family, c_mid, t_mid, d_list, psi, sto);
            bool decreasing = true;
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                xs.push_back(pts[i].d);
                ys.push_back(pts[i].deviation);
                if (i > 0 && !(pts[i].deviation < pts[i - 1].deviation)) decreasing = false;
            }
            LogLogFit fit = fit_loglog(xs, ys);
            s["deviations"] = ys;
            s["d"] = xs;
            s["slope"] = fit.slope;
            s["pass"] = decreasing && fit.slope >= 0.9 && ys.back() <= 1e-3;
        } catch (const Error& e) {
            s["pass"] = false;
            s["error"] = e.what();
        }
        suites_pass = suites_pass && s["pass"].get<bool>();
        report.suites["stability"] = s;
    }

    if (config.diag_regularity) {
        json s;
        try {
            ParameterGrid probe_grid = pgrid;
            probe_grid.c_res = std::min(probe_grid.c_res, 3);
            probe_grid.t_res = std::min(probe_grid.t_res, 3);
            probe_grid.d_values = {pgrid.d_values.front()};
            auto rep = finite_difference_regularity_probe(cutoff, psi, probe_grid, config.p, 3, sopts);
            bool ok = true;
            json dirs = json::object();
            for (const auto& d : rep.directions) {
                dirs[d.direction] = {{"steps", d.steps},
                                     {"norms", d.norms},
                                     {"cauchy", d.cauchy},
                                     {"drift", d.drift}};
                if (d.drift > 0.10) ok = false;
            }
            s["directions"] = dirs;
            s["pass"] = ok;
        } catch (const Error& e) {
            s["pass"] = false;
            s["error"] = e.what();
        }
        suites_pass = suites_pass && s["pass"].get<bool>();
        report.suites["regularity"] = s;
    }

    report.pass = (accepted == total) && suites_pass;
    return report;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

namespace {

SuiteResult suite_spectral(const ScenarioConfig& cfg) {
    const CircleGrid grid(cfg.grid_n);
    const int n = grid.size();
    std::mt19937_64 rng(cfg.seed);
    json d;
    double worst = 0.0;

    {   // T(cos k) = sin k, T(sin k) = -cos k for 1 <= k < N/2
        double err = 0.0;
        for (int k = 1; k < n / 2; ++k) {
            CircleFunction ck = CircleFunction::sample_scalar(
                grid, [k](double th) { return std::cos(k * th); });
            CircleFunction sk = CircleFunction::sample_scalar(
                grid, [k](double th) { return std::sin(k * th); });
            err = std::max(err, (hilbert_transform(ck) - sk).sup_norm());
            err = std::max(err, (hilbert_transform(sk) + ck).sup_norm());
        }
        d["conjugate_pairs_max_error"] = err;
        worst = std::max(worst, err);
    }
    {   // T^2 = -Id on zero-mean trig polynomials
        double err = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            CircleFunction f = random_trig_poly(grid, n / 4, rng, true);
            err = std::max(err, (hilbert_transform(hilbert_transform(f)) + f).sup_norm());
        }
        d["t_squared_max_error"] = err;
        worst = std::max(worst, err);
    }
    {   // round trip
        double err = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            CircleFunction f = random_trig_poly(grid, n / 4, rng, false);
            err = std::max(err, (fourier_synthesize(fourier_analyze(f)) - f).sup_norm());
        }
        d["roundtrip_max_error"] = err;
        worst = std::max(worst, err);
    }
    {   // T(1) = 0 and mean(Tf) = 0
        CircleFunction one = CircleFunction::sample_scalar(grid, [](double) { return 1.0; });
        double err = hilbert_transform(one).sup_norm();
        CircleFunction f = random_real_function(grid, 1, rng);
        err = std::max(err, std::abs(circle_mean(hilbert_transform(f))(0)));
        d["constants_max_error"] = err;
        worst = std::max(worst, err);
    }
    {   // Poisson identities
        double err = 0.0;
        for (int k : {0, 1, 3}) {
            CircleFunction ek = CircleFunction::sample_scalar_complex(
                grid, [k](double th) { return std::exp(kI * (k * th)); });
            for (Complex zeta : {Complex(0.3, 0.1), Complex(-0.2, 0.4)})
                err = std::max(err, std::abs(poisson_extend(ek, zeta)(0) - std::pow(zeta, k)));
        }
        CircleFunction u = random_trig_poly(grid, n / 4, rng, true);
        CircleFunction tu = hilbert_transform(u);
        CircleFunction analytic(grid, u.values() + kI * tu.values());
        err = std::max(err, std::abs(poisson_extend(analytic, Complex(0, 0))(0).imag()));
        err = std::max(err, negative_frequency_residual(analytic));
        d["poisson_max_error"] = err;
        worst = std::max(worst, err);
    }
    {   // probed operator norm never exceeds the exact circulant norm
        double exact = hilbert_sup_norm(grid);
        double probe = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            CircleFunction f = random_real_function(grid, 1, rng);
            probe = std::max(probe, hilbert_transform(f).sup_norm() / f.sup_norm());
        }
        d["t_norm_exact"] = exact;
        d["t_norm_probe"] = probe;
        if (probe > exact * (1.0 + 1e-12)) worst = std::max(worst, 1.0);
    }
    SuiteResult r;
    r.details = d;
    r.pass = worst <= 1e-12;
    r.details["pass"] = r.pass;
    return r;
}

SuiteResult suite_bishop(const ScenarioConfig& cfg) {
    const CircleGrid grid(cfg.grid_n);
    const CollarFunction psi = build_collar(grid);
    const ManifoldGraph base = cfg.manifold.build();
    const double t_norm = hilbert_sup_norm(grid);
    const CutoffGraph cut = choose_tau_delta(base, cfg.contraction_target, t_norm);
    std::mt19937_64 rng(cfg.seed);
    json d;
    bool pass = true;

    d["t_norm"] = t_norm;
    d["tau"] = cut.tau();
    d["delta"] = cut.delta();
    d["certificate"] = cut.tau() * t_norm;

    DiscParameters mid;
    mid.c = Vec::Constant(base.dim, 0.5 * (cfg.c_lo + cfg.c_hi));
    mid.t = Vec::Constant(base.dim, 0.5 * (cfg.t_lo + cfg.t_hi));

    {   // contraction on random pairs
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            CircleFunction u1 = random_real_function(grid, base.dim, rng, 2.0 * cut.delta());
            CircleFunction u2 = random_real_function(grid, base.dim, rng, 2.0 * cut.delta());
            double num = (picard_step(u1, cut, psi, mid) - picard_step(u2, cut, psi, mid)).sup_norm();
            double den = (u1 - u2).sup_norm();
            if (den > 0.0) worst = std::max(worst, num / den);
        }
        d["contraction_probe"] = worst;
        pass = pass && worst <= cfg.contraction_target + 1e-12;
    }
    {   // uniqueness across starts
        SolverOptions o1, o2, o3;
        o1.start = SolverOptions::Start::ConstantC;
        o2.start = SolverOptions::Start::Zero;
        o3.start = SolverOptions::Start::Custom;
        o3.custom_start = random_real_function(grid, base.dim, rng, cut.delta());
        BishopSolution s1 = solve(cut, psi, mid, o1);
        BishopSolution s2 = solve(cut, psi, mid, o2);
        BishopSolution s3 = solve(cut, psi, mid, o3);
        double spread = std::max((s1.u - s2.u).sup_norm(), (s1.u - s3.u).sup_norm());
        d["uniqueness_spread"] = spread;
        d["residual"] = s1.residual;
        d["localized"] = s1.localized;
        pass = pass && spread <= 1e-10 && s1.residual <= 10.0 * cfg.eps_picard;
        if (s1.localized) {
            // localized fixed point solves the uncut equation verbatim
            CircleFunction hu = CircleFunction::from_real(
                grid, [&]() {
                    Eigen::MatrixXd m(base.dim, grid.size());
                    for (int j = 0; j < grid.size(); ++j)
                        m.col(j) = base.value(s1.u.values().col(j).real());
                    return m;
                }());
            CircleFunction t_psi = hilbert_transform(psi.samples);
            Eigen::MatrixXcd rhs = -hilbert_transform(hu).values();
            for (int c = 0; c < base.dim; ++c)
                rhs.row(c) -= mid.t(c) * t_psi.values().row(0);
            rhs.colwise() += mid.c.cast<Complex>();
            double orig_residual = (s1.u.values() - rhs).cwiseAbs().maxCoeff();
            d["original_equation_residual"] = orig_residual;
            pass = pass && orig_residual <= 10.0 * cfg.eps_picard;
        }
    }
    {   // uniform-in-d sup bound
        CircleFunction t_psi = hilbert_transform(psi.samples);
        double bound = mid.c.cwiseAbs().maxCoeff() +
                       mid.t.maxCoeff() * t_psi.sup_norm() +
                       t_norm * 2.0 * cut.delta() * cut.tau();
        DilationFamily fam{base};
        double worst = 0.0;
        json sups = json::array();
        for (double dd : {0.0, 0.125, 0.25, 0.5, 1.0}) {
            CutoffGraph cd(fam.dilate(dd), cut.delta(), cut.tau());
            DiscParameters q = mid;
            q.d = dd;
            BishopSolution s = solve(cd, psi, q);
            sups.push_back(s.u.sup_norm());
            worst = std::max(worst, s.u.sup_norm());
        }
        d["d_uniform_sup"] = sups;
        d["d_uniform_bound"] = bound;
        pass = pass && worst <= bound;
    }
    SuiteResult r;
    r.pass = pass;
    d["pass"] = pass;
    r.details = d;
    return r;
}

SuiteResult suite_stability(const ScenarioConfig& cfg) {
    ScenarioConfig c2 = cfg;
    c2.diag_stability = true;
    const CircleGrid grid(c2.grid_n);
    const CollarFunction psi = build_collar(grid);
    ManifoldGraph base = c2.manifold.build();
    if (base.tag == "flat") {
        // the flat family is its own limit; use the reference quadratic edge
        base = quadratic_graph({Mat::Identity(1, 1)});
    }
    DilationFamily fam{base};
    StabilityOptions sto;
    sto.p = c2.p;
    sto.contraction_target = c2.contraction_target;
    Vec c_mid = Vec::Constant(base.dim, 0.5 * (c2.c_lo + c2.c_hi));
    Vec t_mid = Vec::Constant(base.dim, 0.5 * (c2.t_lo + c2.t_hi));
    std::vector<double> d_list{0.5, 0.25, 0.125, 0.0625};
    auto pts = stability_sweep(fam, c_mid, t_mid, d_list, psi, sto);
    std::vector<double> xs, ys;
    bool decreasing = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        xs.push_back(pts[i].d);
        ys.push_back(pts[i].deviation);
        if (i > 0 && !(pts[i].deviation < pts[i - 1].deviation)) decreasing = false;
    }
    LogLogFit fit = fit_loglog(xs, ys);
    SuiteResult r;
    r.details = {{"d", xs}, {"deviation", ys}, {"slope", fit.slope}};
    r.pass = decreasing && fit.slope >= 0.9 && ys.back() <= 1e-3;
    r.details["pass"] = r.pass;
    return r;
}

SuiteResult suite_wedge(const ScenarioConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    json d;
    bool pass = true;

    {   // membership arithmetic and the shrunk inclusion, model wedge n = 2
        Wedge w = model_wedge(2, 0.1);
        CVec z1(2), z2(2), z3(2);
        z1 << Complex(0.3, -1.0), Complex(-0.2, -1.0);
        z2 << Complex(0.0, -0.01), Complex(0.0, -1.0);
        z3 << Complex(0.0, 0.0), Complex(0.0, -1.0);
        bool ok = w.member(z1) && w.member_shrunk(z1);
        ok = ok && w.member(z2) && !w.member_shrunk(z2);
        ok = ok && !w.member(z3);
        int inclusion_fail = 0;
        for (int i = 0; i < 500; ++i) {
            CVec z(2);
            for (int j = 0; j < 2; ++j) z(j) = Complex(2.0 * u01(rng) - 1.0, -u01(rng));
            if (w.member_shrunk(z) && !w.member(z)) ++inclusion_fail;
        }
        d["membership_ok"] = ok;
        d["shrunk_inclusion_failures"] = inclusion_fail;
        pass = pass && ok && inclusion_fail == 0;
    }
    {   // edge-distance comparability constant, shrunk-wedge monotonicity in delta
        std::vector<CVec> samples;
        for (int i = 0; i < 200; ++i) {
            CVec z(2);
            for (int j = 0; j < 2; ++j)
                z(j) = Complex(0.4 * (2.0 * u01(rng) - 1.0), -0.5 * u01(rng) - 1e-4);
            samples.push_back(z);
        }
        json cs = json::array();
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (double delta : {0.05, 0.1, 0.2}) {
            Wedge w = model_wedge(2, delta);
            EdgeDistanceReport rep = edge_distance_comparability(w, samples);
            cs.push_back({{"delta", delta}, {"C", rep.comparability}, {"used", rep.used}});
            if (rep.comparability > prev + 1e-12) monotone = false;
            prev = rep.comparability;
        }
        d["comparability"] = cs;
        d["monotone_in_delta"] = monotone;
        pass = pass && monotone;
    }
    {   // flat fill at reduced resolution
        const CircleGrid grid(256);
        const CollarFunction psi = build_collar(grid);
        std::vector<AnalyticDisc> discs;
        const int m = 10;
        for (int ic = 0; ic < m; ++ic)
            for (int it = 0; it < m; ++it) {
                DiscParameters q;
                q.c = Vec::Constant(1, -0.07 + 0.14 * ic / (m - 1));
                q.t = Vec::Constant(1, 0.004 + (0.08 - 0.004) * it / (m - 1));
                discs.push_back(flat_disc(q, psi));
            }
        double spacing = std::max(0.14 / (m - 1), (0.08 - 0.004) / (m - 1));
        Wedge w = model_wedge(1, 0.1);
        FillOptions fo;
        fo.samples = 200;
        fo.seed = cfg.seed;
        FillReport rep = wedge_fill_check(discs, w, 0.05, 2.0 * spacing, fo);
        d["flat_fill_fraction"] = rep.fraction;
        d["flat_fill_worst"] = rep.worst_distance;
        pass = pass && rep.fraction == 1.0;
    }
    {   // cone invariant: closure cap stays in the open model wedge
        Cone cone = model_cone(2, 0.2, 0.5);
        int bad = 0;
        for (int i = 0; i < 2000; ++i) {
            Vec v(4);
            for (int j = 0; j < 4; ++j) v(j) = 2.0 * u01(rng) - 1.0;
            v *= 0.5 * u01(rng) / std::max(v.norm(), 1e-12);
            if (!cone.contains(v)) continue;
            if (v.norm() == 0.0) continue;
            if (!(v(2) < 0.0 && v(3) < 0.0)) ++bad;
        }
        d["cone_violations"] = bad;
        pass = pass && bad == 0;
    }
    SuiteResult r;
    r.pass = pass;
    d["pass"] = pass;
    r.details = d;
    return r;
}

SuiteResult suite_prop41(const ScenarioConfig& cfg) {
    json d;
    bool pass = true;
    // N >= 512 keeps the collar's Nyquist leak below the 1e-8 holomorphy gate.
    const CircleGrid grid(std::max(cfg.grid_n, 512));
    const CollarFunction psi = build_collar(grid);

    {   // identity map against the flat edge
        std::vector<AnalyticDisc> discs;
        const int m = 6;
        for (int ic = 0; ic < m; ++ic)
            for (int it = 0; it < m; ++it) {
                DiscParameters q;
                q.c = Vec::Constant(1, -0.3 + 0.6 * ic / (m - 1));
                q.t = Vec::Constant(1, 0.1 + 1.4 * it / (m - 1));
                discs.push_back(flat_disc(q, psi));
            }
        DefiningFunction rho_m = DefiningFunction::flat_edge_distance_sq(1);
        HoloMap identity = [](const CVec& z) { return z; };
        KeyEstimateReport rep = key_estimate_check(identity, discs, rho_m, flat_graph(1));
        d["identity"] = {{"C", rep.c_fit},
                         {"slope", rep.holder_slope},
                         {"band_lo", rep.holder_band_lo},
                         {"pass", rep.pass}};
        pass = pass && rep.pass && rep.holder_slope >= 0.99;

        // consistency with the edge-distance constant (n = 1: C_edge = 1)
        std::mt19937_64 rng(cfg.seed);
        std::vector<CVec> samples;
        for (int i = 0; i < 200; ++i) {
            CVec z(1);
            z(0) = Complex(2.0 * u01(rng) - 1.0, -u01(rng));
            if (std::abs(z(0)) < 1.0) samples.push_back(z);
        }
        EdgeDistanceReport ed = edge_distance_comparability(model_wedge(1, 0.1), samples);
        d["identity"]["edge_C"] = ed.comparability;
        double ratio = rep.c_fit / ed.comparability;
        d["identity"]["C_ratio"] = ratio;
        pass = pass && ratio >= 0.5 && ratio <= 2.0;
    }
    {   // disc automorphism of the ball model, edge on the boundary circle
        ManifoldGraph edge = polynomial_graph({-0.5, 0.0, -0.125, 0.0, -0.0625});
        const double t_norm = hilbert_sup_norm(grid);
        CutoffGraph cut = choose_tau_delta(edge, cfg.contraction_target, t_norm);
        std::vector<AnalyticDisc> discs;
        for (double cc : {-0.005, 0.0, 0.005})
            for (double tt : {0.004, 0.007, 0.01}) {
                DiscParameters q;
                q.c = Vec::Constant(1, cc);
                q.t = Vec::Constant(1, tt);
                discs.push_back(build_disc(solve(cut, psi, q), edge, psi));
            }
        const Complex a{0.3, 0.0};
        HoloMap mobius = [a](const CVec& z) {
            CVec w(1);
            Complex s = z(0) + kI;
            w(0) = -kI + (s - a) / (1.0 - a * s);
            return w;
        };
        DefiningFunction rho_m = DefiningFunction::from_evaluator(
            1,
            [](const CVec& w) {
                double g = std::norm(w(0) + kI) - 1.0;
                return g * g;
            },
            Smoothness::C2);
        KeyEstimateReport rep = key_estimate_check(mobius, discs, rho_m, edge);
        d["automorphism"] = {{"C", rep.c_fit},
                             {"slope", rep.holder_slope},
                             {"band_lo", rep.holder_band_lo},
                             {"pass", rep.pass}};
        pass = pass && rep.pass;

        // deliberate hypothesis violation must raise
        HoloMap offset = [&mobius](const CVec& z) {
            CVec w = mobius(z);
            w(0) += 0.01;
            return w;
        };
        bool raised = false;
        try {
            key_estimate_check(offset, discs, rho_m, edge);
        } catch (const HypothesisViolation&) {
            raised = true;
        }
        d["violation_raised"] = raised;
        pass = pass && raised;
    }
    SuiteResult r;
    r.pass = pass;
    d["pass"] = pass;
    r.details = d;
    return r;
}

} // namespace

SuiteResult verify_suite(const std::string& name, const ScenarioConfig& config) {
    if (name == "spectral") return suite_spectral(config);
    if (name == "bishop") return suite_bishop(config);
    if (name == "stability") return suite_stability(config);
    if (name == "wedge") return suite_wedge(config);
    if (name == "prop41") return suite_prop41(config);
    throw InvalidInput("verify: unknown suite '" + name +
                       "' (expected spectral|bishop|stability|wedge|prop41)");
}

bool validate_report_json(const nlohmann::json& report, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!report.is_object()) return fail("report: not an object");
    if (report.value("schema", "") != "bishop-discs-report/1")
        return fail("schema: missing or unsupported");
    for (const char* key : {"config", "aggregates", "suites"})
        if (!report.contains(key) || !report.at(key).is_object())
            return fail(std::string(key) + ": missing object");
    for (const char* key : {"t_norm", "tau", "delta"})
        if (!report.contains(key) || !report.at(key).is_number())
            return fail(std::string(key) + ": missing number");
    if (!report.contains("pass") || !report.at("pass").is_boolean())
        return fail("pass: missing boolean");
    if (!report.contains("points") || !report.at("points").is_array())
        return fail("points: missing array");
    for (const auto& p : report.at("points")) {
        for (const char* key : {"index", "iterations"})
            if (!p.contains(key) || !p.at(key).is_number_integer())
                return fail(std::string("point.") + key + ": missing integer");
        for (const char* key :
             {"d", "contraction_factor", "residual", "attach_residual", "holo_residual", "sup_u"})
            if (!p.contains(key) || !p.at(key).is_number())
                return fail(std::string("point.") + key + ": missing number");
        if (!p.contains("status") || !p.at("status").is_string())
            return fail("point.status: missing string");
        for (const char* key : {"c", "t"})
            if (!p.contains(key) || !p.at(key).is_array())
                return fail(std::string("point.") + key + ": missing array");
        if (!p.contains("localized") || !p.at("localized").is_boolean())
            return fail("point.localized: missing boolean");
    }
    return true;
}

void write_report_files(const RunReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "report.json");
        out << report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream csv(fs::path(out_dir) / "sweep.csv");
        csv << "index,c,t,d,status,iterations,contraction_factor,residual,"
               "attach_residual,holo_residual,sup_u,localized\n";
        csv.precision(17);
        for (const auto& p : report.points) {
            csv << p.index << ",";
            for (int i = 0; i < p.params.c.size(); ++i)
                csv << p.params.c(i) << (i + 1 < p.params.c.size() ? ";" : "");
            csv << ",";
            for (int i = 0; i < p.params.t.size(); ++i)
                csv << p.params.t(i) << (i + 1 < p.params.t.size() ? ";" : "");
            csv << "," << p.params.d << "," << p.status << "," << p.iterations << ","
                << p.contraction_factor << "," << p.residual << "," << p.attach_residual << ","
                << p.holo_residual << "," << p.sup_u << "," << (p.localized ? 1 : 0) << "\n";
        }
    }
    {
        // Timestamps live in a sidecar so the main report is byte-stable.
        auto now = std::chrono::system_clock::now();
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
        json meta = {{"written_at_unix", secs.count()}};
        std::ofstream out(fs::path(out_dir) / "report.meta.json");
        out << meta.dump(2) << "\n";
    }
}

std::string hopf_triples_csv(const HopfReport& report) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "one_minus_abs_zeta,abs_rho,dist_edge\n";
    for (const auto& t : report.triples)
        csv << t.one_minus_r << "," << t.abs_rho << "," << t.dist_edge << "\n";
    return csv.str();
}

json disc_to_json(const AnalyticDisc& disc) {
    json j;
    j["c"] = std::vector<double>(disc.params.c.data(),
                                 disc.params.c.data() + disc.params.c.size());
    j["t"] = std::vector<double>(disc.params.t.data(),
                                 disc.params.t.data() + disc.params.t.size());
    j["d"] = disc.params.d;
    j["n"] = disc.trace.nodes();
    json re = json::array(), im = json::array();
    for (int c = 0; c < disc.trace.dim(); ++c) {
        std::vector<double> rr(disc.trace.nodes()), ii(disc.trace.nodes());
        for (int k = 0; k < disc.trace.nodes(); ++k) {
            rr[k] = disc.trace.values()(c, k).real();
            ii[k] = disc.trace.values()(c, k).imag();
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["trace_re"] = re;
    j["trace_im"] = im;
    j["attach_residual"] = disc.attach_residual;
    j["holo_residual"] = disc.holo_residual;
    if (!disc.holder_norms.empty()) j["holder"] = holder_to_json(disc.holder_norms);
    j["closed_form"] = disc.closed_form;
    return j;
}

json flat_family_json(const ScenarioConfig& config) {
    const CircleGrid grid(config.grid_n);
    const CollarFunction psi = build_collar(grid);
    ParameterGrid pgrid = config.parameter_grid();
    pgrid.d_values = {0.0};
    json discs = json::array();
    for (int i = 0; i < pgrid.total_points(); ++i) {
        AnalyticDisc disc = flat_disc(pgrid.point(i), psi);
        disc.holder_norms[0.9] = holder_norm(disc.trace, 0.9);
        discs.push_back(disc_to_json(disc));
    }
    return json{{"schema", "bishop-discs-flat-family/1"},
                {"grid_n", config.grid_n},
                {"discs", discs}};
}

} // namespace bishop
