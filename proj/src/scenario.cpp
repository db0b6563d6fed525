#include "bishop/scenario.hpp"

#include <fstream>
#include <sstream>

namespace bishop {

using nlohmann::json;

ManifoldGraph ManifoldSpec::build() const {
    if (kind == "flat") return flat_graph(dim);
    if (kind == "quadratic") {
        if (static_cast<int>(quad_coeffs.size()) != dim)
            throw ConfigError("manifold.coefficients: need one n x n matrix per component");
        return quadratic_graph(quad_coeffs);
    }
    if (kind == "c1profile") {
        Vec amp = amplitude.size() == dim ? amplitude : Vec::Ones(dim);
        return c1_profile_graph(dim, beta, amp);
    }
    if (kind == "polynomial") {
        if (dim != 1) throw ConfigError("manifold.kind polynomial supports dim = 1");
        return polynomial_graph(poly_coeffs);
    }
    throw ConfigError("manifold.kind: unknown kind '" + kind + "'");
}

json ManifoldSpec::to_json() const {
    json j;
    j["kind"] = kind;
    j["dim"] = dim;
    if (kind == "quadratic") {
        json rows = json::array();
        for (const auto& m : quad_coeffs) {
            json mat = json::array();
            for (int r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
                mat.push_back(row);
            }
            rows.push_back(mat);
        }
        j["coefficients"] = rows;
    } else if (kind == "c1profile") {
        j["beta"] = beta;
        json amp = json::array();
        for (int i = 0; i < amplitude.size(); ++i) amp.push_back(amplitude(i));
        j["amplitude"] = amp;
    } else if (kind == "polynomial") {
        j["coefficients"] = poly_coeffs;
    }
    return j;
}

ManifoldSpec ManifoldSpec::from_json(const json& j) {
    ManifoldSpec spec;
    spec.kind = j.value("kind", "flat");
    spec.dim = j.value("dim", 1);
    if (spec.dim < 1 || spec.dim > 3) throw ConfigError("manifold.dim: expected 1..3");
    if (spec.kind == "quadratic") {
        if (!j.contains("coefficients"))
            throw ConfigError("manifold.coefficients: required for quadratic");
        for (const auto& mat : j.at("coefficients")) {
            Mat m(spec.dim, spec.dim);
            for (int r = 0; r < spec.dim; ++r)
                for (int c = 0; c < spec.dim; ++c) m(r, c) = mat.at(r).at(c).get<double>();
            spec.quad_coeffs.push_back(m);
        }
    } else if (spec.kind == "c1profile") {
        spec.beta = j.value("beta", 0.5);
        if (!(spec.beta > 0.0 && spec.beta < 1.0))
            throw ConfigError("manifold.beta: expected a value in (0,1)");
        spec.amplitude = Vec::Ones(spec.dim);
        if (j.contains("amplitude")) {
            auto a = j.at("amplitude");
            if (static_cast<int>(a.size()) != spec.dim)
                throw ConfigError("manifold.amplitude: size must equal dim");
            for (int i = 0; i < spec.dim; ++i) spec.amplitude(i) = a.at(i).get<double>();
        }
    } else if (spec.kind == "polynomial") {
        if (j.contains("coefficients"))
            spec.poly_coeffs = j.at("coefficients").get<std::vector<double>>();
    } else if (spec.kind != "flat") {
        throw ConfigError("manifold.kind: unknown kind '" + spec.kind + "'");
    }
    return spec;
}

ParameterGrid ScenarioConfig::parameter_grid() const {
    ParameterGrid g;
    g.c_lo = c_lo;
    g.c_hi = c_hi;
    g.t_lo = t_lo;
    g.t_hi = t_hi;
    g.c_res = c_res;
    g.t_res = t_res;
    g.d_values = d_values;
    g.dim = manifold.dim;
    return g;
}

void ScenarioConfig::validate() const {
    if (grid_n < 8 || grid_n % 2 != 0) throw ConfigError("grid_n: must be even and >= 8");
    if (!(p > 1.0)) throw ConfigError("p: must be > 1");
    if (!(contraction_target > 0.0 && contraction_target < 1.0))
        throw ConfigError("contraction_target: must lie in (0,1)");
    if (!(c_hi >= c_lo)) throw ConfigError("boxes.c: hi < lo");
    if (!(t_hi >= t_lo) || t_lo < 0.0) throw ConfigError("boxes.t: need 0 <= lo <= hi");
    if (c_res < 1 || t_res < 1) throw ConfigError("resolution: must be >= 1");
    if (d_values.empty()) throw ConfigError("boxes.d: empty");
    if (!(eps_picard > 0.0)) throw ConfigError("tolerances.picard: must be > 0");
    if (tol_attach < 0.0 || tol_holo < 0.0) throw ConfigError("tolerances: must be >= 0");
    if (collar != "reference") throw ConfigError("collar: only 'reference' is available");
    if (jobs < 1) throw ConfigError("jobs: must be >= 1");
    manifold.build();   // surfaces manifold spec errors
}

json ScenarioConfig::to_json() const {
    json j;
    j["schema"] = "bishop-discs-scenario/1";
    j["manifold"] = manifold.to_json();
    j["collar"] = collar;
    j["grid_n"] = grid_n;
    j["p"] = p;
    j["contraction_target"] = contraction_target;
    j["boxes"] = {{"c", {c_lo, c_hi}}, {"t", {t_lo, t_hi}}, {"d", d_values}};
    j["resolution"] = {{"c", c_res}, {"t", t_res}};
    j["diagnostics"] = {{"holder", diag_holder},
                        {"stability", diag_stability},
                        {"regularity", diag_regularity}};
    json tol;
    tol["picard"] = eps_picard;
    if (tol_attach > 0.0) tol["attach"] = tol_attach;
    if (tol_holo > 0.0) tol["holo"] = tol_holo;
    j["tolerances"] = tol;
    if (tau_override > 0.0) j["tau"] = tau_override;
    if (delta_override > 0.0) j["delta"] = delta_override;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["jobs"] = jobs;
    return j;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    ScenarioConfig cfg;
    if (j.contains("manifold")) cfg.manifold = ManifoldSpec::from_json(j.at("manifold"));
    cfg.collar = j.value("collar", cfg.collar);
    cfg.grid_n = j.value("grid_n", cfg.grid_n);
    cfg.p = j.value("p", cfg.p);
    cfg.contraction_target = j.value("contraction_target", cfg.contraction_target);
    if (j.contains("boxes")) {
        const auto& b = j.at("boxes");
        if (b.contains("c")) {
            cfg.c_lo = b.at("c").at(0).get<double>();
            cfg.c_hi = b.at("c").at(1).get<double>();
        }
        if (b.contains("t")) {
            cfg.t_lo = b.at("t").at(0).get<double>();
            cfg.t_hi = b.at("t").at(1).get<double>();
        }
        if (b.contains("d")) cfg.d_values = b.at("d").get<std::vector<double>>();
    }
    if (j.contains("resolution")) {
        cfg.c_res = j.at("resolution").value("c", cfg.c_res);
        cfg.t_res = j.at("resolution").value("t", cfg.t_res);
    }
    if (j.contains("diagnostics")) {
        const auto& d = j.at("diagnostics");
        cfg.diag_holder = d.value("holder", cfg.diag_holder);
        cfg.diag_stability = d.value("stability", cfg.diag_stability);
        cfg.diag_regularity = d.value("regularity", cfg.diag_regularity);
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        cfg.eps_picard = t.value("picard", cfg.eps_picard);
        cfg.tol_attach = t.value("attach", 0.0);
        cfg.tol_holo = t.value("holo", 0.0);
    }
    cfg.tau_override = j.value("tau", 0.0);
    cfg.delta_override = j.value("delta", 0.0);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace bishop
