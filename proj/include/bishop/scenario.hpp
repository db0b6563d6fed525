#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bishop/solver.hpp"

namespace bishop {

struct ManifoldSpec {
    std::string kind = "flat";   // flat | quadratic | c1profile | polynomial
    int dim = 1;
    std::vector<Mat> quad_coeffs;
    double beta = 0.5;
    Vec amplitude;
    std::vector<double> poly_coeffs;   // degrees 2, 3, ...

    ManifoldGraph build() const;
    nlohmann::json to_json() const;
    static ManifoldSpec from_json(const nlohmann::json& j);
};

/// One reproducible scenario: manifold, collar, grid, parameter boxes,
/// tolerances, toggles, seed.  CLI flags override the top-level scalars.
struct ScenarioConfig {
    ManifoldSpec manifold;
    std::string collar = "reference";
    int grid_n = 256;
    double p = 2.0;
    double contraction_target = 0.5;

    double c_lo = -0.01, c_hi = 0.01;
    double t_lo = 0.004, t_hi = 0.02;
    int c_res = 3, t_res = 3;
    std::vector<double> d_values{1.0};

    bool diag_holder = true;
    bool diag_stability = false;
    bool diag_regularity = false;

    double tol_attach = 0.0;     // 0: derived from eps_picard and |Dh|
    double tol_holo = 0.0;
    double eps_picard = 1e-12;
    double tau_override = 0.0;   // 0: certified choice
    double delta_override = 0.0;

    std::uint64_t seed = 20240901;
    std::string out_dir = "out";
    int jobs = 1;

    ParameterGrid parameter_grid() const;
    void validate() const;       // ConfigError listing the offending field

    nlohmann::json to_json() const;
    static ScenarioConfig from_json(const nlohmann::json& j);
    /// Parse a file; syntax errors are reported with a line number.
    static ScenarioConfig from_file(const std::string& path);
};

} // namespace bishop
