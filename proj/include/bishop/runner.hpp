#pragma once

#include "bishop/geometry.hpp"
#include "bishop/scenario.hpp"

namespace bishop {

struct PointRecord {
    int index = 0;
    DiscParameters params;
    std::string status;          // "accepted" or the typed failure name
    std::string detail;
    int iterations = 0;
    double contraction_factor = 0.0;
    double residual = 0.0;
    double attach_residual = 0.0;
    double holo_residual = 0.0;
    double sup_u = 0.0;
    bool localized = false;
    std::map<double, double> holder;
};

struct RunReport {
    std::string schema = "bishop-discs-report/1";
    nlohmann::json config_echo;
    double t_norm = 0.0;
    double tau = 0.0;
    double delta = 0.0;
    std::vector<PointRecord> points;
    nlohmann::json aggregates;
    nlohmann::json suites;
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Execute a scenario: solve/build/diagnose every grid point, aggregate.
/// Per-point failures are data, never fatal.
RunReport run(const ScenarioConfig& config);

struct SuiteResult {
    bool pass = false;
    nlohmann::json details;
};

/// Named invariant suites: spectral, bishop, stability, wedge, prop41.
/// Unknown name -> InvalidInput.
SuiteResult verify_suite(const std::string& name, const ScenarioConfig& config);

/// Structural check of a report document against the shipped schema.
bool validate_report_json(const nlohmann::json& report, std::string* why = nullptr);

/// Write report.json, sweep.csv and the timestamp sidecar under out_dir;
/// the main report bytes depend only on config + seed.
void write_report_files(const RunReport& report, const std::string& out_dir);

/// CSV rows (1-|zeta|, |rho(H)|, dist(H,E)) for external plotting.
std::string hopf_triples_csv(const HopfReport& report);

/// Closed-form flat family export for a (c,t) grid.
nlohmann::json flat_family_json(const ScenarioConfig& config);

/// Disc export record: parameters, N, re/im arrays, residuals, norms.
nlohmann::json disc_to_json(const AnalyticDisc& disc);

} // namespace bishop
