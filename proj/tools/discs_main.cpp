// Command-line driver: configuration-driven sweeps and verification suites.
// Exit codes: 0 pass, 1 invariant failure, 2 usage/config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bishop/runner.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("BISHOP_DISCS_OUT")) return env;
    return "out";
}

struct Overrides {
    int grid_n = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    int jobs = 0;
};

void apply(bishop::ScenarioConfig& cfg, const Overrides& ov) {
    if (ov.grid_n > 0) cfg.grid_n = ov.grid_n;
    if (ov.seed_set) cfg.seed = ov.seed;
    if (!ov.out.empty()) cfg.out_dir = ov.out;
    if (ov.jobs > 0) cfg.jobs = ov.jobs;
    cfg.validate();
}

bishop::ScenarioConfig load_config(const std::string& path, const Overrides& ov) {
    bishop::ScenarioConfig cfg;
    if (!path.empty()) cfg = bishop::ScenarioConfig::from_file(path);
    if (cfg.out_dir == "out") cfg.out_dir = default_out_dir();
    apply(cfg, ov);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic discs glued to totally real edges: sweeps and verification"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    std::string suite_name;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("config", config_path, "scenario JSON file");
        if (config_required) opt->required();
        cmd->add_option("--grid-n", ov.grid_n, "override circle grid size");
        cmd->add_option("--seed", ov.seed, "override RNG seed")
            ->each([&](const std::string&) { ov.seed_set = true; });
        cmd->add_option("--out", ov.out, "override output directory");
        cmd->add_option("--jobs", ov.jobs, "worker pool size for sweeps");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "execute a scenario sweep");
    add_common(cmd_run, true);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a named invariant suite");
    cmd_verify->add_option("suite", suite_name, "spectral|bishop|stability|wedge|prop41")
        ->required();
    add_common(cmd_verify, false);

    CLI::App* cmd_flat = app.add_subcommand("flat", "emit the closed-form flat family");
    add_common(cmd_flat, false);

    CLI::App* cmd_plots = app.add_subcommand(
        "export-plots", "emit (1-|zeta|, |rho(H)|, dist(H,E)) CSV for the ball model");
    add_common(cmd_plots, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            bishop::ScenarioConfig cfg = load_config(config_path, ov);
            bishop::RunReport report = bishop::run(cfg);
            bishop::write_report_files(report, cfg.out_dir);
            std::cout << (report.pass ? "PASS" : "FAIL") << "  accepted "
                      << report.aggregates["accepted"] << "/" << report.points.size()
                      << "  report: " << cfg.out_dir << "/report.json\n";
            return report.pass ? 0 : 1;
        }
        if (cmd_verify->parsed()) {
            bishop::ScenarioConfig cfg = load_config(config_path, ov);
            bishop::SuiteResult result = bishop::verify_suite(suite_name, cfg);
            std::cout << result.details.dump(2) << "\n";
            std::cout << (result.pass ? "PASS" : "FAIL") << "  suite " << suite_name << "\n";
            return result.pass ? 0 : 1;
        }
        if (cmd_flat->parsed()) {
            bishop::ScenarioConfig cfg = load_config(config_path, ov);
            std::filesystem::create_directories(cfg.out_dir);
            auto path = std::filesystem::path(cfg.out_dir) / "flat_family.json";
            std::ofstream out(path);
            out << bishop::flat_family_json(cfg).dump(2) << "\n";
            std::cout << "wrote " << path.string() << "\n";
            return 0;
        }
        if (cmd_plots->parsed()) {
            bishop::ScenarioConfig cfg = load_config(config_path, ov);
            // Ball model with the quadratic edge hanging inside; one mid disc.
            const bishop::CircleGrid grid(std::max(cfg.grid_n, 512));
            const bishop::CollarFunction psi = bishop::build_collar(grid);
            bishop::ManifoldGraph edge =
                bishop::quadratic_graph({-bishop::Mat::Identity(1, 1)});
            double t_norm = bishop::hilbert_sup_norm(grid);
            bishop::CutoffGraph cut =
                bishop::choose_tau_delta(edge, cfg.contraction_target, t_norm);
            bishop::DiscParameters q;
            q.c = bishop::Vec::Constant(1, 0.005);
            q.t = bishop::Vec::Constant(1, 0.02);
            bishop::AnalyticDisc disc =
                bishop::build_disc(bishop::solve(cut, psi, q), edge, psi);
            bishop::CVec center(1);
            center << bishop::Complex(0.0, -1.0);
            bishop::HopfReport hopf =
                bishop::hopf_bound_check(disc, bishop::DefiningFunction::ball(center, 1.0), edge);
            std::filesystem::create_directories(cfg.out_dir);
            auto path = std::filesystem::path(cfg.out_dir) / "hopf_triples.csv";
            std::ofstream out(path);
            out << bishop::hopf_triples_csv(hopf);
            std::cout << "wrote " << path.string() << "  C_hopf=" << hopf.c_hopf
                      << " C_chain=" << hopf.c_chain << "\n";
            return 0;
        }
    } catch (const bishop::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bishop::InvalidInput& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const bishop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
