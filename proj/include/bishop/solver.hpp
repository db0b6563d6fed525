#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bishop/manifolds.hpp"
#include "bishop/spectral.hpp"

namespace bishop {

/// Parameters (c, t, d) of one disc; every t_j >= 0.
struct DiscParameters {
    Vec c;
    Vec t;
    double d = 1.0;

    void validate() const;
};

/// Rectangular (c, t) boxes swept per axis plus a d list.  The same scalar
/// interval is applied to each c (resp. t) component.
struct ParameterGrid {
    double c_lo = 0.0, c_hi = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    int c_res = 1, t_res = 1;
    std::vector<double> d_values{1.0};
    int dim = 1;

    int total_points() const;
    DiscParameters point(int flat_index) const;
};

struct SolverOptions {
    double eps_picard = 1e-12;
    int max_iterations = 500;
    double contraction_target = 0.5;
    enum class Start { ConstantC, Zero, Custom } start = Start::ConstantC;
    std::optional<CircleFunction> custom_start;
};

struct BishopSolution {
    DiscParameters params;
    CircleFunction u{CircleGrid(8), 1};   // real n-vector boundary solution
    int iterations = 0;
    double contraction_factor = 0.0;
    bool localized = false;    // sup_j |u(theta_j)|_2 <= delta, so h_delta(u) = h(u)
    double residual = 0.0;     // sup norm of u + T h_delta(u) + t.Tpsi - c
    double delta = 0.0;
    double sup_u = 0.0;
};

/// One application of the Picard map Phi(u) = -T h_delta(u) - t.Tpsi + c.
CircleFunction picard_step(const CircleFunction& u, const CutoffGraph& g,
                           const CollarFunction& psi, const DiscParameters& params);

/// Fixed point of Phi by Picard iteration in the grid sup norm.
/// Throws NonContraction (increment ratios > 1 sustained over 10 steps)
/// or NoConvergence (iteration cap without reaching the residual floor).
BishopSolution solve(const CutoffGraph& g, const CollarFunction& psi,
                     const DiscParameters& params, const SolverOptions& opts = {});

struct DirectionProbe {
    std::string direction;            // "c1", "t1", ..., "theta"
    std::vector<double> steps;
    std::vector<double> norms;        // L^p over (parameter grid) x circle
    std::vector<double> cauchy;       // ||FD_{l+1} - FD_l||_p between levels
    double max_norm = 0.0;
    double drift = 0.0;               // (max-min)/min over levels
};

struct RegularityReport {
    std::vector<DirectionProbe> directions;
    double p = 2.0;
};

/// Finite-difference probe of W^{1,p} regularity in the parameters and in
/// theta: L^p norms of difference quotients at step sizes s, s/2, s/4.
/// Fewer than 3 levels -> InvalidInput.
RegularityReport finite_difference_regularity_probe(const CutoffGraph& g,
                                                    const CollarFunction& psi,
                                                    const ParameterGrid& grid, double p,
                                                    int levels = 3,
                                                    const SolverOptions& opts = {});

/// Grid Holder norms of the boundary solution for each alpha.
std::map<double, double> holder_report(const BishopSolution& sol,
                                       const std::vector<double>& alphas);

/// Fit slope of log(y) against log(x) by least squares; also returns the
/// standard error of the slope.
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
};
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

} // namespace bishop
