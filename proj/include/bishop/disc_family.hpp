#pragma once

#include <map>
#include <vector>

#include "bishop/solver.hpp"

namespace bishop {

/// An analytic disc H = P U assembled from a boundary solution:
/// U = u + i h(u) + i t.psi on the circle, extended inside by the
/// nonnegative-frequency part of its Fourier series.
struct AnalyticDisc {
    DiscParameters params;
    CircleFunction trace{CircleGrid(8), 1};   // complex n-vector boundary values
    Eigen::MatrixXcd series;                  // n x K coefficients, k = 0..K-1
    double attach_residual = 0.0;   // max over upper-arc nodes of |Im U - h(Re U)|
    double holo_residual = 0.0;     // max |negative-frequency coefficient|
    std::map<double, double> holder_norms;
    bool closed_form = false;       // true for the flat family

    /// Truncated power-series value at |zeta| < 1; OutOfDomain otherwise.
    Eigen::VectorXcd evaluate(Complex zeta) const;
};

struct DiscTolerances {
    double attach = 0.0;   // 0: use max(1e-8, 100 eps_picard (1 + |Dh|_probe))
    double holo = 0.0;
};

/// Assemble and certify a disc from a localized solution.  Throws
/// HolomorphyFailure / AttachmentFailure when residuals exceed tolerance,
/// InvalidInput when the solution is not localized.
AnalyticDisc build_disc(const BishopSolution& sol, const ManifoldGraph& g,
                        const CollarFunction& psi, const DiscTolerances& tol = {},
                        double eps_picard = 1e-12);

/// Flat model family, closed form U = -t.Tpsi + c + i t.psi (no iteration).
AnalyticDisc flat_disc(const DiscParameters& params, const CollarFunction& psi);

Eigen::VectorXcd evaluate_interior(const AnalyticDisc& disc, Complex zeta);

struct StabilityPoint {
    double d = 0.0;
    double deviation = 0.0;   // sobolev_norm(U(c,t,d) - U(c,t,0), p) on the circle
};

struct StabilityOptions {
    double p = 2.0;
    double contraction_target = 0.5;
    SolverOptions solver{};
};

/// Deviation of the dilated-family discs from the flat model, per d.
/// tau and delta are chosen once from the base graph and verified
/// admissible for every d in the list (uniform-in-d certificate).
std::vector<StabilityPoint> stability_sweep(const DilationFamily& fam, const Vec& c,
                                            const Vec& t, const std::vector<double>& d_list,
                                            const CollarFunction& psi,
                                            const StabilityOptions& opts = {});

/// Grid-aggregated variant: deviation(d) = L^p mean over a (c,t) grid of
/// the per-point circle deviations.
std::vector<StabilityPoint> stability_sweep_grid(const DilationFamily& fam,
                                                 const ParameterGrid& grid,
                                                 const std::vector<double>& d_list,
                                                 const CollarFunction& psi,
                                                 const StabilityOptions& opts = {});

} // namespace bishop
