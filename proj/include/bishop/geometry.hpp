#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bishop/disc_family.hpp"
#include "bishop/manifolds.hpp"

namespace bishop {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using HoloMap = std::function<CVec(const CVec&)>;

enum class Smoothness { C1, C2 };

/// Real-valued defining function with Wirtinger gradient dr/dz_j and complex
/// Hessian d^2 r / dz_j dzbar_k; analytic where available, otherwise built
/// from centered differences with step 1e-5 (1 + |z|).
struct DefiningFunction {
    int dim = 1;
    std::function<double(const CVec&)> value;
    std::function<CVec(const CVec&)> grad_z;
    std::function<CMat(const CVec&)> hessian;
    Smoothness cls = Smoothness::C2;

    static DefiningFunction ball(const CVec& center, double radius);
    static DefiningFunction ellipsoid(const Vec& coeffs);   // sum a_j |z_j|^2 - 1
    static DefiningFunction linear_re(int dim, int j);
    static DefiningFunction linear_im(int dim, int j);
    /// phi_j(z) = Im z_j - h_j(Re z); derivatives of h by finite differences.
    static DefiningFunction graph_face(const ManifoldGraph& g, int j, Smoothness cls);
    /// sum_j (Im z_j)^2: nonnegative, strictly psh, zero set = R^n.
    static DefiningFunction flat_edge_distance_sq(int dim);
    static DefiningFunction from_evaluator(int dim, std::function<double(const CVec&)> f,
                                           Smoothness cls);
};

/// Levi form L(rho, p, v) = sum_{j,k} rho_{z_j zbar_k}(p) v_j vbar_k,
/// symmetrized to kill imaginary roundoff.  C1-tagged input -> Unsupported.
double levi_form(const DefiningFunction& rho, const CVec& p, const CVec& v);

struct PseudoconvexityReport {
    double min_eigenvalue = 0.0;
    std::vector<double> per_sample;
    bool strict = false;
};

/// Minimal Levi eigenvalue restricted to the holomorphic tangent space
/// H_p = {v : drho(p) v = 0} over boundary samples (|rho| <= 1e-8 demanded).
/// Vanishing gradient at a sample -> DegenerateBoundary.
PseudoconvexityReport strict_pseudoconvexity_check(const DefiningFunction& rho,
                                                   const std::vector<CVec>& samples);

struct Wedge {
    std::vector<DefiningFunction> faces;
    double delta = 0.1;
    std::optional<ManifoldGraph> edge;

    bool member(const CVec& z) const;
    bool member_shrunk(const CVec& z) const;   // phi_j - delta sum_{l != j} phi_l < 0
    double dist_to_boundary(const CVec& z) const;
};

/// Model wedge {Im z_j < 0 for all j} with edge R^n.
Wedge model_wedge(int dim, double delta);
/// Wedge {Im z_j < h_j(Re z)} attached to a graph edge.
Wedge graph_wedge(const ManifoldGraph& g, double delta, Smoothness cls = Smoothness::C2);

/// min |det(dphi_j/dz_k)| over probe points near the edge (genericity).
double wedge_genericity_margin(const Wedge& w, const std::vector<CVec>& probes);

/// Convex circular cone in R^{2n} ~ C^n.
struct Cone {
    Vec vertex;            // in R^{2n}: (x_1..x_n, y_1..y_n)
    Vec axis;              // unit
    double cos_half_angle = 0.0;
    double radius = 1.0;

    bool contains(const Vec& point) const;
};

/// Cone around the diagonal direction y_j = -1/sqrt(n), opened so its
/// closure meets {y_j < 0 for all j} away from the vertex.
Cone model_cone(int dim, double margin = 0.2, double radius = 1.0);

struct EdgeDistanceReport {
    double comparability = 0.0;    // smallest C with C^-1 dist_bW <= dist_E <= C dist_bW
    int used = 0;
    int skipped = 0;               // samples outside the shrunk wedge
    std::vector<double> ratios;    // dist_E / dist_bW per used sample
};

EdgeDistanceReport edge_distance_comparability(const Wedge& w,
                                               const std::vector<CVec>& samples);

struct HopfOptions {
    int rays = 64;
    int radii = 12;
    double window_lo = 1e-4;       // values of 1 - |zeta|
    double window_hi = 0.3;
    double domain_tol = 1e-12;     // allowed positive excursion of rho
    std::function<double(const CVec&)> boundary_distance;   // optional, for C_rho
};

struct HopfTriple {
    double one_minus_r = 0.0;
    double abs_rho = 0.0;
    double dist_edge = 0.0;
};

struct HopfReport {
    bool applicable = true;        // false for discs lying inside the zero set
    double c_hopf = 0.0;           // largest C with |rho(H)| >= C (1-|zeta|)
    double c_chain = 0.0;          // smallest C' with 1-|zeta| <= C' dist(H, E)
    double c_rho_edge = 0.0;       // fitted max |rho(H)| / dist(H, E)
    double c_rho_boundary = 0.0;   // fitted max |rho(H)| / dist(H, bOmega), if available
    std::vector<HopfTriple> triples;
};

/// Radial-ray Hopf lower bound |rho(H(zeta))| >= C (1 - |zeta|) plus the
/// chained edge-distance estimate.  Disc leaving {rho <= 0} -> DomainViolation.
HopfReport hopf_bound_check(const AnalyticDisc& disc, const DefiningFunction& rho,
                            const ManifoldGraph& edge, const HopfOptions& opts = {});

struct FillOptions {
    int interior_rings = 48;
    int samples = 500;
    std::uint64_t seed = 20240901;
};

struct FillReport {
    double fraction = 0.0;
    double worst_distance = 0.0;
    int samples = 0;
    double eps_fill = 0.0;
};

/// Fraction of W_delta intersect r B samples lying within eps_fill of the
/// pooled disc images (boundary traces plus interior polar samples).
/// Desk scale: dim in {1, 2}; empty disc list -> InvalidInput.
FillReport wedge_fill_check(const std::vector<AnalyticDisc>& discs, const Wedge& w,
                            double r, double eps_fill, const FillOptions& opts = {});

struct KeyEstimateOptions {
    int edge_probes = 128;
    double edge_box = 0.05;          // probe box half width for f(E) subset M
    double membership_tol = 1e-8;
    int rays = 32;
    int radii = 10;
    int dyadic_lo = 4, dyadic_hi = 12;
};

struct KeyEstimateReport {
    double c_fit = 0.0;              // smallest C with rho_M(f(z)) <= C dist(z, E)
    double holder_slope = 0.0;
    double holder_band_lo = 0.0;     // slope - 2 stderr
    double holder_band_hi = 0.0;
    bool pass = false;
    int samples = 0;
};

/// rho_M(f(H(zeta))) <= C dist(H(zeta), E) over disc-image samples, plus the
/// measured Holder exponent of f along radial approaches to the edge.
/// f(E) not inside M at the probes -> HypothesisViolation.
KeyEstimateReport key_estimate_check(const HoloMap& f, const std::vector<AnalyticDisc>& discs,
                                     const DefiningFunction& rho_m, const ManifoldGraph& edge,
                                     const KeyEstimateOptions& opts = {});

} // namespace bishop
