#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bishop/circle.hpp"

namespace bishop {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Totally real graph y = h(x) in normal form: h(0) = 0, Dh(0) = 0.
struct ManifoldGraph {
    int dim = 1;
    std::function<Vec(const Vec&)> value;      // h
    std::function<Mat(const Vec&)> jacobian;   // row j = grad h_j
    std::string tag;

    Vec operator()(const Vec& x) const { return value(x); }
};

ManifoldGraph flat_graph(int dim);
/// h_j(x) = x^T A_j x.
ManifoldGraph quadratic_graph(const std::vector<Mat>& a);
/// h_j(x) = amp_j |x|^{1+beta}; C^1 but not C^2 for beta in (0,1).
ManifoldGraph c1_profile_graph(int dim, double beta, const Vec& amplitude);
/// One-dimensional polynomial sum_{k>=2} coeffs[k-2] x^k.
ManifoldGraph polynomial_graph(const std::vector<double>& coeffs_from_degree2);

/// Normal-form and C^1-consistency probe: h(0) = 0, Dh(0) = 0, and the
/// Jacobian agrees with centered differences on a fixed probe set.
/// Throws DegenerateManifold on failure.
void check_normal_form(const ManifoldGraph& g, double fd_tol = 1e-4);

/// min |det(I + i Dh(x))| over probe points; positive means the graph is
/// totally real (and generic) at the probes.
double totally_real_margin(const ManifoldGraph& g, double probe_radius, int probes = 64);

/// Reference bump: 1 on the unit ball, 0 outside radius 2,
/// lambda(x) = g(2-|x|) / (g(2-|x|) + g(|x|-1)) with g(t) = e^{-1/t} (t>0).
struct BumpFunction {
    double radial(double r) const;
    double radial_derivative(double r) const;
    double operator()(const Vec& x) const { return radial(x.norm()); }
};

/// Cutoff graph h_delta(x) = lambda(x/delta) h(x) with certified
/// sup |grad h_delta| <= tau (probed).
class CutoffGraph {
public:
    CutoffGraph(ManifoldGraph base, double delta, double tau);

    const ManifoldGraph& base() const { return base_; }
    double delta() const { return delta_; }
    double tau() const { return tau_; }

    Vec value(const Vec& x) const;
    Mat jacobian(const Vec& x) const;

    /// Probed sup over |x| <= 2 delta of the infinity operator norm of the
    /// Jacobian (max absolute row sum); this is the Lipschitz constant of
    /// h_delta in the sup norm.
    double gradient_bound(int radial_samples = 2001) const;

private:
    ManifoldGraph base_;
    double delta_;
    double tau_;
    BumpFunction bump_;
};

/// tau = contraction_target / t_norm, delta by bisection so the probed
/// gradient bound stays below tau.  h == 0 returns delta = 1 by convention.
/// Throws DegenerateManifold when no delta >= 1e-8 works.
CutoffGraph choose_tau_delta(const ManifoldGraph& g, double contraction_target, double t_norm);

/// Dilation family h(x, d) = h(dx)/d, flat at d = 0.
struct DilationFamily {
    ManifoldGraph base;
    double d_min = -1.0;
    double d_max = 1.0;

    ManifoldGraph dilate(double d) const;
};

/// max(sup |h|, sup |Dh|_inf) over a centred box, probed on a dense grid.
double c1_norm_on_box(const ManifoldGraph& g, double half_width, int samples_per_axis = 801);

/// Collar function psi: zero on the closed upper semicircle, negative on
/// the open lower one; identical scalar profile in every component.
struct CollarFunction {
    std::function<double(double)> value;   // psi(theta)
    CircleFunction samples;                // scalar samples on the grid

    double operator()(double theta) const { return value(theta); }
};

/// Reference collar: psi = 0 on [0, pi],
/// psi(theta) = -exp(-1/((theta-pi)(2 pi-theta))) on (pi, 2 pi).
CollarFunction build_collar(const CircleGrid& grid);

struct DistanceResult {
    double distance = 0.0;   // certified upper bound
    Vec x_star;              // best graph parameter found
    bool approximate = false;
};

struct DistanceOptions {
    double box_radius = 0.0;   // 0: auto from |Im z - h(Re z)|
    int seeds_per_axis = 33;
    int max_iterations = 80;
};

/// Distance from z to the graph {x + i h(x)} by multistart Gauss-Newton on
/// |z - (x + i h(x))|^2 with grid seeding.  Upper bound by construction.
DistanceResult dist_to_manifold(const ManifoldGraph& g, const Eigen::VectorXcd& z,
                                const DistanceOptions& opts = {});

} // namespace bishop
