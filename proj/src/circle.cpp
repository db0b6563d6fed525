#include "bishop/circle.hpp"

#include <cmath>
#include <numbers>

namespace bishop {

CircleGrid::CircleGrid(int n_nodes) : n_(n_nodes) {
    if (n_ < 8 || n_ % 2 != 0)
        throw InvalidInput("CircleGrid: N must be even and >= 8, got " + std::to_string(n_));
}

double CircleGrid::theta(int j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_);
}

Complex CircleGrid::node(int j) const {
    double t = theta(j);
    return {std::cos(t), std::sin(t)};
}

CircleFunction::CircleFunction(CircleGrid grid, int dim)
    : grid_(grid), values_(Eigen::MatrixXcd::Zero(dim, grid.size())) {
    if (dim < 1) throw InvalidInput("CircleFunction: dimension must be >= 1");
}

CircleFunction::CircleFunction(CircleGrid grid, Eigen::MatrixXcd values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.cols() != grid_.size())
        throw InvalidInput("CircleFunction: sample count does not match grid");
    if (values_.rows() < 1) throw InvalidInput("CircleFunction: dimension must be >= 1");
}

CircleFunction CircleFunction::from_real(CircleGrid grid, const Eigen::MatrixXd& values) {
    return CircleFunction(grid, values.cast<Complex>());
}

CircleFunction CircleFunction::sample_scalar(CircleGrid grid,
                                             const std::function<double(double)>& f) {
    Eigen::MatrixXcd v(1, grid.size());
    for (int j = 0; j < grid.size(); ++j) v(0, j) = Complex(f(grid.theta(j)), 0.0);
    return CircleFunction(grid, std::move(v));
}

CircleFunction CircleFunction::sample_scalar_complex(CircleGrid grid,
                                                     const std::function<Complex(double)>& f) {
    Eigen::MatrixXcd v(1, grid.size());
    for (int j = 0; j < grid.size(); ++j) v(0, j) = f(grid.theta(j));
    return CircleFunction(grid, std::move(v));
}

bool CircleFunction::is_real(double tol) const {
    return values_.imag().cwiseAbs().maxCoeff() <= tol * (1.0 + values_.cwiseAbs().maxCoeff());
}

double CircleFunction::sup_norm() const {
    return values_.cwiseAbs().maxCoeff();
}

double CircleFunction::sup_euclidean() const {
    double m = 0.0;
    for (int j = 0; j < values_.cols(); ++j) m = std::max(m, values_.col(j).norm());
    return m;
}

CircleFunction CircleFunction::operator+(const CircleFunction& o) const {
    if (!(grid_ == o.grid_) || dim() != o.dim())
        throw InvalidInput("CircleFunction: shape mismatch in +");
    return CircleFunction(grid_, values_ + o.values_);
}

CircleFunction CircleFunction::operator-(const CircleFunction& o) const {
    if (!(grid_ == o.grid_) || dim() != o.dim())
        throw InvalidInput("CircleFunction: shape mismatch in -");
    return CircleFunction(grid_, values_ - o.values_);
}

CircleFunction CircleFunction::scaled(Complex s) const {
    return CircleFunction(grid_, values_ * s);
}

void CircleFunction::check_finite() const {
    if (!values_.allFinite()) throw InvalidInput("CircleFunction: non-finite samples");
}

FourierCoeffs::FourierCoeffs(CircleGrid grid, Eigen::MatrixXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.cols() != grid_.size())
        throw InvalidInput("FourierCoeffs: coefficient count does not match grid");
}

Complex FourierCoeffs::coeff(int component, int k) const {
    if (k < k_min() || k > k_max())
        throw InvalidInput("FourierCoeffs: frequency out of range");
    return coeffs_(component, k + grid_.size() / 2);
}

} // namespace bishop
