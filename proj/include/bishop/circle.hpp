#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "bishop/errors.hpp"

namespace bishop {

using Complex = std::complex<double>;

/// Equispaced grid theta_j = 2*pi*j/N on the unit circle.  N is even and
/// at least 8 so that the semicircle endpoints theta = 0, pi are nodes.
class CircleGrid {
public:
    explicit CircleGrid(int n_nodes);

    int size() const { return n_; }
    double theta(int j) const;
    Complex node(int j) const;   // e^{i theta_j}

    bool operator==(const CircleGrid& o) const { return n_ == o.n_; }

private:
    int n_;
};

/// Sampled n-vector valued function on a CircleGrid.  Stored as an
/// n x N complex matrix; column j is the value at theta_j.  Immutable
/// use is expected after construction; all operations on it are pure.
class CircleFunction {
public:
    CircleFunction(CircleGrid grid, int dim);
    CircleFunction(CircleGrid grid, Eigen::MatrixXcd values);

    static CircleFunction from_real(CircleGrid grid, const Eigen::MatrixXd& values);
    // Scalar (dim 1) sample of an analytic formula.
    static CircleFunction sample_scalar(CircleGrid grid, const std::function<double(double)>& f);
    static CircleFunction sample_scalar_complex(CircleGrid grid,
                                                const std::function<Complex(double)>& f);

    const CircleGrid& grid() const { return grid_; }
    int dim() const { return static_cast<int>(values_.rows()); }
    int nodes() const { return grid_.size(); }

    const Eigen::MatrixXcd& values() const { return values_; }
    Eigen::MatrixXcd& values() { return values_; }
    Eigen::VectorXcd value(int j) const { return values_.col(j); }

    bool is_real(double tol = 1e-12) const;
    Eigen::MatrixXd real_part() const { return values_.real(); }
    Eigen::MatrixXd imag_part() const { return values_.imag(); }

    // max over nodes of the component-wise sup norm
    double sup_norm() const;
    // max over nodes of the Euclidean norm of the value vector
    double sup_euclidean() const;

    CircleFunction operator+(const CircleFunction& o) const;
    CircleFunction operator-(const CircleFunction& o) const;
    CircleFunction scaled(Complex s) const;

    void check_finite() const;   // InvalidInput on NaN/Inf samples

private:
    CircleGrid grid_;
    Eigen::MatrixXcd values_;
};

/// Discrete Fourier coefficients of a CircleFunction, frequencies
/// k in [-N/2, N/2).  coeff(c, k) is the k-th coefficient of component c
/// with the normalization f(theta_j) = sum_k coeff_k e^{i k theta_j}.
class FourierCoeffs {
public:
    FourierCoeffs(CircleGrid grid, Eigen::MatrixXcd coeffs_ascending_k);

    const CircleGrid& grid() const { return grid_; }
    int dim() const { return static_cast<int>(coeffs_.rows()); }
    int k_min() const { return -grid_.size() / 2; }
    int k_max() const { return grid_.size() / 2 - 1; }

    Complex coeff(int component, int k) const;
    const Eigen::MatrixXcd& raw() const { return coeffs_; }
    Eigen::MatrixXcd& raw() { return coeffs_; }

private:
    CircleGrid grid_;
    Eigen::MatrixXcd coeffs_;   // n x N, column m holds k = m - N/2
};

} // namespace bishop
