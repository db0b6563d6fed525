#pragma once

#include "bishop/circle.hpp"

namespace bishop {

// Spectral operations on the circle.  The Hilbert transform is realized as
// the Fourier multiplier u_k -> -i sgn(k) u_k with sgn(0) = 0; taking the
// real part of the synthesis zeroes the Nyquist mode for real data, so the
// realized operator annihilates constants and cos(N/2 theta) alike and
// mean(Tf) = 0.  Exact on trig polynomials of degree < N/2.

FourierCoeffs fourier_analyze(const CircleFunction& f);
CircleFunction fourier_synthesize(const FourierCoeffs& coeffs);

/// Harmonic-conjugate boundary map, vanishing at the disc centre.
/// Componentwise on real vector data; complex input -> InvalidInput.
CircleFunction hilbert_transform(const CircleFunction& f);

/// Harmonic extension evaluated at an interior point, |zeta| <= 1 - 1e-12.
/// Spectral form: sum_{k>=0} c_k zeta^k + sum_{k<0} c_k conj(zeta)^{-k}.
Eigen::VectorXcd poisson_extend(const CircleFunction& f, Complex zeta);

/// max_{k<0} |c_k| over all components; <= tol certifies the harmonic
/// extension of f is holomorphic.
double negative_frequency_residual(const CircleFunction& f);

/// Grid Holder norm: sup_j |f_j| + max over node pairs of
/// |f(theta_j)-f(theta_l)| / |e^{i theta_j}-e^{i theta_l}|^alpha.
/// A lower bound for the continuum C^alpha norm.  alpha in (0,1).
double holder_norm(const CircleFunction& f, double alpha);
double holder_seminorm(const CircleFunction& f, double alpha);

/// (||f||_p^p + ||df/dtheta||_p^p)^{1/p} with the spectral derivative
/// (Nyquist mode dropped) and L^p by the uniform trapezoid rule against
/// the normalized measure dtheta/(2 pi).  Vector data uses the
/// sum-of-component-norms convention.
double sobolev_norm(const CircleFunction& f, double p);

/// L^p norm alone (same conventions as sobolev_norm).
double lp_norm(const CircleFunction& f, double p);

/// Spectral d/dtheta.
CircleFunction circle_derivative(const CircleFunction& f);

/// Mean value (zeroth coefficient) per component.
Eigen::VectorXcd circle_mean(const CircleFunction& f);

/// Exact sup-norm operator norm of the discrete Hilbert transform:
/// the transform is circulant, so the norm is the absolute row sum of
/// the delta response.  Finite for every N; grows like log N.
double hilbert_sup_norm(const CircleGrid& grid);

} // namespace bishop
