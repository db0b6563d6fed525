#include "bishop/spectral.hpp"

#include <cmath>
#include <vector>

#include "fft_backend.hpp"

namespace bishop {

namespace {

// FFT order m = k mod N  <->  ascending order column k + N/2.
int fft_index(int k, int n) { return (k + n) % n; }

} // namespace

FourierCoeffs fourier_analyze(const CircleFunction& f) {
    f.check_finite();
    const int n = f.nodes();
    const int dim = f.dim();
    Eigen::MatrixXcd coeffs(dim, n);
    std::vector<Complex> in(n), out(n);
    for (int c = 0; c < dim; ++c) {
        for (int j = 0; j < n; ++j) in[j] = f.values()(c, j);
        detail::fft_forward(in.data(), out.data(), n);
        for (int k = -n / 2; k < n / 2; ++k)
            coeffs(c, k + n / 2) = out[fft_index(k, n)] / static_cast<double>(n);
    }
    return FourierCoeffs(f.grid(), std::move(coeffs));
}

CircleFunction fourier_synthesize(const FourierCoeffs& coeffs) {
    const int n = coeffs.grid().size();
    const int dim = coeffs.dim();
    Eigen::MatrixXcd values(dim, n);
    std::vector<Complex> in(n), out(n);
    for (int c = 0; c < dim; ++c) {
        for (int k = -n / 2; k < n / 2; ++k) in[fft_index(k, n)] = coeffs.raw()(c, k + n / 2);
        detail::fft_inverse(in.data(), out.data(), n);
        for (int j = 0; j < n; ++j) values(c, j) = out[j];
    }
    return CircleFunction(coeffs.grid(), std::move(values));
}

CircleFunction hilbert_transform(const CircleFunction& f) {
    if (!f.is_real())
        throw InvalidInput("hilbert_transform: input must be real (acts componentwise)");
    FourierCoeffs coeffs = fourier_analyze(f);
    const int n = f.nodes();
    for (int c = 0; c < f.dim(); ++c) {
        for (int k = -n / 2; k < n / 2; ++k) {
            double sgn = (k > 0) - (k < 0);
            coeffs.raw()(c, k + n / 2) *= Complex(0.0, -sgn);
        }
    }
    CircleFunction out = fourier_synthesize(coeffs);
    // Real part of the synthesis; the Nyquist term i*c_{-N/2}(-1)^j is purely
    // imaginary for real input so the realized multiplier vanishes there.
    return CircleFunction(f.grid(), out.values().real().cast<Complex>());
}

Eigen::VectorXcd poisson_extend(const CircleFunction& f, Complex zeta) {
    if (std::abs(zeta) > 1.0 - 1e-12)
        throw OutOfDomain("poisson_extend: |zeta| must be <= 1 - 1e-12");
    FourierCoeffs coeffs = fourier_analyze(f);
    const int n = f.nodes();
    Eigen::VectorXcd out(f.dim());
    const Complex zbar = std::conj(zeta);
    for (int c = 0; c < f.dim(); ++c) {
        Complex pos = 0.0;
        for (int k = n / 2 - 1; k >= 0; --k) pos = pos * zeta + coeffs.coeff(c, k);
        Complex neg = 0.0;
        for (int k = -n / 2; k < 0; ++k) neg = (neg + coeffs.coeff(c, k)) * zbar;
        // neg accumulates sum_{k<0} c_k zbar^{-k} via ascending Horner
        out(c) = pos + neg;
    }
    return out;
}

double negative_frequency_residual(const CircleFunction& f) {
    FourierCoeffs coeffs = fourier_analyze(f);
    const int n = f.nodes();
    double r = 0.0;
    for (int c = 0; c < f.dim(); ++c)
        for (int k = -n / 2; k < 0; ++k) r = std::max(r, std::abs(coeffs.coeff(c, k)));
    return r;
}

double holder_seminorm(const CircleFunction& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("holder_seminorm: alpha must lie in (0,1)");
    const int n = f.nodes();
    double sem = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex zj = f.grid().node(j);
        for (int l = j + 1; l < n; ++l) {
            double diff = (f.values().col(j) - f.values().col(l)).cwiseAbs().maxCoeff();
            double chord = std::abs(zj - f.grid().node(l));
            sem = std::max(sem, diff / std::pow(chord, alpha));
        }
    }
    return sem;
}

double holder_norm(const CircleFunction& f, double alpha) {
    return f.sup_norm() + holder_seminorm(f, alpha);
}

CircleFunction circle_derivative(const CircleFunction& f) {
    FourierCoeffs coeffs = fourier_analyze(f);
    const int n = f.nodes();
    for (int c = 0; c < f.dim(); ++c) {
        for (int k = -n / 2; k < n / 2; ++k) {
            // Nyquist mode dropped: its symmetric derivative vanishes at nodes.
            double kk = (k == -n / 2) ? 0.0 : static_cast<double>(k);
            coeffs.raw()(c, k + n / 2) *= Complex(0.0, kk);
        }
    }
    CircleFunction d = fourier_synthesize(coeffs);
    if (f.is_real()) return CircleFunction(f.grid(), d.values().real().cast<Complex>());
    return d;
}

double lp_norm(const CircleFunction& f, double p) {
    if (!(p > 1.0)) throw InvalidInput("lp_norm: p must be > 1");
    const int n = f.nodes();
    double total = 0.0;
    for (int c = 0; c < f.dim(); ++c) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::pow(std::abs(f.values()(c, j)), p);
        total += std::pow(s / n, 1.0 / p);
    }
    return total;
}

double sobolev_norm(const CircleFunction& f, double p) {
    if (!(p > 1.0)) throw InvalidInput("sobolev_norm: p must be > 1");
    double a = lp_norm(f, p);
    double b = lp_norm(circle_derivative(f), p);
    return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

Eigen::VectorXcd circle_mean(const CircleFunction& f) {
    Eigen::VectorXcd m(f.dim());
    for (int c = 0; c < f.dim(); ++c) m(c) = f.values().row(c).mean();
    return m;
}

double hilbert_sup_norm(const CircleGrid& grid) {
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(1, grid.size());
    delta(0, 0) = 1.0;
    CircleFunction column = hilbert_transform(CircleFunction::from_real(grid, delta));
    return column.values().cwiseAbs().sum();
}

} // namespace bishop
