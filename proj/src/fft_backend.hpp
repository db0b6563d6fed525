#pragma once

#include <complex>
#include <vector>

namespace bishop::detail {

// Thin FFTW wrapper.  Plans are cached per size behind a mutex (the FFTW
// planner is not thread safe); execution uses the new-array interface and
// is safe to call concurrently on distinct buffers.
// forward: out_k = sum_j in_j e^{-2 pi i jk/N}; inverse is unnormalized.
void fft_forward(const std::complex<double>* in, std::complex<double>* out, int n);
void fft_inverse(const std::complex<double>* in, std::complex<double>* out, int n);

} // namespace bishop::detail
