#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace bishop::detail {

namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

// FFTW_UNALIGNED lets us execute on std::vector storage of any alignment.
PlanPair& plans_for(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    auto* ap = reinterpret_cast<fftw_complex*>(a.data());
    auto* bp = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, ap, bp, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inverse = fftw_plan_dft_1d(n, ap, bp, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

} // namespace

void fft_forward(const std::complex<double>* in, std::complex<double>* out, int n) {
    auto& p = plans_for(n);
    fftw_execute_dft(p.forward,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(const std::complex<double>* in, std::complex<double>* out, int n) {
    auto& p = plans_for(n);
    fftw_execute_dft(p.inverse,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace bishop::detail
