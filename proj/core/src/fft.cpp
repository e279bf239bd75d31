#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace cknlab::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

RealFFT::RealFFT(int n) : n_(n) {
    std::vector<double> re(n);
    std::vector<std::complex<double>> sp(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(sp.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, re.data(), c, flags);
    bwd_ = fftw_plan_dft_c2r_1d(n, c, re.data(), flags | FFTW_DESTROY_INPUT);
}

RealFFT::~RealFFT() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void RealFFT::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void RealFFT::backward(const std::complex<double>* in, double* out) const {
    std::vector<std::complex<double>> tmp(in, in + spectrum_size());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

const RealFFT& real_fft(int n) {
    static std::mutex cache_mutex;
    // Never destroyed: plans outlive every static that might still run transforms at exit.
    static auto* cache = new std::map<int, std::unique_ptr<RealFFT>>();
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = (*cache)[n];
    if (!slot) slot = std::make_unique<RealFFT>(n);
    return *slot;
}

}  // namespace cknlab::detail
