#pragma once

#include <complex>
#include <vector>

namespace cknlab::detail {

// Real-to-complex FFT of fixed length n; thread-safe execution via new-array calls.
class RealFFT {
public:
    explicit RealFFT(int n);
    ~RealFFT();
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    int size() const { return n_; }
    int spectrum_size() const { return n_ / 2 + 1; }
    void forward(const double* in, std::complex<double>* out) const;
    // Unnormalized inverse; `in` is left untouched.
    void backward(const std::complex<double>* in, double* out) const;

private:
    int n_;
    void* fwd_ = nullptr;
    void* bwd_ = nullptr;
};

// Cached plan per length.
const RealFFT& real_fft(int n);

}  // namespace cknlab::detail
