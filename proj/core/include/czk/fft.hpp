#pragma once

#include <complex>
#include <span>
#include <vector>

namespace czk {

using cvec = std::vector<std::complex<double>>;

// In-place unnormalized multi-dimensional DFT (row-major, last index fastest).
// forward: sum x_k exp(-2 pi i j.k / N); inverse applies the conjugate kernel
// and divides by the total size.
void fft_inplace(cvec& data, std::span<const int> dims, bool inverse);

// Linear (non-circular) convolution:
//   out[i] = sum_k w[k] f[i - k],  i in [0, G)^n,  k in [-H, H]^n,
// with f = 0 outside its box. `w` is (2H+1)^n row-major, centered at H.
// Every kernel in `kernels` is applied to the same f; the FFT of f is shared.
std::vector<cvec> convolve_same(const cvec& f, int n, int g, const std::vector<cvec>& kernels, int h);

}  // namespace czk
