#include "czk/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace czk {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// fftw_malloc-backed buffer so alignment (and hence the executed codelets)
// is the same on every run.
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : size(n), data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  std::size_t size;
  fftw_complex* data;
};

void execute(FftwBuffer& buf, std::span<const int> dims, bool inverse) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf.data, buf.data,
                         inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(buf.size);
    for (std::size_t i = 0; i < buf.size; ++i) {
      buf.data[i][0] *= inv;
      buf.data[i][1] *= inv;
    }
  }
}

std::size_t total(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
}

}  // namespace

void fft_inplace(cvec& data, std::span<const int> dims, bool inverse) {
  const std::size_t n = total(dims);
  if (data.size() != n) throw std::invalid_argument("fft_inplace: size mismatch");
  FftwBuffer buf(n);
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = data[i].real();
    buf.data[i][1] = data[i].imag();
  }
  execute(buf, dims, inverse);
  for (std::size_t i = 0; i < n; ++i) data[i] = {buf.data[i][0], buf.data[i][1]};
}

std::vector<cvec> convolve_same(const cvec& f, int n, int g, const std::vector<cvec>& kernels, int h) {
  if (n < 1 || n > 3) throw std::invalid_argument("convolve_same: n must be 1..3");
  int p = 1;
  while (p < g + h) p <<= 1;
  const std::vector<int> dims(n, p);
  const std::size_t padded = total(dims);
  const int kw = 2 * h + 1;

  // Strides for the three index spaces.
  auto decompose = [n](std::size_t idx, int side, int* c) {
    for (int d = n - 1; d >= 0; --d) {
      c[d] = static_cast<int>(idx % side);
      idx /= side;
    }
  };
  auto compose = [n](const int* c, int side) {
    std::size_t idx = 0;
    for (int d = 0; d < n; ++d) idx = idx * side + static_cast<std::size_t>(c[d]);
    return idx;
  };

  FftwBuffer fb(padded);
  for (std::size_t i = 0; i < padded; ++i) fb.data[i][0] = fb.data[i][1] = 0.0;
  int c[3];
  for (std::size_t i = 0; i < f.size(); ++i) {
    decompose(i, g, c);
    const std::size_t j = compose(c, p);
    fb.data[j][0] = f[i].real();
    fb.data[j][1] = f[i].imag();
  }
  execute(fb, dims, false);

  std::vector<cvec> out;
  out.reserve(kernels.size());
  FftwBuffer kb(padded);
  for (const auto& w : kernels) {
    if (w.size() != total(std::vector<int>(n, kw))) throw std::invalid_argument("convolve_same: kernel size");
    for (std::size_t i = 0; i < padded; ++i) kb.data[i][0] = kb.data[i][1] = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      decompose(i, kw, c);
      for (int d = 0; d < n; ++d) c[d] = ((c[d] - h) % p + p) % p;  // offset k stored at k mod p
      const std::size_t j = compose(c, p);
      kb.data[j][0] = w[i].real();
      kb.data[j][1] = w[i].imag();
    }
    execute(kb, dims, false);
    for (std::size_t i = 0; i < padded; ++i) {
      const double ar = fb.data[i][0], ai = fb.data[i][1], br = kb.data[i][0], bi = kb.data[i][1];
      kb.data[i][0] = ar * br - ai * bi;
      kb.data[i][1] = ar * bi + ai * br;
    }
    execute(kb, dims, true);
    cvec res(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      decompose(i, g, c);
      const std::size_t j = compose(c, p);
      res[i] = {kb.data[j][0], kb.data[j][1]};
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace czk
