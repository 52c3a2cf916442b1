#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>

#include <fftw3.h>

namespace tvscm::fft {

namespace detail {

struct PlanPair {
  fftw_plan fwd = nullptr;  // real n -> complex n/2+1
  fftw_plan inv = nullptr;  // complex n/2+1 -> real n, unnormalized
};

// Plans are created once per transform size and kept for the process lifetime.
// FFTW plan creation is not thread-safe; execution on caller-owned buffers is.
inline const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  double* rbuf = fftw_alloc_real(n);
  fftw_complex* cbuf = fftw_alloc_complex(n / 2 + 1);
  PlanPair p;
  p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), rbuf, cbuf, FFTW_ESTIMATE);
  p.inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), cbuf, rbuf, FFTW_ESTIMATE);
  fftw_free(rbuf);
  fftw_free(cbuf);
  if (!p.fwd || !p.inv) throw std::runtime_error("fftw planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace detail

/// One-dimensional real-input DFT of a fixed size, with owned aligned
/// scratch buffers so a single instance can be reused across many calls.
class RealDft {
 public:
  explicit RealDft(std::size_t n) : n_(n), plans_(&detail::plans_for(n)) {
    if (n == 0) throw std::invalid_argument("RealDft: size must be >= 1");
    rbuf_ = fftw_alloc_real(n);
    cbuf_ = fftw_alloc_complex(bins());
  }

  RealDft(const RealDft&) = delete;
  RealDft& operator=(const RealDft&) = delete;

  RealDft(RealDft&& other) noexcept
      : n_(other.n_), plans_(other.plans_), rbuf_(other.rbuf_), cbuf_(other.cbuf_) {
    other.rbuf_ = nullptr;
    other.cbuf_ = nullptr;
  }
  RealDft& operator=(RealDft&&) = delete;

  ~RealDft() {
    if (rbuf_) fftw_free(rbuf_);
    if (cbuf_) fftw_free(cbuf_);
  }

  std::size_t size() const { return n_; }

  /// Number of non-redundant spectrum bins for a real input: n/2 + 1.
  std::size_t bins() const { return n_ / 2 + 1; }

  /// out[j] = sum_k in[k] * exp(-2*pi*i*j*k/n) for j = 0..n/2 (unnormalized).
  void forward(std::span<const double> in, std::span<std::complex<double>> out) {
    check(in.size() == n_ && out.size() >= bins());
    for (std::size_t k = 0; k < n_; ++k) rbuf_[k] = in[k];
    fftw_execute_dft_r2c(plans_->fwd, rbuf_, cbuf_);
    for (std::size_t j = 0; j < bins(); ++j) out[j] = {cbuf_[j][0], cbuf_[j][1]};
  }

  /// Inverse of forward() including the 1/n normalization.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    check(in.size() >= bins() && out.size() == n_);
    for (std::size_t j = 0; j < bins(); ++j) {
      cbuf_[j][0] = in[j].real();
      cbuf_[j][1] = in[j].imag();
    }
    fftw_execute_dft_c2r(plans_->inv, cbuf_, rbuf_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = rbuf_[k] * scale;
  }

 private:
  static void check(bool ok) {
    if (!ok) throw std::invalid_argument("RealDft: span size mismatch");
  }

  std::size_t n_;
  const detail::PlanPair* plans_;
  double* rbuf_ = nullptr;
  fftw_complex* cbuf_ = nullptr;
};

}  // namespace tvscm::fft
