#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvscm/errors.hpp"
#include "tvscm/fft.hpp"
#include "tvscm/matrix.hpp"

namespace tvscm {

/// The two scalars and the dimension that fully determine a two-valued
/// symmetric circulant operator.
struct TwoValueParams {
  double a;
  double b;
  std::size_t n;

  TwoValueParams(double a_, double b_, std::size_t n_) : a(a_), b(b_), n(n_) {
    if (n == 0) throw std::invalid_argument("TwoValueParams: n must be >= 1");
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("TwoValueParams: a and b must be finite");
  }
};

/// First row of a circulant matrix. The circulant generated by v is
/// C[i][j] = v[(j - i) mod n] (each row is the previous one cyclically
/// shifted right).
class CirculantVector {
 public:
  explicit CirculantVector(std::vector<double> v) : v_(std::move(v)) {
    if (v_.empty()) throw std::invalid_argument("CirculantVector: empty defining vector");
    for (double x : v_)
      if (!std::isfinite(x)) throw std::invalid_argument("CirculantVector: non-finite entry");
  }

  std::size_t size() const { return v_.size(); }
  std::span<const double> values() const { return v_; }

 private:
  std::vector<double> v_;
};

/// First row of a symmetrized circulant, i.e. a vector with
/// v[k] == v[(n-k) mod n]. The generated matrix equals its own transpose
/// and has a real DFT spectrum, which can be cached here.
class SymmetricCirculant {
 public:
  explicit SymmetricCirculant(std::vector<double> v_sym) : v_(std::move(v_sym)) {
    if (v_.empty()) throw std::invalid_argument("SymmetricCirculant: empty defining vector");
    const std::size_t n = v_.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(v_[k]))
        throw std::invalid_argument("SymmetricCirculant: non-finite entry");
      if (v_[k] != v_[(n - k) % n])
        throw std::invalid_argument("SymmetricCirculant: defining vector is not symmetric");
    }
  }

  std::size_t size() const { return v_.size(); }
  std::span<const double> defining_vector() const { return v_; }

  bool has_spectrum() const { return !spectrum_.empty(); }
  std::span<const double> cached_spectrum() const { return spectrum_; }

  /// Computes and stores the eigenvalues. Call before sharing across
  /// threads; all accessors are const afterwards.
  void cache_spectrum();

 private:
  std::vector<double> v_;
  std::vector<double> spectrum_;  // empty until cached; DFT index order
};

/// v[k] = a for even k, b for odd k; length n.
inline CirculantVector build_defining_vector(const TwoValueParams& p) {
  std::vector<double> v(p.n);
  for (std::size_t k = 0; k < p.n; ++k) v[k] = (k % 2 == 0) ? p.a : p.b;
  return CirculantVector(std::move(v));
}

/// First row of (C(v) + C(v)^T) / 2: v_sym[k] = (v[k] + v[(n-k) mod n]) / 2.
inline SymmetricCirculant symmetrize(const CirculantVector& v) {
  const std::size_t n = v.size();
  auto in = v.values();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (in[k] + in[(n - k) % n]) / 2.0;
  return SymmetricCirculant(std::move(out));
}

/// Dense n x n matrix with M[i][j] = v_sym[(j - i) mod n]. Intended for
/// tests and inspection; guarded against accidental huge allocations.
inline Matrix materialize(const SymmetricCirculant& s, std::size_t max_n = 4096) {
  const std::size_t n = s.size();
  if (n > max_n)
    throw std::length_error("materialize: n = " + std::to_string(n) + " exceeds guard " +
                            std::to_string(max_n));
  auto v = s.defining_vector();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[(j + n - i) % n];
  return m;
}

namespace detail {

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Real eigenvalues of the symmetric circulant in DFT index order. The DFT of
// a symmetric real vector is real; residual imaginary mass beyond tolerance
// is a numerics failure.
inline std::vector<double> compute_spectrum(std::span<const double> v_sym) {
  const std::size_t n = v_sym.size();
  fft::RealDft dft(n);
  std::vector<std::complex<double>> bins(dft.bins());
  dft.forward(v_sym, bins);

  const double tol = 1e-9 * static_cast<double>(n) * max_abs(v_sym);
  std::vector<double> lambda(n);
  for (std::size_t j = 0; j < bins.size(); ++j) {
    if (std::abs(bins[j].imag()) > tol)
      throw NumericsError("spectrum: imaginary magnitude " +
                          std::to_string(std::abs(bins[j].imag())) + " at bin " +
                          std::to_string(j) + " exceeds tolerance");
    lambda[j] = bins[j].real();
  }
  for (std::size_t j = 1; j < (n + 1) / 2; ++j) lambda[n - j] = lambda[j];
  return lambda;
}

}  // namespace detail

inline void SymmetricCirculant::cache_spectrum() {
  if (spectrum_.empty()) spectrum_ = detail::compute_spectrum(v_);
}

/// Eigenvalues lambda_j = sum_k v_sym[k] * exp(-2*pi*i*j*k/n), all real.
/// Uses the cached copy when present.
inline std::vector<double> spectrum(const SymmetricCirculant& s) {
  if (s.has_spectrum()) {
    auto c = s.cached_spectrum();
    return {c.begin(), c.end()};
  }
  return detail::compute_spectrum(s.defining_vector());
}

/// y[i] = sum_j v_sym[(j - i) mod n] * x[j]; O(n^2) reference path.
inline void matvec_naive(const SymmetricCirculant& s, std::span<const double> x,
                         std::span<double> y) {
  const std::size_t n = s.size();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("matvec_naive: dimension mismatch");
  auto v = s.defining_vector();
  // (j - i) mod n splits into two contiguous runs: v[n-i+j] for j < i,
  // v[j-i] for j >= i.
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::size_t wrap = n - i;
    for (std::size_t j = 0; j < i; ++j) acc += v[wrap + j] * x[j];
    for (std::size_t j = i; j < n; ++j) acc += v[j - i] * x[j];
    y[i] = acc;
  }
}

inline std::vector<double> matvec_naive(const SymmetricCirculant& s, std::span<const double> x) {
  std::vector<double> y(s.size());
  matvec_naive(s, x, y);
  return y;
}

/// FFT path: y = IDFT(spectrum .* DFT(x)) taken real. The symmetric defining
/// vector makes circular correlation and convolution coincide, so this equals
/// matvec_naive up to rounding. `dft` must have size n and `scratch` at least
/// dft.bins() entries.
inline void matvec_fft(const SymmetricCirculant& s, std::span<const double> x,
                       std::span<double> y, fft::RealDft& dft,
                       std::span<std::complex<double>> scratch) {
  const std::size_t n = s.size();
  if (x.size() != n || y.size() != n || dft.size() != n)
    throw std::invalid_argument("matvec_fft: dimension mismatch");

  std::span<const double> lambda;
  std::vector<double> local;
  if (s.has_spectrum()) {
    lambda = s.cached_spectrum();
  } else {
    local = detail::compute_spectrum(s.defining_vector());
    lambda = local;
  }

  dft.forward(x, scratch);
  for (std::size_t j = 0; j < dft.bins(); ++j) scratch[j] *= lambda[j];
  dft.inverse(scratch, y);
}

inline std::vector<double> matvec_fft(const SymmetricCirculant& s, std::span<const double> x) {
  fft::RealDft dft(s.size());
  std::vector<std::complex<double>> scratch(dft.bins());
  std::vector<double> y(s.size());
  matvec_fft(s, x, y, dft, scratch);
  return y;
}

/// Coefficient vectors with v_sym = a * mask_a + b * mask_b elementwise.
/// Entries are in {0, 1/2, 1}: the exact Jacobian of symmetrize(build(...))
/// with respect to a and b.
struct MaskDecomposition {
  std::vector<double> mask_a;
  std::vector<double> mask_b;
};

inline MaskDecomposition mask_decomposition(const TwoValueParams& p) {
  const std::size_t n = p.n;
  MaskDecomposition m{std::vector<double>(n), std::vector<double>(n)};
  if (n % 2 == 0) {
    for (std::size_t k = 0; k < n; ++k) {
      m.mask_a[k] = (k % 2 == 0) ? 1.0 : 0.0;
      m.mask_b[k] = (k % 2 == 0) ? 0.0 : 1.0;
    }
  } else {
    m.mask_a[0] = 1.0;
    m.mask_b[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      m.mask_a[k] = 0.5;
      m.mask_b[k] = 0.5;
    }
  }
  return m;
}

}  // namespace tvscm
