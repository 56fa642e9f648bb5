/* Copyright 2026 The nfftk Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string_view>

#include "nfftk/common.hpp"

namespace nfftk {

enum class WindowKind { kKaiserBessel, kGaussian };

/// Accepts "kaiserbessel" or "gaussian".
WindowKind parse_window_kind(std::string_view name);
std::string_view window_name(WindowKind kind);

/// Modified Bessel function of the first kind, order zero. Power series,
/// truncated once a term falls below 1e-16 of the partial sum.
template <typename Scalar>
Scalar bessel_i0(Scalar x);

// Tensor-product window. Each dimension i has its own grid length n_i,
// oversampling factor sigma_i = n_i / N_i and shape parameter b_i; the
// cutoff m is shared.
//
//   Kaiser-Bessel, b = pi (2 - 1/sigma), u = n x:
//     phi(x)   = sinh(b sqrt(m^2 - u^2)) / (pi sqrt(m^2 - u^2))    |u| < m
//              = b / pi                                             |u| = m
//              = sin(b sqrt(u^2 - m^2)) / (pi sqrt(u^2 - m^2))      |u| > m
//     phihat(k) = I0(m sqrt(b^2 - (2 pi k / n)^2)) / n              |k| <= n (1 - 1/(2 sigma))
//
//   Gaussian, b = 2 sigma m / ((2 sigma - 1) pi):
//     phi(x)    = exp(-u^2 / b) / sqrt(pi b)
//     phihat(k) = exp(-b (pi k / n)^2) / n
template <typename Scalar>
class Window {
 public:
  Window(WindowKind kind, const MultiIndex& N, const MultiIndex& n, int m);

  WindowKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(n_.size()); }
  int cutoff() const { return m_; }
  Index grid_length(int i) const { return n_[i]; }
  Index bandlimit(int i) const { return N_[i]; }
  Scalar sigma(int i) const { return sigma_[i]; }
  Scalar shape(int i) const { return b_[i]; }

  /// phi along dimension i evaluated in grid units u = n_i t.
  Scalar phi_grid(Scalar u, int i) const;
  Scalar phi(Scalar t, int i) const { return phi_grid(static_cast<Scalar>(n_[i]) * t, i); }

  /// Truncation of phi to |t| <= m / n_i.
  Scalar psi(Scalar t, int i) const;

  /// Fourier transform of the 1D window at integer frequency k; |k| <= n_i/2.
  /// Throws kWindowDegenerate if the value is not strictly positive.
  Scalar phi_hat(Index k, int i) const;

  /// Fourier coefficient c_k of the periodized d-variate window.
  Scalar ck(const MultiIndex& k) const;

 private:
  WindowKind kind_;
  MultiIndex N_;
  MultiIndex n_;
  int m_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> sigma_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> b_;
};

extern template class Window<float>;
extern template class Window<double>;
extern template float bessel_i0<float>(float);
extern template double bessel_i0<double>(double);

}  // namespace nfftk
