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

#include "nfftk/window.hpp"

#include <cmath>
#include <numbers>

#include "nfftk/indexing.hpp"

namespace nfftk {

WindowKind parse_window_kind(std::string_view name) {
  if (name == "kaiserbessel") return WindowKind::kKaiserBessel;
  if (name == "gaussian") return WindowKind::kGaussian;
  throw Error(ErrorCode::kInvalidArgument, "unknown window '" + std::string(name) + "'");
}

std::string_view window_name(WindowKind kind) {
  return kind == WindowKind::kKaiserBessel ? "kaiserbessel" : "gaussian";
}

template <typename Scalar>
Scalar bessel_i0(Scalar x) {
  // Accumulate in double; the series for |x| <= ~100 stays well inside range.
  const double q = 0.25 * static_cast<double>(x) * static_cast<double>(x);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 1000; ++j) {
    term *= q / (static_cast<double>(j) * static_cast<double>(j));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return static_cast<Scalar>(sum);
}

template <typename Scalar>
Window<Scalar>::Window(WindowKind kind, const MultiIndex& N, const MultiIndex& n, int m)
    : kind_(kind), N_(N), n_(n), m_(m), sigma_(N.size()), b_(N.size()) {
  check_bandlimit(N);
  if (n.size() != N.size()) throw Error(ErrorCode::kInvalidArgument, "bandlimit and grid dimensions disagree");
  if (m < 1) throw Error(ErrorCode::kCutoff, "cutoff m must be >= 1");
  constexpr double pi = std::numbers::pi;
  for (Index i = 0; i < N.size(); ++i) {
    if (n[i] <= N[i])
      throw Error(ErrorCode::kOversampling, "grid length n_i must exceed the bandlimit N_i");
    if (2 * m >= n[i]) throw Error(ErrorCode::kCutoff, "window support m/n_i must stay below 1/2");
    const double s = static_cast<double>(n[i]) / static_cast<double>(N[i]);
    sigma_[i] = static_cast<Scalar>(s);
    b_[i] = kind == WindowKind::kKaiserBessel ? static_cast<Scalar>(pi * (2.0 - 1.0 / s))
                                              : static_cast<Scalar>(2.0 * s * m / ((2.0 * s - 1.0) * pi));
  }
}

template <typename Scalar>
Scalar Window<Scalar>::phi_grid(Scalar u, int i) const {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar b = b_[i];
  if (kind_ == WindowKind::kGaussian) return std::exp(-u * u / b) / std::sqrt(pi * b);
  const Scalar mm = static_cast<Scalar>(m_);
  const Scalar au = std::abs(u);
  const Scalar a = (mm - au) * (mm + au);
  if (a > 0) {
    const Scalar s = std::sqrt(a);
    return std::sinh(b * s) / (pi * s);
  }
  if (a < 0) {
    const Scalar s = std::sqrt(-a);
    return std::sin(b * s) / (pi * s);
  }
  return b / pi;
}

template <typename Scalar>
Scalar Window<Scalar>::psi(Scalar t, int i) const {
  const Scalar u = static_cast<Scalar>(n_[i]) * t;
  return std::abs(u) <= static_cast<Scalar>(m_) ? phi_grid(u, i) : Scalar(0);
}

template <typename Scalar>
Scalar Window<Scalar>::phi_hat(Index k, int i) const {
  if (2 * std::abs(k) > n_[i])
    throw Error(ErrorCode::kOutOfRange, "frequency " + std::to_string(k) + " outside |k| <= n_i/2");
  constexpr double pi = std::numbers::pi;
  const double n = static_cast<double>(n_[i]);
  const double b = static_cast<double>(b_[i]);
  double v = 0.0;
  if (kind_ == WindowKind::kKaiserBessel) {
    const double w = 2.0 * pi * static_cast<double>(k) / n;
    const double arg = b * b - w * w;
    v = arg >= 0.0 ? bessel_i0(static_cast<double>(m_) * std::sqrt(arg)) / n : 0.0;
  } else {
    const double w = pi * static_cast<double>(k) / n;
    v = std::exp(-b * w * w) / n;
  }
  const Scalar out = static_cast<Scalar>(v);
  if (!(out > 0) || !std::isfinite(out))
    throw Error(ErrorCode::kWindowDegenerate,
                "window Fourier coefficient at k=" + std::to_string(k) + " is not positive");
  return out;
}

template <typename Scalar>
Scalar Window<Scalar>::ck(const MultiIndex& k) const {
  if (k.size() != n_.size()) throw Error(ErrorCode::kInvalidArgument, "multi-index dimension mismatch");
  Scalar c = 1;
  for (int i = 0; i < dim(); ++i) c *= phi_hat(k[i], i);
  return c;
}

template class Window<float>;
template class Window<double>;
template float bessel_i0<float>(float);
template double bessel_i0<double>(double);

}  // namespace nfftk
