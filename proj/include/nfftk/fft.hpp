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

#include <span>
#include <vector>

#include "nfftk/common.hpp"

namespace nfftk {

/// Exponent sign of sum_k v_k exp(sign 2 pi i k l / n).
enum class Sign : int { kNegative = -1, kPositive = 1 };

/// O(n^2) reference DFT, unnormalized.
template <typename Scalar>
ComplexVector<Scalar> dft_ref(const Eigen::Ref<const ComplexVector<Scalar>>& v, Sign sign);

/// Reusable 1D transform of one length. Power-of-two lengths use an iterative
/// radix-2 kernel; any other length goes through Bluestein's chirp-z with a
/// power-of-two convolution of length >= 2n-1. Immutable after construction.
template <typename Scalar>
class Fft1d {
 public:
  explicit Fft1d(Index n);

  Index size() const { return n_; }
  /// Complex scratch entries a caller must supply to transform().
  Index scratch_size() const { return bluestein_ ? conv_len_ : 0; }

  /// In-place, unnormalized.
  void transform(std::span<Complex<Scalar>> data, Sign sign, std::span<Complex<Scalar>> scratch) const;
  void transform(std::span<Complex<Scalar>> data, Sign sign) const;

 private:
  void radix2(std::span<Complex<Scalar>> data, Index len, const std::vector<Complex<Scalar>>& twiddle,
              const std::vector<Index>& bitrev, Sign sign) const;

  Index n_;
  bool bluestein_;
  Index conv_len_ = 0;
  // Radix-2 tables for the length actually run by the kernel (n or conv_len_).
  std::vector<Complex<Scalar>> twiddle_;  // exp(-2 pi i k / len), k < len/2
  std::vector<Index> bitrev_;
  // Bluestein: chirp exp(-i pi k^2 / n) and the pre-transformed filter for both signs.
  std::vector<Complex<Scalar>> chirp_;
  std::vector<Complex<Scalar>> filter_neg_;
  std::vector<Complex<Scalar>> filter_pos_;
};

template <typename Scalar>
ComplexVector<Scalar> fft_1d(const Eigen::Ref<const ComplexVector<Scalar>>& v, Sign sign);

/// Row-major d-dimensional complex array (last dimension fastest).
template <typename Scalar>
struct ComplexTensor {
  MultiIndex dims;
  ComplexVector<Scalar> data;
};

/// Separable d-variate transform over a row-major grid.
template <typename Scalar>
class FftNd {
 public:
  explicit FftNd(const MultiIndex& dims);

  const MultiIndex& dims() const { return dims_; }
  /// In-place over product(dims) entries; threads <= 1 runs serially.
  void transform(std::span<Complex<Scalar>> data, Sign sign, int threads = 1) const;

 private:
  MultiIndex dims_;
  std::vector<Fft1d<Scalar>> axes_;
};

template <typename Scalar>
ComplexTensor<Scalar> fft_nd(const ComplexTensor<Scalar>& t, Sign sign);

extern template class Fft1d<float>;
extern template class Fft1d<double>;
extern template class FftNd<float>;
extern template class FftNd<double>;

}  // namespace nfftk
