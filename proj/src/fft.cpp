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

#include "nfftk/fft.hpp"

#include <cmath>
#include <numbers>

#include "nfftk/parallel.hpp"

namespace nfftk {
namespace {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index next_power_of_two(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Plain complex product; std::complex operator* carries inf/nan recovery we don't need.
template <typename Scalar>
inline Complex<Scalar> cmul(const Complex<Scalar>& a, const Complex<Scalar>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <typename Scalar>
inline Complex<Scalar> cmul_conj(const Complex<Scalar>& a, const Complex<Scalar>& b) {
  return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

template <typename Scalar>
Complex<Scalar> unit(long double angle) {
  return {static_cast<Scalar>(std::cos(angle)), static_cast<Scalar>(std::sin(angle))};
}

}  // namespace

template <typename Scalar>
ComplexVector<Scalar> dft_ref(const Eigen::Ref<const ComplexVector<Scalar>>& v, Sign sign) {
  const Index n = v.size();
  ComplexVector<Scalar> out(n);
  const long double s = static_cast<int>(sign);
  for (Index l = 0; l < n; ++l) {
    std::complex<long double> acc = 0;
    for (Index k = 0; k < n; ++k) {
      const Index r = (k * l) % n;
      const long double angle = s * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                                static_cast<long double>(n);
      acc += std::complex<long double>(v[k]) * std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    out[l] = Complex<Scalar>(static_cast<Scalar>(acc.real()), static_cast<Scalar>(acc.imag()));
  }
  return out;
}

template <typename Scalar>
Fft1d<Scalar>::Fft1d(Index n) : n_(n), bluestein_(!is_power_of_two(n)) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "transform length must be >= 1");
  constexpr long double pi = std::numbers::pi_v<long double>;
  const Index len = bluestein_ ? next_power_of_two(2 * n - 1) : n;
  conv_len_ = bluestein_ ? len : 0;
  twiddle_.resize(static_cast<std::size_t>(len / 2));
  for (Index k = 0; k < len / 2; ++k)
    twiddle_[k] = unit<Scalar>(-2.0L * pi * static_cast<long double>(k) / static_cast<long double>(len));
  bitrev_.resize(static_cast<std::size_t>(len));
  int bits = 0;
  while ((Index{1} << bits) < len) ++bits;
  for (Index i = 0; i < len; ++i) {
    Index r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  if (!bluestein_) return;

  chirp_.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const Index r = (k * k) % (2 * n);
    chirp_[k] = unit<Scalar>(-pi * static_cast<long double>(r) / static_cast<long double>(n));
  }
  // For sign s the chirp is c_k = exp(s i pi k^2/n) and the filter is conj(c).
  filter_neg_.assign(static_cast<std::size_t>(len), Complex<Scalar>(0));
  filter_pos_.assign(static_cast<std::size_t>(len), Complex<Scalar>(0));
  for (Index k = 0; k < n; ++k) {
    filter_neg_[k] = std::conj(chirp_[k]);
    filter_pos_[k] = chirp_[k];
    if (k > 0) {
      filter_neg_[len - k] = std::conj(chirp_[k]);
      filter_pos_[len - k] = chirp_[k];
    }
  }
  radix2(filter_neg_, len, twiddle_, bitrev_, Sign::kNegative);
  radix2(filter_pos_, len, twiddle_, bitrev_, Sign::kNegative);
}

template <typename Scalar>
void Fft1d<Scalar>::radix2(std::span<Complex<Scalar>> a, Index len, const std::vector<Complex<Scalar>>& twiddle,
                           const std::vector<Index>& bitrev, Sign sign) const {
  for (Index i = 0; i < len; ++i) {
    const Index r = bitrev[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  const bool conj = sign == Sign::kPositive;
  for (Index size = 2; size <= len; size <<= 1) {
    const Index half = size / 2;
    const Index step = len / size;
    for (Index start = 0; start < len; start += size) {
      for (Index j = 0; j < half; ++j) {
        const Complex<Scalar>& w = twiddle[j * step];
        const Complex<Scalar> u = a[start + j];
        const Complex<Scalar> v = conj ? cmul_conj(a[start + j + half], w) : cmul(a[start + j + half], w);
        a[start + j] = u + v;
        a[start + j + half] = u - v;
      }
    }
  }
}

template <typename Scalar>
void Fft1d<Scalar>::transform(std::span<Complex<Scalar>> data, Sign sign,
                              std::span<Complex<Scalar>> scratch) const {
  if (static_cast<Index>(data.size()) != n_)
    throw Error(ErrorCode::kLengthMismatch, "transform input has the wrong length");
  if (!bluestein_) {
    radix2(data, n_, twiddle_, bitrev_, sign);
    return;
  }
  if (static_cast<Index>(scratch.size()) < conv_len_)
    throw Error(ErrorCode::kLengthMismatch, "scratch buffer too small");
  const Index len = conv_len_;
  const bool pos = sign == Sign::kPositive;
  auto y = scratch.first(static_cast<std::size_t>(len));
  for (Index k = 0; k < n_; ++k) y[k] = pos ? cmul_conj(data[k], chirp_[k]) : cmul(data[k], chirp_[k]);
  for (Index k = n_; k < len; ++k) y[k] = Complex<Scalar>(0);
  radix2(y, len, twiddle_, bitrev_, Sign::kNegative);
  const auto& filter = pos ? filter_pos_ : filter_neg_;
  for (Index k = 0; k < len; ++k) y[k] = cmul(y[k], filter[k]);
  radix2(y, len, twiddle_, bitrev_, Sign::kPositive);
  const Scalar scale = Scalar(1) / static_cast<Scalar>(len);
  for (Index k = 0; k < n_; ++k)
    data[k] = scale * (pos ? cmul_conj(y[k], chirp_[k]) : cmul(y[k], chirp_[k]));
}

template <typename Scalar>
void Fft1d<Scalar>::transform(std::span<Complex<Scalar>> data, Sign sign) const {
  std::vector<Complex<Scalar>> scratch(static_cast<std::size_t>(scratch_size()));
  transform(data, sign, scratch);
}

template <typename Scalar>
ComplexVector<Scalar> fft_1d(const Eigen::Ref<const ComplexVector<Scalar>>& v, Sign sign) {
  ComplexVector<Scalar> out = v;
  Fft1d<Scalar>(v.size()).transform(std::span(out.data(), static_cast<std::size_t>(out.size())), sign);
  return out;
}

template <typename Scalar>
FftNd<Scalar>::FftNd(const MultiIndex& dims) : dims_(dims) {
  if (dims.size() < 1 || dims.size() > kMaxDim) throw Error(ErrorCode::kInvalidArgument, "tensor rank must be 1..3");
  for (Index a = 0; a < dims.size(); ++a) axes_.emplace_back(dims[a]);
}

template <typename Scalar>
void FftNd<Scalar>::transform(std::span<Complex<Scalar>> data, Sign sign, int threads) const {
  const Index total = product(dims_);
  if (static_cast<Index>(data.size()) != total)
    throw Error(ErrorCode::kLengthMismatch, "tensor data length does not match its dimensions");
  for (Index a = 0; a < dims_.size(); ++a) {
    const Fft1d<Scalar>& f = axes_[a];
    const Index len = dims_[a];
    Index stride = 1;
    for (Index b = a + 1; b < dims_.size(); ++b) stride *= dims_[b];
    const Index lines = total / len;
    parallel_region(threads, [&](int tid, int nthreads) {
      std::vector<Complex<Scalar>> line(stride == 1 ? 0 : static_cast<std::size_t>(len));
      std::vector<Complex<Scalar>> scratch(static_cast<std::size_t>(f.scratch_size()));
      const auto [first, last] = block_range(lines, tid, nthreads);
      for (Index q = first; q < last; ++q) {
        const Index outer = q / stride;
        const Index inner = q % stride;
        Complex<Scalar>* base = data.data() + outer * len * stride + inner;
        if (stride == 1) {
          f.transform(std::span(base, static_cast<std::size_t>(len)), sign, scratch);
          continue;
        }
        for (Index t = 0; t < len; ++t) line[t] = base[t * stride];
        f.transform(line, sign, scratch);
        for (Index t = 0; t < len; ++t) base[t * stride] = line[t];
      }
    });
  }
}

template <typename Scalar>
ComplexTensor<Scalar> fft_nd(const ComplexTensor<Scalar>& t, Sign sign) {
  ComplexTensor<Scalar> out = t;
  FftNd<Scalar>(t.dims).transform(std::span(out.data.data(), static_cast<std::size_t>(out.data.size())), sign);
  return out;
}

template class Fft1d<float>;
template class Fft1d<double>;
template class FftNd<float>;
template class FftNd<double>;
template ComplexVector<float> dft_ref<float>(const Eigen::Ref<const ComplexVector<float>>&, Sign);
template ComplexVector<double> dft_ref<double>(const Eigen::Ref<const ComplexVector<double>>&, Sign);
template ComplexVector<float> fft_1d<float>(const Eigen::Ref<const ComplexVector<float>>&, Sign);
template ComplexVector<double> fft_1d<double>(const Eigen::Ref<const ComplexVector<double>>&, Sign);
template ComplexTensor<float> fft_nd<float>(const ComplexTensor<float>&, Sign);
template ComplexTensor<double> fft_nd<double>(const ComplexTensor<double>&, Sign);

}  // namespace nfftk
