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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

namespace nfftk {

/// Largest supported spatial dimension.
inline constexpr int kMaxDim = 3;

using Index = std::int64_t;

/// Small integer d-tuple (bandlimits, FFT lengths, frequency indices).
/// Dynamic size with a fixed upper bound, so it never touches the heap.
using MultiIndex = Eigen::Array<Index, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Vector parameters whose scalar is taken from another argument (usually the plan).
template <typename Scalar>
using VectorIn = Eigen::Ref<const ComplexVector<std::type_identity_t<Scalar>>>;
template <typename Scalar>
using VectorOut = Eigen::Ref<ComplexVector<std::type_identity_t<Scalar>>>;

/// M x d node coordinates, one node per row (x[j*d + t] in memory).
template <typename Scalar>
using NodeMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class ErrorCode {
  kInvalidBandlimit,
  kOutOfRange,
  kInvalidArgument,
  kWindowDegenerate,
  kOversampling,
  kCutoff,
  kInvalidFlag,
  kNodeRange,
  kLengthMismatch,
  kNotPrecomputed,
  kUndefinedMetric,
  kParse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Index product(const MultiIndex& v) {
  Index p = 1;
  for (Index i = 0; i < v.size(); ++i) p *= v[i];
  return p;
}

/// Parses "512" or "128,128" style lists.
MultiIndex parse_multi_index(const std::string& text);
std::string format_multi_index(const MultiIndex& v, char sep = ',');

}  // namespace nfftk
