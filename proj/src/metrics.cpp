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

#include "nfftk/metrics.hpp"

#include <cmath>

namespace nfftk {

template <typename Scalar>
double error_e2(const Eigen::Ref<const ComplexVector<Scalar>>& f, const Eigen::Ref<const ComplexVector<Scalar>>& ftilde) {
  if (f.size() != ftilde.size()) throw Error(ErrorCode::kLengthMismatch, "error_e2: vectors differ in length");
  const double denom = f.template cast<std::complex<double>>().norm();
  if (!(denom > 0)) throw Error(ErrorCode::kUndefinedMetric, "error_e2: reference vector has zero norm");
  return (f.template cast<std::complex<double>>() - ftilde.template cast<std::complex<double>>()).norm() / denom;
}

template <typename Scalar>
double error_einf(const Eigen::Ref<const ComplexVector<Scalar>>& f, const Eigen::Ref<const ComplexVector<Scalar>>& ftilde,
                  const Eigen::Ref<const ComplexVector<Scalar>>& fhat) {
  if (f.size() != ftilde.size()) throw Error(ErrorCode::kLengthMismatch, "error_einf: vectors differ in length");
  const double denom = fhat.template cast<std::complex<double>>().cwiseAbs().sum();
  if (!(denom > 0)) throw Error(ErrorCode::kUndefinedMetric, "error_einf: coefficient vector has zero 1-norm");
  if (f.size() == 0) return 0.0;
  return (f.template cast<std::complex<double>>() - ftilde.template cast<std::complex<double>>()).cwiseAbs().maxCoeff() /
         denom;
}

std::int64_t cost_estimate(const PlanConfig& c) {
  const double coeffs = static_cast<double>(product(c.N));
  const double grid = static_cast<double>(product(c.n));
  double window = 2.0 * static_cast<double>(c.M);
  for (int i = 0; i < c.dim(); ++i) window *= 2.0 * c.m + 1.0;
  return std::llround(coeffs + grid * std::log2(grid) + window);
}

Timing time_mean(const std::function<void()>& fn, int samples) {
  using clock = std::chrono::steady_clock;
  fn();
  double total = 0;
  for (int s = 0; s < samples; ++s) {
    const auto t0 = clock::now();
    fn();
    total += std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  }
  return {samples > 0 ? total / samples : 0.0, samples};
}

template double error_e2<float>(const Eigen::Ref<const ComplexVector<float>>&, const Eigen::Ref<const ComplexVector<float>>&);
template double error_e2<double>(const Eigen::Ref<const ComplexVector<double>>&,
                                 const Eigen::Ref<const ComplexVector<double>>&);
template double error_einf<float>(const Eigen::Ref<const ComplexVector<float>>&, const Eigen::Ref<const ComplexVector<float>>&,
                                  const Eigen::Ref<const ComplexVector<float>>&);
template double error_einf<double>(const Eigen::Ref<const ComplexVector<double>>&,
                                   const Eigen::Ref<const ComplexVector<double>>&,
                                   const Eigen::Ref<const ComplexVector<double>>&);

}  // namespace nfftk
