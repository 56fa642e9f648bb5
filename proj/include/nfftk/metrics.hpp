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

#include <chrono>
#include <cstdint>
#include <functional>

#include "nfftk/common.hpp"
#include "nfftk/plan.hpp"

namespace nfftk {

struct ErrorReport {
  double e2 = 0;
  double einf = 0;
};

/// ||f - ftilde||_2 / ||f||_2. Throws kUndefinedMetric when ||f||_2 == 0.
template <typename Scalar>
double error_e2(const Eigen::Ref<const ComplexVector<Scalar>>& f, const Eigen::Ref<const ComplexVector<Scalar>>& ftilde);

/// ||f - ftilde||_inf / ||fhat||_1. Throws kUndefinedMetric when ||fhat||_1 == 0.
template <typename Scalar>
double error_einf(const Eigen::Ref<const ComplexVector<Scalar>>& f, const Eigen::Ref<const ComplexVector<Scalar>>& ftilde,
                  const Eigen::Ref<const ComplexVector<Scalar>>& fhat);

template <typename Scalar>
ErrorReport error_report(const Eigen::Ref<const ComplexVector<Scalar>>& f,
                         const Eigen::Ref<const ComplexVector<Scalar>>& ftilde,
                         const Eigen::Ref<const ComplexVector<Scalar>>& fhat) {
  return {error_e2<Scalar>(f, ftilde), error_einf<Scalar>(f, ftilde, fhat)};
}

/// |I_N| + |I_n| log2 |I_n| + 2 (2m+1)^d M, rounded to the nearest integer.
std::int64_t cost_estimate(const PlanConfig& config);

template <typename Scalar>
std::int64_t cost_estimate(const Plan<Scalar>& plan) {
  return cost_estimate(plan.config());
}

inline constexpr int kTimingSamples = 10;

struct Timing {
  double mean_ms = 0;
  int samples = 0;
};

/// Wall-clock mean of `samples` calls, after one untimed warm-up call.
Timing time_mean(const std::function<void()>& fn, int samples = kTimingSamples);

struct TimingReport {
  double precompute_ms = 0;
  double trafo_ms = 0;
  int samples = kTimingSamples;
};

}  // namespace nfftk
