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

#include "nfftk/common.hpp"
#include "nfftk/plan.hpp"

namespace nfftk {

/// Counters filled by an instrumented transform call.
struct TransformStats {
  /// 1D window evaluations done inside the call (zero when factors were precomputed).
  Index phi_evaluations = 0;
  /// Window weights applied while gathering or spreading, one per (node, grid point) pair.
  Index weight_applications = 0;

  Index window_evaluations() const { return phi_evaluations + weight_applications; }
};

/// Fast evaluation of f(x_j) = sum_k fhat_k exp(-2 pi i k.x_j) for all nodes:
/// deconvolve by c_k, one unnormalized d-variate FFT on the oversampled grid,
/// then gather each node's (2m+1)^d neighbourhood with the truncated window.
template <typename Scalar>
void trafo(const Plan<Scalar>& plan, const VectorIn<Scalar>& fhat,
           VectorOut<Scalar> f, TransformStats* stats = nullptr);

template <typename Scalar>
ComplexVector<Scalar> trafo(const Plan<Scalar>& plan, const VectorIn<Scalar>& fhat,
                            TransformStats* stats = nullptr) {
  ComplexVector<Scalar> f(plan.num_nodes());
  trafo(plan, fhat, f, stats);
  return f;
}

/// Fast evaluation of hhat_k = sum_j f_j exp(+2 pi i k.x_j): spread onto the
/// oversampled grid, positive-sign FFT, then deconvolve. With
/// NFFT_OMP_BLOCKWISE_ADJOINT and more than one thread, dimension 0 of the grid
/// is split into slabs owned by one worker each; every grid point accumulates
/// its nodes in ascending index order, so the result does not depend on the
/// thread count.
template <typename Scalar>
void adjoint(const Plan<Scalar>& plan, const VectorIn<Scalar>& f,
             VectorOut<Scalar> fhat, TransformStats* stats = nullptr);

template <typename Scalar>
ComplexVector<Scalar> adjoint(const Plan<Scalar>& plan, const VectorIn<Scalar>& f,
                              TransformStats* stats = nullptr) {
  ComplexVector<Scalar> fhat(plan.num_coefficients());
  adjoint(plan, f, fhat, stats);
  return fhat;
}

/// Direct O(M |I_N|) evaluation. Phases are reduced modulo one with an exact
/// fma residual before the sine/cosine, and accumulated in double.
template <typename Scalar>
ComplexVector<Scalar> ndft(const Plan<Scalar>& plan, const VectorIn<Scalar>& fhat);

template <typename Scalar>
ComplexVector<Scalar> ndft_adjoint(const Plan<Scalar>& plan, const VectorIn<Scalar>& f);

}  // namespace nfftk
