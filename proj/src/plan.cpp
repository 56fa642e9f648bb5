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

#include "nfftk/plan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfftk/indexing.hpp"
#include "nfftk/parallel.hpp"

namespace nfftk {

std::uint32_t default_nfft_flags(int d) {
  const std::uint32_t base = PRE_PHI_HUT | PRE_PSI | kMallocFlags;
  return d > 1 ? base | NFFT_SORT_NODES | NFFT_OMP_BLOCKWISE_ADJOINT : base;
}

MultiIndex default_n(const MultiIndex& N) {
  check_bandlimit(N);
  MultiIndex n(N.size());
  for (Index i = 0; i < N.size(); ++i) {
    Index p = 1;
    while (p < N[i]) p <<= 1;
    n[i] = 2 * p;
  }
  return n;
}

PlanConfig default_config(const MultiIndex& N, Index M) {
  PlanConfig c;
  c.N = N;
  c.M = M;
  c.n = default_n(N);
  c.m = kDefaultCutoff;
  // tiny grids are widened until the default window fits
  Index fit = 1;
  while (fit < 2 * kDefaultCutoff + 1) fit *= 2;
  c.n = c.n.cwiseMax(fit);
  c.f1 = default_nfft_flags(static_cast<int>(N.size()));
  c.f2 = kDefaultFftwFlags;
  return c;
}

void validate(const PlanConfig& c) {
  check_bandlimit(c.N);
  if (c.M < 1) throw Error(ErrorCode::kInvalidArgument, "number of nodes M must be >= 1");
  if (c.n.size() != c.N.size())
    throw Error(ErrorCode::kInvalidArgument, "FFT length and bandlimit have different dimensions");
  for (Index i = 0; i < c.N.size(); ++i) {
    if (c.n[i] % 2 != 0) throw Error(ErrorCode::kOversampling, "FFT length n_i must be even");
    if (c.n[i] <= c.N[i])
      throw Error(ErrorCode::kOversampling, "FFT length " + format_multi_index(c.n) +
                                                " must exceed the bandlimit " + format_multi_index(c.N));
  }
  if (c.m < 1) throw Error(ErrorCode::kCutoff, "cutoff m must be >= 1");
  if (2 * static_cast<Index>(c.m) + 1 > c.n.minCoeff())
    throw Error(ErrorCode::kCutoff, "2m+1 exceeds the smallest FFT length");
  if ((c.f1 & (FG_PSI | PRE_FG_PSI)) != 0)
    throw Error(ErrorCode::kInvalidFlag, "fast Gaussian gridding (FG_PSI, PRE_FG_PSI) is not supported");
  if ((c.f1 & ~kKnownNfftFlags) != 0) throw Error(ErrorCode::kInvalidFlag, "unknown bits in NFFT flag word");
  if ((c.f2 & ~kKnownFftwFlags) != 0) throw Error(ErrorCode::kInvalidFlag, "unknown bits in FFTW flag word");
  if ((c.f1 & PRE_LIN_PSI) != 0 && c.lin_psi_table_size < 1)
    throw Error(ErrorCode::kInvalidArgument, "lookup table size must be positive");
}

namespace {
const PlanConfig& validated(const PlanConfig& c) {
  validate(c);
  return c;
}
}  // namespace

template <typename Scalar>
Plan<Scalar>::Plan(PlanConfig config)
    : config_(std::move(config)),
      window_(validated(config_).window, config_.N, config_.n, config_.m),
      fft_(config_.n),
      num_coefficients_(product(config_.N)),
      grid_size_(product(config_.n)),
      threads_(hardware_threads()),
      nodes_(NodeMatrix<Scalar>::Zero(config_.M, config_.dim())) {}

template <typename Scalar>
void Plan<Scalar>::set_nodes(const Eigen::Ref<const NodeMatrix<Scalar>>& x) {
  if (x.rows() != config_.M || x.cols() != dim())
    throw Error(ErrorCode::kLengthMismatch, "node matrix must be " + std::to_string(config_.M) + " x " +
                                                std::to_string(dim()));
  for (Index j = 0; j < x.rows(); ++j)
    for (Index i = 0; i < x.cols(); ++i) {
      const Scalar v = x(j, i);
      if (!(v >= Scalar(-0.5) && v < Scalar(0.5)))
        throw Error(ErrorCode::kNodeRange, "node " + std::to_string(j) + " has a coordinate outside [-1/2, 1/2)");
    }
  nodes_ = x;
  has_nodes_ = true;
  precomputed_ = false;
  tables_ = PrecomputeTables<Scalar>{};
  if (has_flag(NFFT_SORT_NODES)) sort_nodes();
}

template <typename Scalar>
void Plan<Scalar>::sort_nodes() {
  const int d = dim();
  const Index M = config_.M;
  std::vector<Index> cells(static_cast<std::size_t>(M * d));
  for (Index j = 0; j < M; ++j)
    for (int i = 0; i < d; ++i)
      cells[j * d + i] = static_cast<Index>(std::floor(static_cast<Scalar>(config_.n[i]) * nodes_(j, i)));
  tables_.node_order.resize(static_cast<std::size_t>(M));
  std::iota(tables_.node_order.begin(), tables_.node_order.end(), Index{0});
  std::stable_sort(tables_.node_order.begin(), tables_.node_order.end(), [&](Index a, Index b) {
    return std::lexicographical_compare(cells.begin() + a * d, cells.begin() + (a + 1) * d, cells.begin() + b * d,
                                        cells.begin() + (b + 1) * d);
  });
}

template <typename Scalar>
Index Plan<Scalar>::gather_origin(Index j, int i) const {
  const Scalar n = static_cast<Scalar>(config_.n[i]);
  return static_cast<Index>(std::ceil(std::fma(n, nodes_(j, i), -static_cast<Scalar>(config_.m))));
}

template <typename Scalar>
Index Plan<Scalar>::compute_factors(Index j, Scalar* out) const {
  const int w = window_width();
  const Scalar mm = static_cast<Scalar>(config_.m);
  Index evals = 0;
  for (int i = 0; i < dim(); ++i) {
    const Scalar n = static_cast<Scalar>(config_.n[i]);
    const Scalar x = nodes_(j, i);
    const Index lo = static_cast<Index>(std::ceil(std::fma(n, x, -mm)));
    const Index hi = static_cast<Index>(std::floor(std::fma(n, x, mm)));
    for (int t = 0; t < w; ++t) {
      const Index l = lo + t;
      if (l > hi) {
        out[i * w + t] = Scalar(0);
        continue;
      }
      out[i * w + t] = window_.phi_grid(std::fma(n, x, -static_cast<Scalar>(l)), i);
      ++evals;
    }
  }
  return evals;
}

template <typename Scalar>
Index Plan<Scalar>::compute_factors_lin(Index j, Scalar* out) const {
  const int w = window_width();
  const Scalar mm = static_cast<Scalar>(config_.m);
  const Index K = config_.lin_psi_table_size;
  const Scalar scale = static_cast<Scalar>(K) / mm;
  Index evals = 0;
  for (int i = 0; i < dim(); ++i) {
    const std::vector<Scalar>& lut = tables_.psi_lut[i];
    const Scalar n = static_cast<Scalar>(config_.n[i]);
    const Scalar x = nodes_(j, i);
    const Index lo = static_cast<Index>(std::ceil(std::fma(n, x, -mm)));
    const Index hi = static_cast<Index>(std::floor(std::fma(n, x, mm)));
    for (int t = 0; t < w; ++t) {
      const Index l = lo + t;
      if (l > hi) {
        out[i * w + t] = Scalar(0);
        continue;
      }
      const Scalar v = std::abs(std::fma(n, x, -static_cast<Scalar>(l))) * scale;
      const Index s = std::min<Index>(static_cast<Index>(v), K - 1);
      const Scalar frac = std::min<Scalar>(v - static_cast<Scalar>(s), Scalar(1));
      out[i * w + t] = lut[s] + frac * (lut[s + 1] - lut[s]);
      ++evals;
    }
  }
  return evals;
}

template <typename Scalar>
void Plan<Scalar>::precompute() {
  if (!has_nodes_) throw Error(ErrorCode::kNotPrecomputed, "precompute requires nodes; call set_nodes first");
  precomputed_ = false;
  std::vector<Index> order = std::move(tables_.node_order);
  tables_ = PrecomputeTables<Scalar>{};
  tables_.node_order = std::move(order);
  const int d = dim();
  const int w = window_width();
  const Index M = config_.M;

  if (has_flag(PRE_PHI_HUT)) {
    tables_.phi_hut.resize(d);
    for (int i = 0; i < d; ++i) {
      const Index half = config_.N[i] / 2;
      auto& row = tables_.phi_hut[i];
      row.resize(static_cast<std::size_t>(2 * half + 1));
      for (Index k = -half; k <= half; ++k) row[static_cast<std::size_t>(k + half)] = window_.phi_hat(k, i);
    }
  } else {
    // Surface a degenerate window here rather than in the middle of a transform.
    for (int i = 0; i < d; ++i)
      for (Index k = -config_.N[i] / 2; k <= config_.N[i] / 2; ++k) (void)window_.phi_hat(k, i);
  }

  if (has_flag(PRE_LIN_PSI)) {
    const Index K = config_.lin_psi_table_size;
    tables_.psi_lut.resize(d);
    for (int i = 0; i < d; ++i) {
      auto& lut = tables_.psi_lut[i];
      lut.resize(static_cast<std::size_t>(K + 1));
      for (Index s = 0; s <= K; ++s)
        lut[s] = window_.phi_grid(static_cast<Scalar>(config_.m) * static_cast<Scalar>(s) / static_cast<Scalar>(K), i);
    }
  }

  if (has_flag(PRE_PSI)) tables_.psi_tensor.assign(static_cast<std::size_t>(M * d * w), Scalar(0));
  Index full_stride = 1;
  for (int i = 0; i < d; ++i) full_stride *= w;
  if (has_flag(PRE_FULL_PSI)) tables_.psi_full.assign(static_cast<std::size_t>(M * full_stride), Scalar(0));

  if (has_flag(PRE_PSI) || has_flag(PRE_FULL_PSI)) {
    parallel_region(threads_, [&](int tid, int nthreads) {
      std::vector<Scalar> factors(static_cast<std::size_t>(d * w));
      const auto [first, last] = block_range(M, tid, nthreads);
      for (Index j = first; j < last; ++j) {
        compute_factors(j, factors.data());
        if (has_flag(PRE_PSI)) std::copy(factors.begin(), factors.end(), tables_.psi_tensor.begin() + j * d * w);
        if (!has_flag(PRE_FULL_PSI)) continue;
        Scalar* full = tables_.psi_full.data() + j * full_stride;
        const Scalar* f0 = factors.data();
        const Scalar* f1 = f0 + w;
        const Scalar* f2 = f1 + w;
        if (d == 1) {
          for (int a = 0; a < w; ++a) full[a] = f0[a];
        } else if (d == 2) {
          for (int a = 0; a < w; ++a)
            for (int b = 0; b < w; ++b) full[a * w + b] = f0[a] * f1[b];
        } else {
          for (int a = 0; a < w; ++a)
            for (int b = 0; b < w; ++b) {
              const Scalar ab = f0[a] * f1[b];
              for (int c = 0; c < w; ++c) full[(a * w + b) * w + c] = ab * f2[c];
            }
        }
      }
    });
  }

  precomputed_ = true;
}

template class Plan<float>;
template class Plan<double>;

}  // namespace nfftk
