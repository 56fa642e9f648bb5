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

#include <cstdint>
#include <optional>
#include <vector>

#include "nfftk/common.hpp"
#include "nfftk/fft.hpp"
#include "nfftk/window.hpp"

namespace nfftk {

// NFFT flag word (f1). Bit positions follow the NFFT3 library.
inline constexpr std::uint32_t PRE_PHI_HUT = 1u << 0;
inline constexpr std::uint32_t FG_PSI = 1u << 1;
inline constexpr std::uint32_t PRE_LIN_PSI = 1u << 2;
inline constexpr std::uint32_t PRE_FG_PSI = 1u << 3;
inline constexpr std::uint32_t PRE_PSI = 1u << 4;
inline constexpr std::uint32_t PRE_FULL_PSI = 1u << 5;
inline constexpr std::uint32_t MALLOC_X = 1u << 6;
inline constexpr std::uint32_t MALLOC_F_HAT = 1u << 7;
inline constexpr std::uint32_t MALLOC_F = 1u << 8;
inline constexpr std::uint32_t FFT_OUT_OF_PLACE = 1u << 9;
inline constexpr std::uint32_t FFTW_INIT = 1u << 10;
inline constexpr std::uint32_t NFFT_SORT_NODES = 1u << 11;
inline constexpr std::uint32_t NFFT_OMP_BLOCKWISE_ADJOINT = 1u << 12;

// FFTW flag word (f2). Accepted for interface compatibility and otherwise ignored.
inline constexpr std::uint32_t FFTW_MEASURE = 0u;
inline constexpr std::uint32_t FFTW_DESTROY_INPUT = 1u << 0;
inline constexpr std::uint32_t FFTW_UNALIGNED = 1u << 1;
inline constexpr std::uint32_t FFTW_CONSERVE_MEMORY = 1u << 2;
inline constexpr std::uint32_t FFTW_EXHAUSTIVE = 1u << 3;
inline constexpr std::uint32_t FFTW_PRESERVE_INPUT = 1u << 4;
inline constexpr std::uint32_t FFTW_PATIENT = 1u << 5;
inline constexpr std::uint32_t FFTW_ESTIMATE = 1u << 6;
inline constexpr std::uint32_t FFTW_WISDOM_ONLY = 1u << 21;

/// Memory-management flags the library always behaves as if set.
inline constexpr std::uint32_t kMallocFlags = MALLOC_X | MALLOC_F_HAT | MALLOC_F | FFTW_INIT | FFT_OUT_OF_PLACE;
inline constexpr std::uint32_t kKnownNfftFlags = PRE_PHI_HUT | PRE_LIN_PSI | PRE_PSI | PRE_FULL_PSI | kMallocFlags |
                                                 NFFT_SORT_NODES | NFFT_OMP_BLOCKWISE_ADJOINT;
inline constexpr std::uint32_t kKnownFftwFlags = FFTW_DESTROY_INPUT | FFTW_UNALIGNED | FFTW_CONSERVE_MEMORY |
                                                 FFTW_EXHAUSTIVE | FFTW_PRESERVE_INPUT | FFTW_PATIENT |
                                                 FFTW_ESTIMATE | FFTW_WISDOM_ONLY;

inline constexpr int kDefaultCutoff = 8;
inline constexpr std::uint32_t kDefaultFftwFlags = FFTW_ESTIMATE | FFTW_DESTROY_INPUT;
inline constexpr Index kDefaultLinPsiTableSize = Index{1} << 14;

/// PRE_PHI_HUT | PRE_PSI plus the memory flags; d > 1 adds node sorting and
/// the blockwise adjoint.
std::uint32_t default_nfft_flags(int d);

/// n_i = 2^(ceil(log2 N_i) + 1).
MultiIndex default_n(const MultiIndex& N);

struct PlanConfig {
  MultiIndex N;
  Index M = 0;
  MultiIndex n;
  int m = kDefaultCutoff;
  std::uint32_t f1 = 0;
  std::uint32_t f2 = kDefaultFftwFlags;
  WindowKind window = WindowKind::kKaiserBessel;
  /// Intervals of the PRE_LIN_PSI lookup table over [0, m/n_i].
  Index lin_psi_table_size = kDefaultLinPsiTableSize;

  int dim() const { return static_cast<int>(N.size()); }
};

/// Config produced by the short constructor: default n, m = 8, default flags.
/// Grids shorter than 32 are widened to 32 so the window fits.
PlanConfig default_config(const MultiIndex& N, Index M);

/// Throws the matching ErrorCode for the first violated invariant.
void validate(const PlanConfig& config);

template <typename Scalar>
struct PrecomputeTables {
  /// PRE_PHI_HUT: per dimension, phi_hat(k) for k = -N_i/2 .. N_i/2.
  std::vector<std::vector<Scalar>> phi_hut;
  /// PRE_PSI: node-major, then dimension, then 2m+1 factors.
  std::vector<Scalar> psi_tensor;
  /// PRE_FULL_PSI: node-major, (2m+1)^d tensor products, last dimension fastest.
  std::vector<Scalar> psi_full;
  /// PRE_LIN_PSI: per dimension, phi sampled at u = s m / K for s = 0..K (u in grid units).
  std::vector<std::vector<Scalar>> psi_lut;
  /// NFFT_SORT_NODES: node indices ordered lexicographically by grid cell floor(n x).
  std::vector<Index> node_order;
};

/// Problem sizes, parameters, flags, nodes and precomputed tables of one NFFT.
///
/// set_nodes() and precompute() need exclusive access. Afterwards the plan is
/// read-only for trafo/adjoint, which may run concurrently on one plan.
template <typename Scalar>
class Plan {
 public:
  explicit Plan(PlanConfig config);

  const PlanConfig& config() const { return config_; }
  int dim() const { return config_.dim(); }
  const MultiIndex& bandlimit() const { return config_.N; }
  const MultiIndex& fft_length() const { return config_.n; }
  Index num_nodes() const { return config_.M; }
  int cutoff() const { return config_.m; }
  std::uint32_t nfft_flags() const { return config_.f1; }
  std::uint32_t fftw_flags() const { return config_.f2; }
  bool has_flag(std::uint32_t flag) const { return (config_.f1 & flag) != 0; }

  /// |I_N|
  Index num_coefficients() const { return num_coefficients_; }
  /// |I_n|
  Index grid_size() const { return grid_size_; }
  /// 2m + 1
  int window_width() const { return 2 * config_.m + 1; }

  const Window<Scalar>& window() const { return window_; }
  const FftNd<Scalar>& fft() const { return fft_; }

  int threads() const { return threads_; }
  void set_threads(int threads) { threads_ = threads < 1 ? 1 : threads; }

  /// Stores an M x d node matrix. Coordinates must lie in [-1/2, 1/2).
  /// Drops any precomputed tables and, with NFFT_SORT_NODES, builds node_order.
  void set_nodes(const Eigen::Ref<const NodeMatrix<Scalar>>& x);
  bool has_nodes() const { return has_nodes_; }
  const NodeMatrix<Scalar>& nodes() const { return nodes_; }

  /// Builds exactly the tables requested by f1. Re-running rebuilds them.
  void precompute();
  bool is_precomputed() const { return precomputed_; }
  const PrecomputeTables<Scalar>& tables() const { return tables_; }

  /// Window factors of node j: out[i * (2m+1) + t] for t = 0..2m, zero past the
  /// node's gather range. Returns the number of phi evaluations performed.
  Index compute_factors(Index j, Scalar* out) const;
  /// Same, through the PRE_LIN_PSI lookup table.
  Index compute_factors_lin(Index j, Scalar* out) const;
  /// First unwrapped grid index of node j along dimension i.
  Index gather_origin(Index j, int i) const;

  /// phi_hat(k) along dimension i for |k| <= N_i/2, from the phi_hut table when present.
  Scalar phi_hat_value(Index k, int i) const {
    return tables_.phi_hut.empty() ? window_.phi_hat(k, i)
                                   : tables_.phi_hut[i][static_cast<std::size_t>(k + config_.N[i] / 2)];
  }

 private:
  void sort_nodes();

  PlanConfig config_;
  Window<Scalar> window_;
  FftNd<Scalar> fft_;
  Index num_coefficients_;
  Index grid_size_;
  int threads_;
  NodeMatrix<Scalar> nodes_;
  bool has_nodes_ = false;
  bool precomputed_ = false;
  PrecomputeTables<Scalar> tables_;
};

/// Short constructor: see default_config.
template <typename Scalar = double>
Plan<Scalar> plan_new(const MultiIndex& N, Index M) {
  return Plan<Scalar>(default_config(N, M));
}

/// Advanced constructor; trailing parameters fall back to the defaults.
template <typename Scalar = double>
Plan<Scalar> plan_new_advanced(const MultiIndex& N, Index M, const MultiIndex& n, int m = kDefaultCutoff,
                               std::optional<std::uint32_t> f1 = std::nullopt,
                               std::uint32_t f2 = kDefaultFftwFlags) {
  PlanConfig c;
  c.N = N;
  c.M = M;
  c.n = n;
  c.m = m;
  c.f1 = f1.value_or(default_nfft_flags(static_cast<int>(N.size())));
  c.f2 = f2;
  return Plan<Scalar>(std::move(c));
}

extern template class Plan<float>;
extern template class Plan<double>;

}  // namespace nfftk
