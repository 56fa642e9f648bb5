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

#include <vector>

#include <Eigen/Core>

#include "nfftk/common.hpp"

namespace nfftk {

/// One row per multi-index, row-major.
using IndexMatrix = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Inclusive per-dimension bounds on the grid indices touched by one node.
/// Bounds are unwrapped; reduce with wrap_index before addressing a grid.
struct GatherRange {
  MultiIndex lo;
  MultiIndex hi;
};

/// Throws kInvalidBandlimit unless every entry is even and >= 2.
void check_bandlimit(const MultiIndex& N);

/// All k with -N_i/2 <= k_i <= N_i/2 - 1, last dimension varying fastest.
IndexMatrix index_set(const MultiIndex& N);

bool contains(const MultiIndex& N, const MultiIndex& k);

/// Position of k within index_set(N).
Index linear_index(const MultiIndex& k, const MultiIndex& N);

/// Inverse of linear_index.
MultiIndex multi_index(Index i, const MultiIndex& N);

/// Reduces an integer onto [0, n).
inline Index wrap_index(Index l, Index n) {
  const Index r = l % n;
  return r < 0 ? r + n : r;
}

/// ceil(n_i x_i - m) .. floor(n_i x_i + m) per dimension.
GatherRange gather_range(const Eigen::Ref<const Eigen::VectorXd>& x, const MultiIndex& n, int m);

/// Every node j whose periodic distance to ell satisfies |n_i x_ji - ell_i| <= m in
/// all dimensions. ell is read modulo n. Brute force over all nodes; the fast adjoint never builds this.
std::vector<Index> transposed_members(const MultiIndex& ell, const Eigen::Ref<const NodeMatrix<double>>& nodes,
                                      const MultiIndex& n, int m);

}  // namespace nfftk
