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

#include "nfftk/indexing.hpp"

#include <cmath>
#include <sstream>

namespace nfftk {

MultiIndex parse_multi_index(const std::string& text) {
  MultiIndex out(0);
  std::stringstream ss(text);
  std::string item;
  std::vector<Index> vals;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "not an integer list: '" + text + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::kParse, "not an integer list: '" + text + "'");
    vals.push_back(v);
  }
  if (vals.empty() || vals.size() > static_cast<std::size_t>(kMaxDim))
    throw Error(ErrorCode::kParse, "expected 1 to 3 comma separated integers: '" + text + "'");
  out.resize(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) out[static_cast<Index>(i)] = vals[i];
  return out;
}

std::string format_multi_index(const MultiIndex& v, char sep) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

void check_bandlimit(const MultiIndex& N) {
  if (N.size() < 1 || N.size() > kMaxDim)
    throw Error(ErrorCode::kInvalidBandlimit, "dimension must be 1, 2 or 3");
  for (Index i = 0; i < N.size(); ++i) {
    if (N[i] < 2 || N[i] % 2 != 0)
      throw Error(ErrorCode::kInvalidBandlimit,
                  "bandlimit " + format_multi_index(N) + " must consist of even integers >= 2");
  }
}

IndexMatrix index_set(const MultiIndex& N) {
  check_bandlimit(N);
  const Index d = N.size();
  const Index total = product(N);
  IndexMatrix out(total, d);
  for (Index i = 0; i < total; ++i) out.row(i) = multi_index(i, N).transpose();
  return out;
}

bool contains(const MultiIndex& N, const MultiIndex& k) {
  if (k.size() != N.size()) return false;
  for (Index i = 0; i < N.size(); ++i) {
    if (k[i] < -N[i] / 2 || k[i] > N[i] / 2 - 1) return false;
  }
  return true;
}

Index linear_index(const MultiIndex& k, const MultiIndex& N) {
  if (!contains(N, k))
    throw Error(ErrorCode::kOutOfRange,
                "multi-index (" + format_multi_index(k) + ") outside I_N for N=" + format_multi_index(N));
  Index idx = 0;
  for (Index i = 0; i < N.size(); ++i) idx = idx * N[i] + (k[i] + N[i] / 2);
  return idx;
}

MultiIndex multi_index(Index i, const MultiIndex& N) {
  const Index total = product(N);
  if (i < 0 || i >= total)
    throw Error(ErrorCode::kOutOfRange, "linear index " + std::to_string(i) + " outside [0, " +
                                            std::to_string(total) + ")");
  MultiIndex k(N.size());
  for (Index t = N.size() - 1; t >= 0; --t) {
    k[t] = i % N[t] - N[t] / 2;
    i /= N[t];
  }
  return k;
}

GatherRange gather_range(const Eigen::Ref<const Eigen::VectorXd>& x, const MultiIndex& n, int m) {
  if (x.size() != n.size() || n.size() < 1 || n.size() > kMaxDim)
    throw Error(ErrorCode::kInvalidArgument, "node and grid dimensions disagree");
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "cutoff m must be >= 1");
  GatherRange r{MultiIndex(n.size()), MultiIndex(n.size())};
  for (Index i = 0; i < n.size(); ++i) {
    if (!(x[i] >= -0.5 && x[i] < 0.5))
      throw Error(ErrorCode::kInvalidArgument, "node coordinate outside [-1/2, 1/2)");
    if (2 * m + 1 > n[i]) throw Error(ErrorCode::kInvalidArgument, "2m+1 exceeds the grid length");
    const double nn = static_cast<double>(n[i]);
    r.lo[i] = static_cast<Index>(std::ceil(std::fma(nn, x[i], -m)));
    r.hi[i] = static_cast<Index>(std::floor(std::fma(nn, x[i], m)));
  }
  return r;
}

std::vector<Index> transposed_members(const MultiIndex& ell, const Eigen::Ref<const NodeMatrix<double>>& nodes,
                                      const MultiIndex& n, int m) {
  if (nodes.cols() != n.size() || ell.size() != n.size())
    throw Error(ErrorCode::kInvalidArgument, "node and grid dimensions disagree");
  std::vector<Index> out;
  for (Index j = 0; j < nodes.rows(); ++j) {
    bool inside = true;
    for (Index i = 0; i < n.size() && inside; ++i) {
      const double nn = static_cast<double>(n[i]);
      // periodic offset reduced onto [-n/2, n/2)
      double delta = std::fma(nn, nodes(j, i), -static_cast<double>(ell[i]));
      delta -= nn * std::floor(delta / nn + 0.5);
      inside = std::abs(delta) <= m;
    }
    if (inside) out.push_back(j);
  }
  return out;
}

}  // namespace nfftk
