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

#include "nfftk/transform.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "nfftk/indexing.hpp"
#include "nfftk/parallel.hpp"

namespace nfftk {
namespace {

enum class Strategy { kFull, kTensor, kLin, kDirect };

template <typename Scalar>
Strategy strategy_of(const Plan<Scalar>& plan) {
  if (plan.has_flag(PRE_FULL_PSI)) return Strategy::kFull;
  if (plan.has_flag(PRE_PSI)) return Strategy::kTensor;
  if (plan.has_flag(PRE_LIN_PSI)) return Strategy::kLin;
  return Strategy::kDirect;
}

template <typename Scalar>
void check_ready(const Plan<Scalar>& plan, Index spectral_len, Index sample_len) {
  if (!plan.is_precomputed())
    throw Error(ErrorCode::kNotPrecomputed, "plan is not precomputed; call set_nodes and precompute first");
  if (spectral_len != plan.num_coefficients())
    throw Error(ErrorCode::kLengthMismatch, "coefficient vector has length " + std::to_string(spectral_len) +
                                                ", expected " + std::to_string(plan.num_coefficients()));
  if (sample_len != plan.num_nodes())
    throw Error(ErrorCode::kLengthMismatch, "sample vector has length " + std::to_string(sample_len) +
                                                ", expected " + std::to_string(plan.num_nodes()));
}

// Row-major strides of the oversampled grid.
template <typename Scalar>
std::array<Index, kMaxDim> grid_strides(const Plan<Scalar>& plan) {
  std::array<Index, kMaxDim> s{1, 1, 1};
  for (int i = plan.dim() - 2; i >= 0; --i) s[i] = s[i + 1] * plan.fft_length()[i + 1];
  return s;
}

// Per-worker buffers for one node's window factors and wrapped grid offsets.
template <typename Scalar>
struct NodeScratch {
  explicit NodeScratch(int d, int w) : factors(static_cast<std::size_t>(d * w)) {
    for (auto& o : offsets) o.resize(static_cast<std::size_t>(w));
    rows.resize(static_cast<std::size_t>(w));
  }
  std::vector<Scalar> factors;
  std::array<std::vector<Index>, kMaxDim> offsets;
  std::vector<Index> rows;  // wrapped dimension-0 indices
};

// Fills scratch.offsets/rows for node j and returns where its weights live.
template <typename Scalar>
std::pair<const Scalar*, const Scalar*> load_node(const Plan<Scalar>& plan, Strategy strategy, Index j,
                                                  const std::array<Index, kMaxDim>& strides,
                                                  NodeScratch<Scalar>& scratch, Index& evals) {
  const int d = plan.dim();
  const int w = plan.window_width();
  for (int i = 0; i < d; ++i) {
    const Index n = plan.fft_length()[i];
    Index l = wrap_index(plan.gather_origin(j, i), n);
    for (int t = 0; t < w; ++t) {
      if (i == 0) scratch.rows[t] = l;
      scratch.offsets[i][t] = l * strides[i];
      if (++l == n) l = 0;
    }
  }
  switch (strategy) {
    case Strategy::kFull: {
      Index stride = 1;
      for (int i = 0; i < d; ++i) stride *= w;
      return {nullptr, plan.tables().psi_full.data() + j * stride};
    }
    case Strategy::kTensor:
      return {plan.tables().psi_tensor.data() + j * d * w, nullptr};
    case Strategy::kLin:
      evals += plan.compute_factors_lin(j, scratch.factors.data());
      return {scratch.factors.data(), nullptr};
    case Strategy::kDirect:
      break;
  }
  evals += plan.compute_factors(j, scratch.factors.data());
  return {scratch.factors.data(), nullptr};
}

template <typename Scalar, int D>
Complex<Scalar> gather_node(const Complex<Scalar>* g, const NodeScratch<Scalar>& s, int w, const Scalar* factors,
                            const Scalar* full, Index& applied) {
  Scalar re = 0;
  Scalar im = 0;
  const Index* o0 = s.offsets[0].data();
  if constexpr (D == 1) {
    for (int a = 0; a < w; ++a) {
      const Scalar wt = full ? full[a] : factors[a];
      re += g[o0[a]].real() * wt;
      im += g[o0[a]].imag() * wt;
    }
  } else if constexpr (D == 2) {
    const Index* o1 = s.offsets[1].data();
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b) {
        const Scalar wt = full ? full[a * w + b] : factors[a] * factors[w + b];
        const Complex<Scalar>& v = g[o0[a] + o1[b]];
        re += v.real() * wt;
        im += v.imag() * wt;
      }
  } else {
    const Index* o1 = s.offsets[1].data();
    const Index* o2 = s.offsets[2].data();
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b) {
        const Complex<Scalar>* row = g + o0[a] + o1[b];
        if (full) {
          const Scalar* fr = full + (a * w + b) * w;
          for (int c = 0; c < w; ++c) {
            re += row[o2[c]].real() * fr[c];
            im += row[o2[c]].imag() * fr[c];
          }
        } else {
          const Scalar ab = factors[a] * factors[w + b];
          const Scalar* f2 = factors + 2 * w;
          for (int c = 0; c < w; ++c) {
            const Scalar wt = ab * f2[c];
            re += row[o2[c]].real() * wt;
            im += row[o2[c]].imag() * wt;
          }
        }
      }
  }
  Index terms = w;
  for (int i = 1; i < D; ++i) terms *= w;
  applied += terms;
  return {re, im};
}

// Adds value * weight into every grid point of the node whose dimension-0 row
// lies in [row_lo, row_hi).
template <typename Scalar, int D>
void spread_node(Complex<Scalar>* g, const NodeScratch<Scalar>& s, int w, const Scalar* factors, const Scalar* full,
                 Complex<Scalar> value, Index row_lo, Index row_hi, Index& applied) {
  const Index* o0 = s.offsets[0].data();
  const Scalar vr = value.real();
  const Scalar vi = value.imag();
  Index rows = 0;
  auto add = [&](Complex<Scalar>& dst, Scalar wt) { dst = {dst.real() + vr * wt, dst.imag() + vi * wt}; };
  for (int a = 0; a < w; ++a) {
    if (s.rows[a] < row_lo || s.rows[a] >= row_hi) continue;
    ++rows;
    if constexpr (D == 1) {
      add(g[o0[a]], full ? full[a] : factors[a]);
    } else if constexpr (D == 2) {
      const Index* o1 = s.offsets[1].data();
      for (int b = 0; b < w; ++b) add(g[o0[a] + o1[b]], full ? full[a * w + b] : factors[a] * factors[w + b]);
    } else {
      const Index* o1 = s.offsets[1].data();
      const Index* o2 = s.offsets[2].data();
      for (int b = 0; b < w; ++b) {
        Complex<Scalar>* row = g + o0[a] + o1[b];
        if (full) {
          const Scalar* fr = full + (a * w + b) * w;
          for (int c = 0; c < w; ++c) add(row[o2[c]], fr[c]);
        } else {
          const Scalar ab = factors[a] * factors[w + b];
          const Scalar* f2 = factors + 2 * w;
          for (int c = 0; c < w; ++c) add(row[o2[c]], ab * f2[c]);
        }
      }
    }
  }
  Index per_row = 1;
  for (int i = 1; i < D; ++i) per_row *= w;
  applied += rows * per_row;
}

// True when the wrapped rows lo, lo+1, ..., lo+w-1 (mod n) meet [row_lo, row_hi).
inline bool touches(Index first_row, int w, Index n, Index row_lo, Index row_hi) {
  const Index last = first_row + w - 1;
  if (last < n) return first_row < row_hi && last >= row_lo;
  return first_row < row_hi || last - n >= row_lo;
}

// Walks I_N in linear order and calls fn(linear, grid_offset, c_k).
template <typename Scalar, typename Fn>
void for_each_coefficient(const Plan<Scalar>& plan, int threads, Fn&& fn) {
  const int d = plan.dim();
  const auto strides = grid_strides(plan);
  std::array<std::vector<Scalar>, kMaxDim> c;
  std::array<std::vector<Index>, kMaxDim> off;
  for (int i = 0; i < d; ++i) {
    const Index N = plan.bandlimit()[i];
    const Index n = plan.fft_length()[i];
    c[i].resize(static_cast<std::size_t>(N));
    off[i].resize(static_cast<std::size_t>(N));
    for (Index q = 0; q < N; ++q) {
      const Index k = q - N / 2;
      c[i][q] = plan.phi_hat_value(k, i);
      off[i][q] = wrap_index(k, n) * strides[i];
    }
  }
  const Index total = plan.num_coefficients();
  parallel_region(threads, [&](int tid, int nthreads) {
    const auto [first, last] = block_range(total, tid, nthreads);
    for (Index lin = first; lin < last; ++lin) {
      Index rem = lin;
      std::array<Index, kMaxDim> q{};
      for (int i = d - 1; i >= 0; --i) {
        q[i] = rem % plan.bandlimit()[i];
        rem /= plan.bandlimit()[i];
      }
      Scalar ck = 1;
      Index offset = 0;
      for (int i = 0; i < d; ++i) {
        ck *= c[i][q[i]];
        offset += off[i][q[i]];
      }
      fn(lin, offset, ck);
    }
  });
}

template <typename Scalar>
Complex<Scalar> scale_down(const Complex<Scalar>& v, Scalar den) {
  return {v.real() / den, v.imag() / den};
}

template <typename Scalar, int D>
void gather_all(const Plan<Scalar>& plan, const Complex<Scalar>* grid, Eigen::Ref<ComplexVector<Scalar>> f,
                TransformStats* stats) {
  const Strategy strategy = strategy_of(plan);
  const auto strides = grid_strides(plan);
  const int w = plan.window_width();
  const Index M = plan.num_nodes();
  const std::vector<Index>& order = plan.tables().node_order;
  const int threads = plan.threads();
  std::vector<std::array<Index, 2>> counts(static_cast<std::size_t>(std::max(threads, 1)), {0, 0});
  parallel_region(threads, [&](int tid, int nthreads) {
    NodeScratch<Scalar> scratch(D, w);
    Index evals = 0;
    Index applied = 0;
    const auto [first, last] = block_range(M, tid, nthreads);
    for (Index p = first; p < last; ++p) {
      const Index j = order.empty() ? p : order[p];
      const auto [factors, full] = load_node(plan, strategy, j, strides, scratch, evals);
      f[j] = gather_node<Scalar, D>(grid, scratch, w, factors, full, applied);
    }
    counts[tid] = {evals, applied};
  });
  if (stats) {
    for (const auto& c : counts) {
      stats->phi_evaluations += c[0];
      stats->weight_applications += c[1];
    }
  }
}

template <typename Scalar, int D>
void spread_all(const Plan<Scalar>& plan, const Eigen::Ref<const ComplexVector<Scalar>>& f, Complex<Scalar>* grid,
                TransformStats* stats) {
  const Strategy strategy = strategy_of(plan);
  const auto strides = grid_strides(plan);
  const int w = plan.window_width();
  const Index M = plan.num_nodes();
  const Index n0 = plan.fft_length()[0];
  const int threads = plan.has_flag(NFFT_OMP_BLOCKWISE_ADJOINT) ? plan.threads() : 1;
  std::vector<std::array<Index, 2>> counts(static_cast<std::size_t>(std::max(threads, 1)), {0, 0});
  parallel_region(threads, [&](int tid, int nthreads) {
    NodeScratch<Scalar> scratch(D, w);
    Index evals = 0;
    Index applied = 0;
    const auto [row_lo, row_hi] = block_range(n0, tid, nthreads);
    if (row_lo < row_hi) {
      for (Index j = 0; j < M; ++j) {
        if (nthreads > 1 && !touches(wrap_index(plan.gather_origin(j, 0), n0), w, n0, row_lo, row_hi)) continue;
        const auto [factors, full] = load_node(plan, strategy, j, strides, scratch, evals);
        spread_node<Scalar, D>(grid, scratch, w, factors, full, f[j], row_lo, row_hi, applied);
      }
    }
    counts[tid] = {evals, applied};
  });
  if (stats) {
    for (const auto& c : counts) {
      stats->phi_evaluations += c[0];
      stats->weight_applications += c[1];
    }
  }
}

// exp(sign 2 pi i k x) for k = -N/2 .. N/2-1. k x is reduced modulo one with
// the rounding residual of the product carried along, so the angle stays
// accurate for large k.
void phase_table(double x, Index N, int sign, std::complex<double>* out) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (Index q = 0; q < N; ++q) {
    const double k = static_cast<double>(q - N / 2);
    const double p = k * x;
    const double residual = std::fma(k, x, -p);
    const double t = (p - std::nearbyint(p)) + residual;
    const double angle = sign * two_pi * t;
    out[q] = {std::cos(angle), std::sin(angle)};
  }
}

inline std::complex<double> mul(const std::complex<double>& a, const std::complex<double>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <typename Scalar>
void check_direct(const Plan<Scalar>& plan, Index len, Index expected, const char* what) {
  if (!plan.has_nodes()) throw Error(ErrorCode::kNotPrecomputed, "nodes are not set");
  if (len != expected)
    throw Error(ErrorCode::kLengthMismatch, std::string(what) + " has length " + std::to_string(len) +
                                                ", expected " + std::to_string(expected));
}

}  // namespace

template <typename Scalar>
void trafo(const Plan<Scalar>& plan, const VectorIn<Scalar>& fhat,
           VectorOut<Scalar> f, TransformStats* stats) {
  check_ready(plan, fhat.size(), f.size());
  const Scalar size = static_cast<Scalar>(plan.grid_size());
  ComplexVector<Scalar> grid = ComplexVector<Scalar>::Zero(plan.grid_size());
  for_each_coefficient(plan, plan.threads(), [&](Index lin, Index offset, Scalar ck) {
    grid[offset] = scale_down(fhat[lin], size * ck);
  });
  plan.fft().transform(std::span(grid.data(), static_cast<std::size_t>(grid.size())), Sign::kNegative,
                       plan.threads());
  switch (plan.dim()) {
    case 1: gather_all<Scalar, 1>(plan, grid.data(), f, stats); break;
    case 2: gather_all<Scalar, 2>(plan, grid.data(), f, stats); break;
    default: gather_all<Scalar, 3>(plan, grid.data(), f, stats); break;
  }
}

template <typename Scalar>
void adjoint(const Plan<Scalar>& plan, const VectorIn<Scalar>& f,
             VectorOut<Scalar> fhat, TransformStats* stats) {
  check_ready(plan, fhat.size(), f.size());
  ComplexVector<Scalar> grid = ComplexVector<Scalar>::Zero(plan.grid_size());
  switch (plan.dim()) {
    case 1: spread_all<Scalar, 1>(plan, f, grid.data(), stats); break;
    case 2: spread_all<Scalar, 2>(plan, f, grid.data(), stats); break;
    default: spread_all<Scalar, 3>(plan, f, grid.data(), stats); break;
  }
  plan.fft().transform(std::span(grid.data(), static_cast<std::size_t>(grid.size())), Sign::kPositive,
                       plan.threads());
  const Scalar size = static_cast<Scalar>(plan.grid_size());
  for_each_coefficient(plan, plan.threads(), [&](Index lin, Index offset, Scalar ck) {
    fhat[lin] = scale_down(grid[offset], size * ck);
  });
}

template <typename Scalar>
ComplexVector<Scalar> ndft(const Plan<Scalar>& plan, const VectorIn<Scalar>& fhat) {
  check_direct(plan, fhat.size(), plan.num_coefficients(), "coefficient vector");
  const int d = plan.dim();
  const MultiIndex& N = plan.bandlimit();
  const Index M = plan.num_nodes();
  std::vector<std::complex<double>> coeff(static_cast<std::size_t>(fhat.size()));
  for (Index i = 0; i < fhat.size(); ++i) coeff[i] = {fhat[i].real(), fhat[i].imag()};
  ComplexVector<Scalar> f(M);
  parallel_region(plan.threads(), [&](int tid, int nthreads) {
    std::array<std::vector<std::complex<double>>, kMaxDim> ph;
    for (int i = 0; i < d; ++i) ph[i].resize(static_cast<std::size_t>(N[i]));
    const auto [first, last] = block_range(M, tid, nthreads);
    for (Index j = first; j < last; ++j) {
      for (int i = 0; i < d; ++i) phase_table(static_cast<double>(plan.nodes()(j, i)), N[i], -1, ph[i].data());
      std::complex<double> acc = 0;
      if (d == 1) {
        for (Index a = 0; a < N[0]; ++a) acc += mul(ph[0][a], coeff[a]);
      } else if (d == 2) {
        for (Index a = 0; a < N[0]; ++a) {
          std::complex<double> inner = 0;
          const std::complex<double>* row = coeff.data() + a * N[1];
          for (Index b = 0; b < N[1]; ++b) inner += mul(ph[1][b], row[b]);
          acc += mul(ph[0][a], inner);
        }
      } else {
        for (Index a = 0; a < N[0]; ++a) {
          std::complex<double> mid = 0;
          for (Index b = 0; b < N[1]; ++b) {
            std::complex<double> inner = 0;
            const std::complex<double>* row = coeff.data() + (a * N[1] + b) * N[2];
            for (Index c = 0; c < N[2]; ++c) inner += mul(ph[2][c], row[c]);
            mid += mul(ph[1][b], inner);
          }
          acc += mul(ph[0][a], mid);
        }
      }
      f[j] = {static_cast<Scalar>(acc.real()), static_cast<Scalar>(acc.imag())};
    }
  });
  return f;
}

template <typename Scalar>
ComplexVector<Scalar> ndft_adjoint(const Plan<Scalar>& plan, const VectorIn<Scalar>& f) {
  check_direct(plan, f.size(), plan.num_nodes(), "sample vector");
  const int d = plan.dim();
  const MultiIndex& N = plan.bandlimit();
  const Index M = plan.num_nodes();
  const Index rest = plan.num_coefficients() / N[0];
  std::vector<std::complex<double>> acc(static_cast<std::size_t>(plan.num_coefficients()), 0.0);
  parallel_region(plan.threads(), [&](int tid, int nthreads) {
    std::array<std::vector<std::complex<double>>, kMaxDim> ph;
    for (int i = 0; i < d; ++i) ph[i].resize(static_cast<std::size_t>(N[i]));
    // each worker owns a block of k_0 values
    const auto [first, last] = block_range(N[0], tid, nthreads);
    if (first == last) return;
    for (Index j = 0; j < M; ++j) {
      for (int i = 0; i < d; ++i) phase_table(static_cast<double>(plan.nodes()(j, i)), N[i], +1, ph[i].data());
      const std::complex<double> v(f[j].real(), f[j].imag());
      for (Index a = first; a < last; ++a) {
        const std::complex<double> va = mul(v, ph[0][a]);
        std::complex<double>* out = acc.data() + a * rest;
        if (d == 1) {
          out[0] += va;
        } else if (d == 2) {
          for (Index b = 0; b < N[1]; ++b) out[b] += mul(va, ph[1][b]);
        } else {
          for (Index b = 0; b < N[1]; ++b) {
            const std::complex<double> vab = mul(va, ph[1][b]);
            std::complex<double>* row = out + b * N[2];
            for (Index c = 0; c < N[2]; ++c) row[c] += mul(vab, ph[2][c]);
          }
        }
      }
    }
  });
  ComplexVector<Scalar> fhat(plan.num_coefficients());
  for (Index i = 0; i < fhat.size(); ++i)
    fhat[i] = {static_cast<Scalar>(acc[i].real()), static_cast<Scalar>(acc[i].imag())};
  return fhat;
}

#define NFFTK_INSTANTIATE(S)                                                                                    \
  template void trafo<S>(const Plan<S>&, const VectorIn<S>&, VectorOut<S>, \
                         TransformStats*);                                                                     \
  template void adjoint<S>(const Plan<S>&, const VectorIn<S>&,                         \
                           VectorOut<S>, TransformStats*);                                     \
  template ComplexVector<S> ndft<S>(const Plan<S>&, const VectorIn<S>&);               \
  template ComplexVector<S> ndft_adjoint<S>(const Plan<S>&, const VectorIn<S>&);

NFFTK_INSTANTIATE(float)
NFFTK_INSTANTIATE(double)

#undef NFFTK_INSTANTIATE

}  // namespace nfftk
