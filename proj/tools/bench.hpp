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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nfftk/common.hpp"
#include "nfftk/metrics.hpp"
#include "nfftk/window.hpp"

namespace nfftk::bench {

/// M nodes, uniform on [-1/2, 1/2)^d. Coordinates are drawn node-major from
/// std::mt19937_64(seed) as (u >> 11) * 2^-53 - 1/2, so the set is identical on
/// every conforming platform.
NodeMatrix<double> gen_nodes(int d, Index M, std::uint64_t seed);

/// Coefficients 1 / (1 + ||k||_2) over I_N in linear order.
ComplexVector<double> gen_fhat_test(const MultiIndex& N);

/// The bandlimits of the three standard test polynomials: 512, (128,128), (32,32,32).
MultiIndex standard_bandlimit(int d);

/// One configuration of a benchmark run.
struct BenchRow {
  int dim = 0;
  MultiIndex N;
  MultiIndex n;
  int m = 0;
  int threads = 1;
  double e2 = 0;
  double einf = 0;
  double precompute_ms = 0;
  double trafo_ms = 0;
};

/// dim,N,n,m,threads,e2,einf,precompute_ms,trafo_ms. Multi-dimensional sizes
/// are joined with 'x' (128x128).
std::string csv_header();
std::string csv_row(const BenchRow& row);

/// Fixed polynomial, node set and NDFT reference shared by every run of a sweep.
class Experiment {
 public:
  Experiment(const MultiIndex& N, Index M, std::uint64_t seed, int oracle_threads);

  const MultiIndex& bandlimit() const { return N_; }
  const NodeMatrix<double>& nodes() const { return nodes_; }
  const ComplexVector<double>& fhat() const { return fhat_; }
  /// Exact values f(x_j), computed on first use.
  const ComplexVector<double>& reference();

  /// Builds a plan for (n, m), times precompute and trafo over `samples` runs
  /// (0 skips timing) and measures E2 / Einf against the reference.
  BenchRow run(const MultiIndex& n, int m, WindowKind window, int threads, int samples);

 private:
  MultiIndex N_;
  NodeMatrix<double> nodes_;
  ComplexVector<double> fhat_;
  std::optional<ComplexVector<double>> reference_;
  int oracle_threads_;
};

/// 16 even FFT lengths: linspace(N, 4N, 16) rounded to the nearest even value,
/// the first bumped to N + 2.
std::vector<Index> n_sweep_grid(Index N);

/// Plain-text vectors. Nodes: one line of d decimals per node. Complex vectors:
/// one "re im" pair per line. Blank lines and lines starting with '#' are skipped.
/// Errors name the file and line.
NodeMatrix<double> read_nodes(const std::string& path, int d);
ComplexVector<double> read_complex(const std::string& path);
void write_complex(std::ostream& out, const ComplexVector<double>& v);
void write_complex(const std::string& path, const ComplexVector<double>& v);

}  // namespace nfftk::bench
