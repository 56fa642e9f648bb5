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

#include "bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "nfftk/indexing.hpp"
#include "nfftk/plan.hpp"
#include "nfftk/transform.hpp"

namespace nfftk::bench {

NodeMatrix<double> gen_nodes(int d, Index M, std::uint64_t seed) {
  if (M < 1 || d < 1 || d > kMaxDim) throw Error(ErrorCode::kInvalidArgument, "gen_nodes needs M >= 1 and d in 1..3");
  std::mt19937_64 gen(seed);
  NodeMatrix<double> x(M, d);
  for (Index j = 0; j < M; ++j)
    for (int i = 0; i < d; ++i) x(j, i) = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  return x;
}

ComplexVector<double> gen_fhat_test(const MultiIndex& N) {
  const IndexMatrix k = index_set(N);
  ComplexVector<double> fhat(k.rows());
  for (Index i = 0; i < k.rows(); ++i) {
    const double norm = k.row(i).cast<double>().norm();
    fhat[i] = 1.0 / (1.0 + norm);
  }
  return fhat;
}

MultiIndex standard_bandlimit(int d) {
  MultiIndex N(d);
  const Index v = d == 1 ? 512 : d == 2 ? 128 : 32;
  N.setConstant(v);
  return N;
}

std::string csv_header() { return "dim,N,n,m,threads,e2,einf,precompute_ms,trafo_ms"; }

std::string csv_row(const BenchRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%s,%s,%d,%d,%.17g,%.17g,%.6f,%.6f", r.dim, format_multi_index(r.N, 'x').c_str(),
                format_multi_index(r.n, 'x').c_str(), r.m, r.threads, r.e2, r.einf, r.precompute_ms, r.trafo_ms);
  return buf;
}

Experiment::Experiment(const MultiIndex& N, Index M, std::uint64_t seed, int oracle_threads)
    : N_(N),
      nodes_(gen_nodes(static_cast<int>(N.size()), M, seed)),
      fhat_(gen_fhat_test(N)),
      oracle_threads_(oracle_threads) {}

const ComplexVector<double>& Experiment::reference() {
  if (!reference_) {
    // ndft reads only N and the nodes
    PlanConfig c = default_config(N_, nodes_.rows());
    c.m = 1;
    c.f1 = kMallocFlags;
    Plan<double> plan(c);
    plan.set_threads(oracle_threads_);
    plan.set_nodes(nodes_);
    reference_ = ndft(plan, fhat_);
  }
  return *reference_;
}

BenchRow Experiment::run(const MultiIndex& n, int m, WindowKind window, int threads, int samples) {
  PlanConfig c;
  c.N = N_;
  c.M = nodes_.rows();
  c.n = n;
  c.m = m;
  c.f1 = default_nfft_flags(static_cast<int>(N_.size()));
  c.window = window;
  Plan<double> plan(c);
  plan.set_threads(threads);
  plan.set_nodes(nodes_);

  BenchRow row;
  row.dim = static_cast<int>(N_.size());
  row.N = N_;
  row.n = n;
  row.m = m;
  row.threads = threads;
  ComplexVector<double> f(c.M);
  if (samples > 0) {
    row.precompute_ms = time_mean([&] { plan.precompute(); }, samples).mean_ms;
    row.trafo_ms = time_mean([&] { trafo(plan, fhat_, f); }, samples).mean_ms;
  } else {
    plan.precompute();
    trafo(plan, fhat_, f);
  }
  const ErrorReport err = error_report<double>(reference(), f, fhat_);
  row.e2 = err.e2;
  row.einf = err.einf;
  return row;
}

std::vector<Index> n_sweep_grid(Index N) {
  std::vector<Index> grid;
  for (int i = 0; i < 16; ++i) {
    const double v = static_cast<double>(N) + static_cast<double>(i) * 3.0 * static_cast<double>(N) / 15.0;
    Index even = 2 * static_cast<Index>(std::llround(v / 2.0));
    if (even <= N) even = N + 2;
    grid.push_back(even);
  }
  return grid;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  return in;
}

bool skip_line(const std::string& line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

[[noreturn]] void parse_failure(const std::string& path, Index line, const std::string& what) {
  throw Error(ErrorCode::kParse, path + ":" + std::to_string(line) + ": " + what);
}

// Reads exactly `count` doubles from one line.
std::vector<double> parse_fields(const std::string& line, std::size_t count, const std::string& path, Index lineno) {
  std::istringstream ss(line);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      parse_failure(path, lineno, "not a number: '" + tok + "'");
    }
    if (used != tok.size()) parse_failure(path, lineno, "not a number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.size() != count)
    parse_failure(path, lineno, "expected " + std::to_string(count) + " fields, found " + std::to_string(out.size()));
  return out;
}

}  // namespace

NodeMatrix<double> read_nodes(const std::string& path, int d) {
  std::ifstream in = open_input(path);
  std::vector<double> values;
  std::string line;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    const auto fields = parse_fields(line, static_cast<std::size_t>(d), path, lineno);
    values.insert(values.end(), fields.begin(), fields.end());
  }
  const Index M = static_cast<Index>(values.size()) / d;
  if (M == 0) throw Error(ErrorCode::kParse, path + ": no nodes");
  return Eigen::Map<NodeMatrix<double>>(values.data(), M, d);
}

ComplexVector<double> read_complex(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::complex<double>> values;
  std::string line;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    const auto fields = parse_fields(line, 2, path, lineno);
    values.emplace_back(fields[0], fields[1]);
  }
  return Eigen::Map<ComplexVector<double>>(values.data(), static_cast<Index>(values.size()));
}

void write_complex(std::ostream& out, const ComplexVector<double>& v) {
  char buf[64];
  for (Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v[i].real(), v[i].imag());
    out << buf;
  }
}

void write_complex(const std::string& path, const ComplexVector<double>& v) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  write_complex(out, v);
  if (!out) throw Error(ErrorCode::kParse, "failed writing '" + path + "'");
}

}  // namespace nfftk::bench
