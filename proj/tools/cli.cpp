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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench.hpp"
#include "nfftk/parallel.hpp"
#include "nfftk/plan.hpp"
#include "nfftk/transform.hpp"

namespace nfftk::cli {
namespace {

struct Options {
  std::optional<int> dim;
  std::string bandlimit;
  std::optional<Index> nodes_count;
  std::string fft_length;
  std::optional<int> cutoff;
  std::string window = "kaiserbessel";
  std::uint64_t seed = 42;
  double tol = 1e-13;
  std::optional<int> threads;
  std::string out;
  std::string format = "csv";
  int samples = kTimingSamples;

  std::string sweep = "n";
  std::vector<Index> grid;

  std::string nodes_file;
  std::string fhat_file;
  std::string f_file;
  bool adjoint = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One value is broadcast to every dimension.
MultiIndex sizes_for(const std::string& text, int d, const char* flag) {
  MultiIndex v = parse_multi_index(text);
  if (v.size() == 1 && d > 1) {
    const Index s = v[0];
    v.resize(d);
    v.setConstant(s);
  }
  if (v.size() != d) throw UsageError(std::string(flag) + " has " + std::to_string(v.size()) + " entries for dimension " + std::to_string(d));
  return v;
}

int resolve_dim(const Options& o) {
  int d = o.dim.value_or(0);
  if (d == 0) d = o.bandlimit.empty() ? 1 : static_cast<int>(parse_multi_index(o.bandlimit).size());
  if (d < 1 || d > kMaxDim) throw UsageError("--dim must be 1, 2 or 3");
  return d;
}

MultiIndex resolve_bandlimit(const Options& o, int d) {
  return o.bandlimit.empty() ? bench::standard_bandlimit(d) : sizes_for(o.bandlimit, d, "--bandlimit");
}

MultiIndex resolve_fft_length(const Options& o, const MultiIndex& N) {
  return o.fft_length.empty() ? default_config(N, 1).n : sizes_for(o.fft_length, static_cast<int>(N.size()), "--fft-length");
}

int resolve_cutoff(const Options& o, const MultiIndex& N) { return o.cutoff.value_or(default_config(N, 1).m); }

int resolve_threads(const Options& o) {
  if (o.threads) {
    if (*o.threads < 1) throw UsageError("--threads must be positive");
    return *o.threads;
  }
  if (const char* env = std::getenv("THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long t = std::strtol(env, &end, 10);
    if (*end != '\0' || t < 1) throw UsageError(std::string("THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(t);
  }
  return hardware_threads();
}

void check_format(const Options& o) {
  if (o.format != "csv") throw UsageError("unsupported --format '" + o.format + "'");
}

// Writes to --out when given, else to the console stream.
template <typename Fn>
void emit(const Options& o, std::ostream& console, Fn&& fn) {
  if (o.out.empty()) {
    fn(console);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Error(ErrorCode::kParse, "cannot write '" + o.out + "'");
  fn(file);
  if (!file) throw Error(ErrorCode::kParse, "failed writing '" + o.out + "'");
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  check_format(o);
  const int d = resolve_dim(o);
  const MultiIndex N = resolve_bandlimit(o, d);
  const MultiIndex n = resolve_fft_length(o, N);
  const int threads = resolve_threads(o);
  const Index M = o.nodes_count.value_or(2 * product(N));
  bench::Experiment exp(N, M, o.seed, threads);
  const bench::BenchRow row = exp.run(n, resolve_cutoff(o, N), parse_window_kind(o.window), threads, o.samples);
  emit(o, out, [&](std::ostream& s) { s << bench::csv_header() << '\n' << bench::csv_row(row) << '\n'; });
  if (!(row.e2 < o.tol)) {
    err << "E2 = " << row.e2 << " is not below tolerance " << o.tol << '\n';
    return kExitTolerance;
  }
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  check_format(o);
  const int d = resolve_dim(o);
  const MultiIndex N = resolve_bandlimit(o, d);
  const int threads = resolve_threads(o);
  const Index M = o.nodes_count.value_or(2 * product(N));
  const WindowKind window = parse_window_kind(o.window);
  bench::Experiment exp(N, M, o.seed, threads);

  std::vector<bench::BenchRow> rows;
  if (o.sweep == "n") {
    // the grid gives n_i for every dimension; the default grid is per dimension
    std::vector<MultiIndex> lengths;
    if (!o.grid.empty()) {
      for (Index v : o.grid) lengths.push_back(MultiIndex::Constant(d, v));
    } else {
      std::vector<std::vector<Index>> per_dim;
      for (int i = 0; i < d; ++i) per_dim.push_back(bench::n_sweep_grid(N[i]));
      for (std::size_t p = 0; p < per_dim[0].size(); ++p) {
        MultiIndex n(d);
        for (int i = 0; i < d; ++i) n[i] = per_dim[i][p];
        lengths.push_back(n);
      }
    }
    for (const auto& n : lengths) rows.push_back(exp.run(n, resolve_cutoff(o, N), window, threads, o.samples));
  } else if (o.sweep == "m") {
    const MultiIndex n = resolve_fft_length(o, N);
    std::vector<Index> grid = o.grid;
    if (grid.empty())
      for (Index m = 2; m <= 10; ++m) grid.push_back(m);
    for (Index m : grid) rows.push_back(exp.run(n, static_cast<int>(m), window, threads, o.samples));
  } else if (o.sweep == "threads") {
    const MultiIndex n = resolve_fft_length(o, N);
    std::vector<Index> grid = o.grid;
    if (grid.empty())
      for (Index t = 1; t <= hardware_threads(); ++t) grid.push_back(t);
    for (Index t : grid) {
      if (t < 1) throw UsageError("thread counts must be positive");
      rows.push_back(exp.run(n, resolve_cutoff(o, N), window, static_cast<int>(t), o.samples));
    }
  } else {
    throw UsageError("--sweep must be n, m or threads");
  }
  emit(o, out, [&](std::ostream& s) {
    s << bench::csv_header() << '\n';
    for (const auto& r : rows) s << bench::csv_row(r) << '\n';
  });
  return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
  if (o.nodes_file.empty()) throw UsageError("transform needs --nodes");
  const std::string& input = o.adjoint ? o.f_file : o.fhat_file;
  if (input.empty()) throw UsageError(o.adjoint ? "--adjoint needs --f" : "transform needs --fhat");
  const int d = resolve_dim(o);
  const MultiIndex N = resolve_bandlimit(o, d);
  const NodeMatrix<double> x = bench::read_nodes(o.nodes_file, d);
  if (o.nodes_count && *o.nodes_count != x.rows())
    throw UsageError("--nodes-count " + std::to_string(*o.nodes_count) + " but " + o.nodes_file + " holds " +
                     std::to_string(x.rows()) + " nodes");
  const ComplexVector<double> v = bench::read_complex(input);

  PlanConfig c = default_config(N, x.rows());
  c.n = resolve_fft_length(o, N);
  c.m = resolve_cutoff(o, N);
  c.window = parse_window_kind(o.window);
  Plan<double> plan(c);
  plan.set_threads(resolve_threads(o));
  plan.set_nodes(x);
  plan.precompute();

  const Index expected = o.adjoint ? plan.num_nodes() : plan.num_coefficients();
  if (v.size() != expected)
    throw UsageError(input + " holds " + std::to_string(v.size()) + " values, expected " + std::to_string(expected));
  const ComplexVector<double> result = o.adjoint ? adjoint(plan, v) : trafo(plan, v);
  emit(o, out, [&](std::ostream& s) { bench::write_complex(s, result); });
  return kExitOk;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--dim", o.dim, "Dimension d (1..3); defaults to the length of --bandlimit");
  app->add_option("--bandlimit", o.bandlimit, "N1[,N2[,N3]], even; one value applies to all dimensions");
  app->add_option("--nodes-count", o.nodes_count, "Number of nodes M (default 2|I_N|)");
  app->add_option("--fft-length", o.fft_length, "n1[,...], even and > N_i (default 2^(ceil(log2 N)+1), at least 32)");
  app->add_option("--cutoff", o.cutoff, "Window cutoff m (default 8)");
  app->add_option("--window", o.window, "kaiserbessel | gaussian");
  app->add_option("--seed", o.seed, "Seed of the node generator");
  app->add_option("--tol", o.tol, "E2 tolerance of verify");
  app->add_option("--threads", o.threads, "Worker threads (overrides THREADS)");
  app->add_option("--out", o.out, "Output file (default stdout)");
  app->add_option("--format", o.format, "Output format (csv)");
  app->add_option("--samples", o.samples, "Timed repetitions per measurement, 0 to skip timing");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"nfftk: nonequispaced fast Fourier transform tool", "nfftk"};
  app.require_subcommand(1);
  CLI::App* verify = app.add_subcommand("verify", "Compare one fast transform against the direct sum");
  CLI::App* bench = app.add_subcommand("bench", "Sweep n, m or the thread count and emit CSV");
  CLI::App* transform = app.add_subcommand("transform", "Apply trafo or adjoint to vectors read from files");
  add_common(verify, o);
  add_common(bench, o);
  add_common(transform, o);
  bench->add_option("--sweep", o.sweep, "n | m | threads");
  bench->add_option("--grid", o.grid, "Sweep values, comma separated")->delimiter(',');
  transform->add_option("--nodes", o.nodes_file, "Node file: M lines of d decimals");
  transform->add_option("--fhat", o.fhat_file, "Coefficient file: |I_N| lines 're im'");
  transform->add_option("--f", o.f_file, "Sample file for --adjoint: M lines 're im'");
  transform->add_flag("--adjoint", o.adjoint, "Run the adjoint transform");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (bench->parsed()) return cmd_bench(o, out);
    return cmd_transform(o, out);
  } catch (const UsageError& e) {
    err << "nfftk: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "nfftk: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace nfftk::cli
