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
#include <random>

#include <gtest/gtest.h>

#include "nfftk/indexing.hpp"
#include "nfftk/transform.hpp"
#include "oracles.hpp"

namespace nfftk {
namespace {

MultiIndex mi(std::initializer_list<Index> v) {
  MultiIndex out(static_cast<Index>(v.size()));
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(DefaultN, Examples) {
  EXPECT_TRUE((default_n(mi({512})) == mi({1024})).all());
  EXPECT_TRUE((default_n(mi({128, 128})) == mi({256, 256})).all());
  EXPECT_TRUE((default_n(mi({100})) == mi({256})).all());
  EXPECT_TRUE((default_n(mi({2, 6, 64})) == mi({4, 16, 128})).all());
}

TEST(DefaultFlags, ByDimension) {
  const std::uint32_t one = default_nfft_flags(1);
  EXPECT_TRUE(one & PRE_PHI_HUT);
  EXPECT_TRUE(one & PRE_PSI);
  EXPECT_FALSE(one & NFFT_SORT_NODES);
  EXPECT_FALSE(one & NFFT_OMP_BLOCKWISE_ADJOINT);
  for (int d : {2, 3}) {
    const std::uint32_t f = default_nfft_flags(d);
    EXPECT_TRUE(f & PRE_PHI_HUT);
    EXPECT_TRUE(f & PRE_PSI);
    EXPECT_TRUE(f & NFFT_SORT_NODES);
    EXPECT_TRUE(f & NFFT_OMP_BLOCKWISE_ADJOINT);
  }
  EXPECT_EQ(PRE_PHI_HUT, 1u << 0);
  EXPECT_EQ(PRE_LIN_PSI, 1u << 2);
  EXPECT_EQ(PRE_PSI, 1u << 4);
  EXPECT_EQ(PRE_FULL_PSI, 1u << 5);
  EXPECT_EQ(NFFT_SORT_NODES, 1u << 11);
  EXPECT_EQ(NFFT_OMP_BLOCKWISE_ADJOINT, 1u << 12);
}

TEST(PlanNew, Defaults) {
  const Plan<double> p = plan_new(mi({512}), 1024);
  EXPECT_EQ(p.fft_length()[0], 1024);
  EXPECT_EQ(p.cutoff(), 8);
  EXPECT_EQ(p.num_coefficients(), 512);
  EXPECT_EQ(p.grid_size(), 1024);
  EXPECT_EQ(p.window_width(), 17);
  EXPECT_EQ(p.fftw_flags(), kDefaultFftwFlags);

  const Plan<double> p2 = plan_new(mi({128, 128}), 2 * 128 * 128);
  EXPECT_TRUE(p2.has_flag(NFFT_OMP_BLOCKWISE_ADJOINT));
  EXPECT_TRUE((p2.fft_length() == mi({256, 256})).all());
  EXPECT_EQ(p2.dim(), 2);
}

TEST(PlanNew, Errors) {
  EXPECT_EQ(code_of([] { plan_new(mi({3}), 4); }), ErrorCode::kInvalidBandlimit);
  EXPECT_EQ(code_of([] { plan_new(mi({4}), 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { plan_new(mi({4}), -3); }), ErrorCode::kInvalidArgument);
}

TEST(PlanNewAdvanced, Examples) {
  EXPECT_NO_THROW(plan_new_advanced(mi({512}), 1024, mi({514}), 8));
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({512}), 1024, mi({512}), 8); }), ErrorCode::kOversampling);
  const Plan<double> p = plan_new_advanced(mi({32, 32, 32}), 100, mi({64, 64, 64}), 2);
  EXPECT_EQ(p.cutoff(), 2);
  EXPECT_EQ(p.nfft_flags(), default_nfft_flags(3));
}

TEST(PlanNewAdvanced, Errors) {
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({16}), 8); }), ErrorCode::kCutoff);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({16}), 0); }), ErrorCode::kCutoff);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({18}), 4, 1u << 20); }), ErrorCode::kInvalidFlag);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({18}), 4, PRE_PSI, 1u << 30); }), ErrorCode::kInvalidFlag);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({18}), 4, FG_PSI); }), ErrorCode::kInvalidFlag);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({18}), 4, PRE_FG_PSI); }), ErrorCode::kInvalidFlag);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8}), 4, mi({17}), 4); }), ErrorCode::kOversampling);
  EXPECT_EQ(code_of([] { plan_new_advanced(mi({8, 8}), 4, mi({16}), 4); }), ErrorCode::kInvalidArgument);
}

TEST(PlanNewAdvanced, MemoryAndFftwFlagsAreNoOps) {
  std::mt19937_64 gen(1);
  const NodeMatrix<double> x = testing::random_nodes(40, 2, gen);
  const ComplexVector<double> fhat = testing::random_vector(256, gen);
  const std::uint32_t base = PRE_PHI_HUT | PRE_PSI;
  Plan<double> a = plan_new_advanced(mi({16, 16}), 40, mi({32, 32}), 6, base);
  Plan<double> b = plan_new_advanced(mi({16, 16}), 40, mi({32, 32}), 6,
                                     base | MALLOC_X | MALLOC_F | MALLOC_F_HAT | FFTW_INIT | FFT_OUT_OF_PLACE,
                                     FFTW_MEASURE | FFTW_PATIENT | FFTW_UNALIGNED);
  for (Plan<double>* p : {&a, &b}) {
    p->set_threads(1);
    p->set_nodes(x);
    p->precompute();
  }
  EXPECT_EQ(trafo(a, fhat), trafo(b, fhat));
}

TEST(PlanNew, EqualsAdvancedWithDefaults) {
  std::mt19937_64 gen(2);
  const NodeMatrix<double> x = testing::random_nodes(64, 2, gen);
  const ComplexVector<double> fhat = testing::random_vector(16 * 16, gen);
  Plan<double> a = plan_new(mi({16, 16}), 64);
  Plan<double> b = plan_new_advanced(mi({16, 16}), 64, default_n(mi({16, 16})));
  EXPECT_EQ(a.nfft_flags(), b.nfft_flags());
  EXPECT_EQ(a.fftw_flags(), b.fftw_flags());
  EXPECT_EQ(a.cutoff(), b.cutoff());
  for (Plan<double>* p : {&a, &b}) {
    p->set_threads(1);
    p->set_nodes(x);
    p->precompute();
  }
  EXPECT_EQ(trafo(a, fhat), trafo(b, fhat));
  const ComplexVector<double> f = testing::random_vector(64, gen);
  EXPECT_EQ(adjoint(a, f), adjoint(b, f));
}

TEST(SetNodes, Validation) {
  Plan<double> p = plan_new(mi({4}), 1);
  NodeMatrix<double> x(1, 1);
  x << 0.0;
  EXPECT_NO_THROW(p.set_nodes(x));
  EXPECT_TRUE(p.has_nodes());

  x << 0.5;
  EXPECT_EQ(code_of([&] { p.set_nodes(x); }), ErrorCode::kNodeRange);
  x << -0.5;
  EXPECT_NO_THROW(p.set_nodes(x));
  x << std::nan("");
  EXPECT_EQ(code_of([&] { p.set_nodes(x); }), ErrorCode::kNodeRange);

  NodeMatrix<double> wrong(2, 1);
  wrong << 0.1, 0.2;
  EXPECT_EQ(code_of([&] { p.set_nodes(wrong); }), ErrorCode::kLengthMismatch);
}

TEST(SetNodes, SortOrderIsGridCellLexicographic) {
  MultiIndex N = mi({16, 16});
  PlanConfig c = default_config(N, 2 * 512);
  Plan<double> p(c);
  std::mt19937_64 gen(42);
  const NodeMatrix<double> x = testing::random_nodes(c.M, 2, gen);
  p.set_nodes(x);
  const std::vector<Index> order = p.tables().node_order;
  ASSERT_EQ(order.size(), static_cast<std::size_t>(c.M));

  std::vector<Index> expected(static_cast<std::size_t>(c.M));
  std::iota(expected.begin(), expected.end(), Index{0});
  auto cell = [&](Index j, int i) { return static_cast<Index>(std::floor(32.0 * x(j, i))); };
  std::stable_sort(expected.begin(), expected.end(), [&](Index a, Index b) {
    return std::make_pair(cell(a, 0), cell(a, 1)) < std::make_pair(cell(b, 0), cell(b, 1));
  });
  EXPECT_EQ(order, expected);

  Plan<double> again(c);
  again.set_nodes(x);
  EXPECT_EQ(again.tables().node_order, order);
  again.precompute();
  EXPECT_EQ(again.tables().node_order, order);
}

TEST(Precompute, RequiresNodes) {
  Plan<double> p = plan_new(mi({8}), 4);
  EXPECT_EQ(code_of([&] { p.precompute(); }), ErrorCode::kNotPrecomputed);
  EXPECT_FALSE(p.is_precomputed());
}

TEST(Precompute, PhiHutOnly) {
  Plan<double> p = plan_new_advanced(mi({8, 12}), 10, mi({16, 24}), 4, PRE_PHI_HUT);
  std::mt19937_64 gen(3);
  p.set_nodes(testing::random_nodes(10, 2, gen));
  p.precompute();
  const auto& t = p.tables();
  ASSERT_EQ(t.phi_hut.size(), 2u);
  EXPECT_EQ(t.phi_hut[0].size(), 9u);
  EXPECT_EQ(t.phi_hut[1].size(), 13u);
  EXPECT_TRUE(t.psi_tensor.empty());
  EXPECT_TRUE(t.psi_full.empty());
  EXPECT_TRUE(t.psi_lut.empty());
  EXPECT_TRUE(t.node_order.empty());
  for (Index k = -6; k <= 6; ++k) EXPECT_EQ(t.phi_hut[1][static_cast<std::size_t>(k + 6)], p.window().phi_hat(k, 1));
}

TEST(Precompute, ExactlyRequestedTables) {
  std::mt19937_64 gen(4);
  const NodeMatrix<double> x = testing::random_nodes(10, 1, gen);
  for (std::uint32_t f : {0u, PRE_PSI, PRE_FULL_PSI, PRE_LIN_PSI, NFFT_SORT_NODES}) {
    Plan<double> p = plan_new_advanced(mi({8}), 10, mi({16}), 3, f);
    p.set_nodes(x);
    p.precompute();
    const auto& t = p.tables();
    EXPECT_EQ(t.phi_hut.empty(), (f & PRE_PHI_HUT) == 0);
    EXPECT_EQ(t.psi_tensor.empty(), (f & PRE_PSI) == 0);
    EXPECT_EQ(t.psi_full.empty(), (f & PRE_FULL_PSI) == 0);
    EXPECT_EQ(t.psi_lut.empty(), (f & PRE_LIN_PSI) == 0);
    EXPECT_EQ(t.node_order.empty(), (f & NFFT_SORT_NODES) == 0);
  }
}

TEST(Precompute, FullProductsMatchTensorFactors) {
  std::mt19937_64 gen(5);
  for (int d = 1; d <= 3; ++d) {
    const Index M = 30;
    const int m = 3;
    const int w = 2 * m + 1;
    Plan<double> p = plan_new_advanced(MultiIndex::Constant(d, 8), M, MultiIndex::Constant(d, 16), m,
                                       PRE_PHI_HUT | PRE_PSI | PRE_FULL_PSI);
    p.set_nodes(testing::random_nodes(M, d, gen));
    p.precompute();
    const auto& t = p.tables();
    const Index stride = static_cast<Index>(std::pow(w, d));
    ASSERT_EQ(static_cast<Index>(t.psi_full.size()), M * stride);
    ASSERT_EQ(static_cast<Index>(t.psi_tensor.size()), M * d * w);
    for (Index j = 0; j < M; ++j) {
      const double* f = t.psi_tensor.data() + j * d * w;
      for (Index e = 0; e < stride; ++e) {
        double prod = 1;
        Index rem = e;
        for (int i = d - 1; i >= 0; --i) {
          prod *= f[i * w + rem % w];
          rem /= w;
        }
        const double full = t.psi_full[static_cast<std::size_t>(j * stride + e)];
        EXPECT_LE(std::abs(full - prod), 1e-15 * std::abs(prod)) << d << " " << j << " " << e;
      }
    }
  }
}

TEST(Precompute, TensorFactorsAreWindowValues) {
  std::mt19937_64 gen(6);
  Plan<double> p = plan_new_advanced(mi({16, 16}), 20, mi({32, 32}), 4, PRE_PSI);
  const NodeMatrix<double> x = testing::random_nodes(20, 2, gen);
  p.set_nodes(x);
  p.precompute();
  const int w = 9;
  for (Index j = 0; j < 20; ++j) {
    for (int i = 0; i < 2; ++i) {
      Eigen::VectorXd xj = x.row(j).transpose();
      const GatherRange r = gather_range(xj, mi({32, 32}), 4);
      EXPECT_EQ(p.gather_origin(j, i), r.lo[i]);
      for (int t = 0; t < w; ++t) {
        const Index l = r.lo[i] + t;
        const double expected = l <= r.hi[i] ? p.window().psi(x(j, i) - static_cast<double>(l) / 32.0, i) : 0.0;
        EXPECT_NEAR(p.tables().psi_tensor[static_cast<std::size_t>((j * 2 + i) * w + t)], expected,
                    1e-12 * p.window().phi(0.0, i));
      }
    }
  }
}

// Interpolated against exact factors, relative to the window peak phi(0).
TEST(Precompute, LinearLookupTableAccuracy) {
  const Index M = 4000;
  Plan<double> p = plan_new_advanced(mi({64}), M, mi({128}), 8, PRE_LIN_PSI);
  EXPECT_EQ(p.config().lin_psi_table_size, Index{1} << 14);
  std::mt19937_64 gen(7);
  p.set_nodes(testing::random_nodes(M, 1, gen));
  p.precompute();
  ASSERT_EQ(p.tables().psi_lut.size(), 1u);
  EXPECT_EQ(p.tables().psi_lut[0].size(), (std::size_t{1} << 14) + 1);
  const double peak = p.window().phi(0.0, 0);
  std::vector<double> exact(17), lin(17);
  double worst = 0;
  for (Index j = 0; j < M; ++j) {
    p.compute_factors(j, exact.data());
    p.compute_factors_lin(j, lin.data());
    for (int t = 0; t < 17; ++t) worst = std::max(worst, std::abs(exact[t] - lin[t]) / peak);
  }
  EXPECT_LE(worst, 1e-7);
  EXPECT_GT(worst, 0);
}

TEST(Precompute, RerunAndInvalidation) {
  std::mt19937_64 gen(8);
  Plan<double> p = plan_new(mi({8, 8}), 12);
  p.set_nodes(testing::random_nodes(12, 2, gen));
  p.precompute();
  EXPECT_TRUE(p.is_precomputed());
  const auto first = p.tables().psi_tensor;
  p.precompute();
  EXPECT_EQ(p.tables().psi_tensor, first);
  p.set_nodes(testing::random_nodes(12, 2, gen));
  EXPECT_FALSE(p.is_precomputed());
  EXPECT_TRUE(p.tables().psi_tensor.empty());
  EXPECT_FALSE(p.tables().node_order.empty());
}

TEST(Precompute, ThreadCountDoesNotChangeTables) {
  std::mt19937_64 gen(9);
  const NodeMatrix<double> x = testing::random_nodes(300, 3, gen);
  Plan<double> a = plan_new_advanced(mi({8, 8, 8}), 300, mi({16, 16, 16}), 4, PRE_PSI | PRE_FULL_PSI);
  Plan<double> b = plan_new_advanced(mi({8, 8, 8}), 300, mi({16, 16, 16}), 4, PRE_PSI | PRE_FULL_PSI);
  a.set_threads(1);
  b.set_threads(3);
  a.set_nodes(x);
  b.set_nodes(x);
  a.precompute();
  b.precompute();
  EXPECT_EQ(a.tables().psi_tensor, b.tables().psi_tensor);
  EXPECT_EQ(a.tables().psi_full, b.tables().psi_full);
}

TEST(Plan, FloatInstantiation) {
  Plan<float> p = plan_new<float>(mi({16}), 8);
  NodeMatrix<float> x(8, 1);
  for (int j = 0; j < 8; ++j) x(j, 0) = -0.5f + 0.125f * static_cast<float>(j);
  p.set_nodes(x);
  p.precompute();
  ComplexVector<float> fhat = ComplexVector<float>::Zero(16);
  fhat[8] = 1;
  const ComplexVector<float> f = trafo(p, fhat);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(f[j] - std::complex<float>(1, 0)), 0, 1e-5);
}

}  // namespace
}  // namespace nfftk
