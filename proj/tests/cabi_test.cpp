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

#include "nfftk/nfftk.h"

#include <dlfcn.h>

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nfftk/plan.hpp"
#include "nfftk/transform.hpp"
#include "oracles.hpp"

namespace nfftk {
namespace {

std::string last_message(nfftk_handle h) {
  const char* msg = nullptr;
  nfftk_last_error(h, &msg);
  return msg ? msg : "";
}

TEST(Cabi, Version) { EXPECT_EQ(nfftk_abi_version(), 10000); }

TEST(Cabi, ZeroModeExample) {
  const int32_t N[] = {4};
  const nfftk_handle h = nfftk_create(N, 1, 1);
  ASSERT_GT(h, 0);
  const double x[] = {0.0};
  ASSERT_EQ(nfftk_set_x(h, x, 1), NFFTK_OK);
  // k = -2, -1, 0, 1 with fhat_0 = 1
  const double fhat[] = {0, 0, 0, 0, 1, 0, 0, 0};
  ASSERT_EQ(nfftk_set_fhat(h, fhat, 8), NFFTK_OK);
  ASSERT_EQ(nfftk_trafo(h), NFFTK_OK);
  double* f = nullptr;
  int64_t len = 0;
  ASSERT_EQ(nfftk_get_f(h, &f, &len), NFFTK_OK);
  ASSERT_EQ(len, 2);
  EXPECT_NEAR(f[0], 1.0, 1e-13);
  EXPECT_NEAR(f[1], 0.0, 1e-13);
  EXPECT_EQ(nfftk_last_error(h, nullptr), NFFTK_OK);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
}

TEST(Cabi, Info) {
  const int32_t N[] = {16, 8};
  const int32_t n[] = {40, 20};
  const nfftk_handle h = nfftk_create_advanced(N, 2, 33, n, 5, NFFTK_PRE_PHI_HUT | NFFTK_PRE_FULL_PSI,
                                               NFFTK_FFTW_ESTIMATE);
  ASSERT_GT(h, 0);
  int32_t d = 0, M = 0, m = 0, NN[3] = {0, 0, 0}, nn[3] = {0, 0, 0};
  uint32_t f1 = 0, f2 = 0;
  ASSERT_EQ(nfftk_get_info(h, &d, &M, NN, nn, &m, &f1, &f2), NFFTK_OK);
  EXPECT_EQ(d, 2);
  EXPECT_EQ(M, 33);
  EXPECT_EQ(NN[0], 16);
  EXPECT_EQ(NN[1], 8);
  EXPECT_EQ(nn[0], 40);
  EXPECT_EQ(nn[1], 20);
  EXPECT_EQ(m, 5);
  EXPECT_EQ(f1, NFFTK_PRE_PHI_HUT | NFFTK_PRE_FULL_PSI);
  EXPECT_EQ(f2, NFFTK_FFTW_ESTIMATE);
  EXPECT_EQ(nfftk_get_info(h, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr), NFFTK_OK);
  int64_t len = 0;
  double* buf = nullptr;
  EXPECT_EQ(nfftk_get_fhat(h, &buf, &len), NFFTK_OK);
  EXPECT_EQ(len, 2 * 128);
  EXPECT_EQ(nfftk_get_x(h, &buf, &len), NFFTK_OK);
  EXPECT_EQ(len, 66);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
}

TEST(Cabi, ShapeErrorsLeaveStateUnchanged) {
  const int32_t N[] = {8};
  const nfftk_handle h = nfftk_create(N, 1, 3);
  ASSERT_GT(h, 0);
  const double x[] = {-0.25, 0.0, 0.25};
  ASSERT_EQ(nfftk_set_x(h, x, 3), NFFTK_OK);
  const double bad[] = {0.1, 0.2};
  EXPECT_EQ(nfftk_set_x(h, bad, 2), NFFTK_E_SHAPE);
  EXPECT_EQ(nfftk_last_error(h, nullptr), NFFTK_E_SHAPE);
  EXPECT_NE(last_message(h).find("M*d"), std::string::npos);
  EXPECT_EQ(nfftk_set_x(h, nullptr, 3), NFFTK_E_SHAPE);
  double* view = nullptr;
  int64_t len = 0;
  ASSERT_EQ(nfftk_get_x(h, &view, &len), NFFTK_OK);
  ASSERT_EQ(len, 3);
  EXPECT_EQ(view[0], -0.25);
  EXPECT_EQ(view[2], 0.25);
  // still precomputed for the old nodes
  EXPECT_EQ(nfftk_trafo(h), NFFTK_OK);

  std::vector<double> fhat(15);
  EXPECT_EQ(nfftk_set_fhat(h, fhat.data(), 15), NFFTK_E_SHAPE);
  EXPECT_EQ(nfftk_set_f(h, fhat.data(), 5), NFFTK_E_SHAPE);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
}

TEST(Cabi, DomainErrors) {
  const int32_t odd[] = {5};
  EXPECT_EQ(nfftk_create(odd, 1, 4), NFFTK_E_DOMAIN);
  EXPECT_EQ(nfftk_last_error(0, nullptr), NFFTK_E_DOMAIN);
  EXPECT_FALSE(last_message(0).empty());

  const int32_t N[] = {8};
  const int32_t n[] = {8};
  EXPECT_EQ(nfftk_create_advanced(N, 1, 4, n, 2, NFFTK_PRE_PSI, 0), NFFTK_E_DOMAIN);
  const int32_t n16[] = {16};
  EXPECT_EQ(nfftk_create_advanced(N, 1, 4, n16, 2, 1u << 25, 0), NFFTK_E_DOMAIN);
  EXPECT_EQ(nfftk_create(N, 1, 0), NFFTK_E_DOMAIN);
  EXPECT_EQ(nfftk_create(N, 4, 3), NFFTK_E_DOMAIN);
  EXPECT_EQ(nfftk_create(nullptr, 1, 3), NFFTK_E_DOMAIN);

  const nfftk_handle h = nfftk_create(N, 1, 1);
  ASSERT_GT(h, 0);
  EXPECT_EQ(nfftk_last_error(0, nullptr), NFFTK_OK);
  // transform before nodes are set
  EXPECT_EQ(nfftk_trafo(h), NFFTK_E_DOMAIN);
  const double outside[] = {0.5};
  EXPECT_EQ(nfftk_set_x(h, outside, 1), NFFTK_E_DOMAIN);
  EXPECT_NE(last_message(h).find("outside"), std::string::npos);
  EXPECT_EQ(nfftk_set_threads(h, 0), NFFTK_E_DOMAIN);
  EXPECT_EQ(nfftk_set_threads(h, 2), NFFTK_OK);
  EXPECT_EQ(nfftk_last_error(h, nullptr), NFFTK_OK);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
}

TEST(Cabi, InvalidHandles) {
  const int32_t N[] = {4};
  const nfftk_handle h = nfftk_create(N, 1, 1);
  ASSERT_GT(h, 0);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_E_INVALID_HANDLE);
  double* p = nullptr;
  int64_t len = 0;
  const double x[] = {0.0};
  for (nfftk_handle bad : {h, nfftk_handle{0}, nfftk_handle{-5}, nfftk_handle{1} << 40}) {
    EXPECT_EQ(nfftk_set_x(bad, x, 1), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_set_fhat(bad, x, 1), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_set_f(bad, x, 1), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_trafo(bad), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_adjoint(bad), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_get_f(bad, &p, &len), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_get_fhat(bad, &p, &len), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_get_x(bad, &p, &len), NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_get_info(bad, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr),
              NFFTK_E_INVALID_HANDLE);
    EXPECT_EQ(nfftk_set_threads(bad, 1), NFFTK_E_INVALID_HANDLE);
    if (bad != 0) {
      EXPECT_EQ(nfftk_last_error(bad, nullptr), NFFTK_E_INVALID_HANDLE);
    }
  }
  // handles are never reused
  const nfftk_handle next = nfftk_create(N, 1, 1);
  EXPECT_GT(next, h);
  EXPECT_EQ(nfftk_destroy(next), NFFTK_OK);
}

TEST(Cabi, ZeroCopyViews) {
  const int32_t N[] = {8};
  const nfftk_handle h = nfftk_create(N, 1, 2);
  ASSERT_GT(h, 0);
  const double x[] = {0.0, 0.25};
  ASSERT_EQ(nfftk_set_x(h, x, 2), NFFTK_OK);
  double* f = nullptr;
  double* fhat = nullptr;
  int64_t len = 0;
  ASSERT_EQ(nfftk_get_f(h, &f, &len), NFFTK_OK);
  ASSERT_EQ(nfftk_get_fhat(h, &fhat, &len), NFFTK_OK);
  // write the samples in place, then run the adjoint on them
  f[0] = 1.0;
  f[1] = 0.0;
  f[2] = 0.0;
  f[3] = 0.0;
  ASSERT_EQ(nfftk_adjoint(h), NFFTK_OK);
  for (int k = 0; k < 8; ++k) {
    EXPECT_NEAR(fhat[2 * k], 1.0, 1e-13);
    EXPECT_NEAR(fhat[2 * k + 1], 0.0, 1e-13);
  }
  double* again = nullptr;
  ASSERT_EQ(nfftk_get_fhat(h, &again, &len), NFFTK_OK);
  EXPECT_EQ(again, fhat);
  EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
}

TEST(Cabi, BitwiseParityWithNativeApi) {
  std::mt19937_64 gen(5);
  for (int d = 1; d <= 3; ++d) {
    const MultiIndex Nm = MultiIndex::Constant(d, d == 3 ? 8 : 16);
    const int32_t N[] = {static_cast<int32_t>(Nm[0]), static_cast<int32_t>(Nm[0]), static_cast<int32_t>(Nm[0])};
    const Index M = 77;
    const NodeMatrix<double> x = testing::random_nodes(M, d, gen);
    const ComplexVector<double> fhat = testing::random_vector(product(Nm), gen);
    const ComplexVector<double> f = testing::random_vector(M, gen);

    Plan<double> plan = plan_new(Nm, M);
    plan.set_threads(2);
    plan.set_nodes(x);
    plan.precompute();
    const ComplexVector<double> native_f = trafo(plan, fhat);
    const ComplexVector<double> native_h = adjoint(plan, f);

    const nfftk_handle h = nfftk_create(N, d, static_cast<int32_t>(M));
    ASSERT_GT(h, 0);
    ASSERT_EQ(nfftk_set_threads(h, 2), NFFTK_OK);
    ASSERT_EQ(nfftk_set_x(h, x.data(), M * d), NFFTK_OK);
    ASSERT_EQ(nfftk_set_fhat(h, reinterpret_cast<const double*>(fhat.data()), 2 * fhat.size()), NFFTK_OK);
    ASSERT_EQ(nfftk_trafo(h), NFFTK_OK);
    double* out = nullptr;
    int64_t len = 0;
    ASSERT_EQ(nfftk_get_f(h, &out, &len), NFFTK_OK);
    ASSERT_EQ(len, 2 * M);
    EXPECT_EQ(std::memcmp(out, native_f.data(), static_cast<std::size_t>(len) * sizeof(double)), 0) << d;

    ASSERT_EQ(nfftk_set_f(h, reinterpret_cast<const double*>(f.data()), 2 * M), NFFTK_OK);
    ASSERT_EQ(nfftk_adjoint(h), NFFTK_OK);
    ASSERT_EQ(nfftk_get_fhat(h, &out, &len), NFFTK_OK);
    ASSERT_EQ(len, 2 * native_h.size());
    EXPECT_EQ(std::memcmp(out, native_h.data(), static_cast<std::size_t>(len) * sizeof(double)), 0) << d;
    EXPECT_EQ(nfftk_destroy(h), NFFTK_OK);
  }
}

TEST(Cabi, StressCyclesReturnToBaseline) {
  const int64_t baseline = nfftk_live_plans();
  const int32_t N[] = {4, 4};
  const double x[] = {0.1, -0.2, 0.3, 0.05};
  const double fhat[32] = {1.0};
  for (int cycle = 0; cycle < 10000; ++cycle) {
    const nfftk_handle h = nfftk_create(N, 2, 2);
    ASSERT_GT(h, 0);
    ASSERT_EQ(nfftk_live_plans(), baseline + 1);
    ASSERT_EQ(nfftk_set_threads(h, 1), NFFTK_OK);
    ASSERT_EQ(nfftk_set_x(h, x, 4), NFFTK_OK);
    ASSERT_EQ(nfftk_set_fhat(h, fhat, 32), NFFTK_OK);
    ASSERT_EQ(nfftk_trafo(h), NFFTK_OK);
    ASSERT_EQ(nfftk_adjoint(h), NFFTK_OK);
    ASSERT_EQ(nfftk_destroy(h), NFFTK_OK);
    ASSERT_EQ(nfftk_trafo(h), NFFTK_E_INVALID_HANDLE);
  }
  EXPECT_EQ(nfftk_live_plans(), baseline);
}

// The same surface resolved by name from the shared object, the way a foreign caller binds it.
TEST(Cabi, DynamicLoading) {
  void* lib = dlopen(NFFTK_LIBRARY_PATH, RTLD_NOW | RTLD_LOCAL);
  ASSERT_NE(lib, nullptr) << dlerror();
  using create_fn = nfftk_handle (*)(const int32_t*, int32_t, int32_t);
  using set_fn = int32_t (*)(nfftk_handle, const double*, int64_t);
  using run_fn = int32_t (*)(nfftk_handle);
  using get_fn = int32_t (*)(nfftk_handle, double**, int64_t*);
  auto create = reinterpret_cast<create_fn>(dlsym(lib, "nfftk_create"));
  auto set_x = reinterpret_cast<set_fn>(dlsym(lib, "nfftk_set_x"));
  auto set_fhat = reinterpret_cast<set_fn>(dlsym(lib, "nfftk_set_fhat"));
  auto run = reinterpret_cast<run_fn>(dlsym(lib, "nfftk_trafo"));
  auto get_f = reinterpret_cast<get_fn>(dlsym(lib, "nfftk_get_f"));
  auto destroy = reinterpret_cast<run_fn>(dlsym(lib, "nfftk_destroy"));
  ASSERT_TRUE(create && set_x && set_fhat && run && get_f && destroy);
  const int32_t N[] = {4};
  const nfftk_handle h = create(N, 1, 1);
  ASSERT_GT(h, 0);
  const double x[] = {0.125};
  const double fhat[] = {0, 0, 0, 0, 0, 0, 1, 0};  // k = 1
  ASSERT_EQ(set_x(h, x, 1), NFFTK_OK);
  ASSERT_EQ(set_fhat(h, fhat, 8), NFFTK_OK);
  ASSERT_EQ(run(h), NFFTK_OK);
  double* f = nullptr;
  int64_t len = 0;
  ASSERT_EQ(get_f(h, &f, &len), NFFTK_OK);
  EXPECT_NEAR(f[0], std::cos(-2 * M_PI * 0.125), 1e-13);
  EXPECT_NEAR(f[1], std::sin(-2 * M_PI * 0.125), 1e-13);
  EXPECT_EQ(destroy(h), NFFTK_OK);
  dlclose(lib);
}

}  // namespace
}  // namespace nfftk
