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

#include <atomic>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "nfftk/plan.hpp"
#include "nfftk/transform.hpp"

namespace nfftk {
namespace {

static_assert(NFFTK_PRE_PHI_HUT == PRE_PHI_HUT && NFFTK_PRE_PSI == PRE_PSI && NFFTK_PRE_FULL_PSI == PRE_FULL_PSI &&
              NFFTK_PRE_LIN_PSI == PRE_LIN_PSI && NFFTK_NFFT_SORT_NODES == NFFT_SORT_NODES &&
              NFFTK_NFFT_OMP_BLOCKWISE_ADJOINT == NFFT_OMP_BLOCKWISE_ADJOINT && NFFTK_FFTW_ESTIMATE == FFTW_ESTIMATE);
static_assert(sizeof(std::complex<double>) == 2 * sizeof(double));

std::atomic<std::int64_t> g_live{0};

struct Entry {
  explicit Entry(Plan<double> p)
      : plan(std::move(p)),
        fhat(ComplexVector<double>::Zero(plan.num_coefficients())),
        f(ComplexVector<double>::Zero(plan.num_nodes())) {
    ++g_live;
  }
  ~Entry() { --g_live; }
  Entry(const Entry&) = delete;
  Entry& operator=(const Entry&) = delete;

  Plan<double> plan;
  ComplexVector<double> fhat;
  ComplexVector<double> f;
  NodeMatrix<double> x_view;  // mirrors the plan's nodes for nfftk_get_x
  int32_t last_code = NFFTK_OK;
  std::string last_message;
};

class HandleTable {
 public:
  nfftk_handle insert(std::unique_ptr<Entry> e) {
    std::lock_guard lock(mu_);
    const nfftk_handle h = next_++;
    entries_.emplace(h, std::move(e));
    return h;
  }
  Entry* find(nfftk_handle h) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(h);
    return it == entries_.end() ? nullptr : it->second.get();
  }
  bool erase(nfftk_handle h) {
    std::unique_ptr<Entry> doomed;
    std::lock_guard lock(mu_);
    auto it = entries_.find(h);
    if (it == entries_.end()) return false;
    doomed = std::move(it->second);
    entries_.erase(it);
    return true;
  }

 private:
  std::mutex mu_;
  nfftk_handle next_ = 1;
  std::unordered_map<nfftk_handle, std::unique_ptr<Entry>> entries_;
};

HandleTable& table() {
  static HandleTable t;
  return t;
}

thread_local int32_t t_create_code = NFFTK_OK;
thread_local std::string t_create_message;

int32_t code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kLengthMismatch:
      return NFFTK_E_SHAPE;
    case ErrorCode::kInvalidBandlimit:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kWindowDegenerate:
    case ErrorCode::kOversampling:
    case ErrorCode::kCutoff:
    case ErrorCode::kInvalidFlag:
    case ErrorCode::kNodeRange:
    case ErrorCode::kNotPrecomputed:
    case ErrorCode::kUndefinedMetric:
      return NFFTK_E_DOMAIN;
    case ErrorCode::kParse:
      break;
  }
  return NFFTK_E_INTERNAL;
}

// Runs fn on the entry behind h, translating exceptions into return codes.
template <typename Fn>
int32_t with_entry(nfftk_handle h, Fn&& fn) {
  Entry* e = table().find(h);
  if (!e) return NFFTK_E_INVALID_HANDLE;
  int32_t code = NFFTK_OK;
  std::string message;
  try {
    code = fn(*e);
  } catch (const Error& err) {
    code = code_for(err.code());
    message = err.what();
  } catch (const std::exception& err) {
    code = NFFTK_E_INTERNAL;
    message = err.what();
  } catch (...) {
    code = NFFTK_E_INTERNAL;
    message = "unknown failure";
  }
  e->last_code = code;
  e->last_message = std::move(message);
  return code;
}

[[noreturn]] int32_t shape_error(const std::string& message) { throw Error(ErrorCode::kLengthMismatch, message); }

MultiIndex to_multi_index(const int32_t* v, int32_t d) {
  if (!v || d < 1 || d > kMaxDim) throw Error(ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  MultiIndex out(d);
  for (int32_t i = 0; i < d; ++i) out[i] = v[i];
  return out;
}

template <typename Make>
nfftk_handle create_with(Make&& make) {
  try {
    auto entry = std::make_unique<Entry>(make());
    t_create_code = NFFTK_OK;
    t_create_message.clear();
    return table().insert(std::move(entry));
  } catch (const Error& err) {
    t_create_code = code_for(err.code());
    t_create_message = err.what();
  } catch (const std::exception& err) {
    t_create_code = NFFTK_E_INTERNAL;
    t_create_message = err.what();
  }
  return t_create_code;
}

int32_t expose(double* data, int64_t count, double** out, int64_t* len) {
  if (out) *out = data;
  if (len) *len = count;
  return NFFTK_OK;
}

}  // namespace
}  // namespace nfftk

using namespace nfftk;

extern "C" {

int32_t nfftk_abi_version(void) {
  return NFFTK_ABI_VERSION_MAJOR * 10000 + NFFTK_ABI_VERSION_MINOR * 100 + NFFTK_ABI_VERSION_PATCH;
}

nfftk_handle nfftk_create(const int32_t* N, int32_t d, int32_t M) {
  return create_with([&] { return Plan<double>(default_config(to_multi_index(N, d), M)); });
}

nfftk_handle nfftk_create_advanced(const int32_t* N, int32_t d, int32_t M, const int32_t* n, int32_t m, uint32_t f1,
                                   uint32_t f2) {
  return create_with([&] {
    PlanConfig c;
    c.N = to_multi_index(N, d);
    c.M = M;
    c.n = to_multi_index(n, d);
    c.m = m;
    c.f1 = f1;
    c.f2 = f2;
    return Plan<double>(std::move(c));
  });
}

int32_t nfftk_set_x(nfftk_handle h, const double* x, int64_t len) {
  return with_entry(h, [&](Entry& e) {
    const Index M = e.plan.num_nodes();
    const int d = e.plan.dim();
    if (!x || len != M * d) return shape_error("set_x expects M*d = " + std::to_string(M * d) + " values");
    Eigen::Map<const NodeMatrix<double>> nodes(x, M, d);
    e.plan.set_nodes(nodes);
    e.plan.precompute();
    e.x_view = e.plan.nodes();
    return NFFTK_OK;
  });
}

int32_t nfftk_set_fhat(nfftk_handle h, const double* fhat, int64_t len) {
  return with_entry(h, [&](Entry& e) {
    if (!fhat || len != 2 * e.fhat.size())
      return shape_error("set_fhat expects 2*|I_N| = " + std::to_string(2 * e.fhat.size()) + " values");
    std::memcpy(static_cast<void*>(e.fhat.data()), fhat, static_cast<std::size_t>(len) * sizeof(double));
    return NFFTK_OK;
  });
}

int32_t nfftk_set_f(nfftk_handle h, const double* f, int64_t len) {
  return with_entry(h, [&](Entry& e) {
    if (!f || len != 2 * e.f.size())
      return shape_error("set_f expects 2*M = " + std::to_string(2 * e.f.size()) + " values");
    std::memcpy(static_cast<void*>(e.f.data()), f, static_cast<std::size_t>(len) * sizeof(double));
    return NFFTK_OK;
  });
}

int32_t nfftk_trafo(nfftk_handle h) {
  return with_entry(h, [](Entry& e) {
    trafo(e.plan, e.fhat, e.f);
    return NFFTK_OK;
  });
}

int32_t nfftk_adjoint(nfftk_handle h) {
  return with_entry(h, [](Entry& e) {
    adjoint(e.plan, e.f, e.fhat);
    return NFFTK_OK;
  });
}

int32_t nfftk_get_x(nfftk_handle h, double** data, int64_t* len) {
  return with_entry(h, [&](Entry& e) {
    if (e.x_view.size() == 0) e.x_view = e.plan.nodes();
    return expose(e.x_view.data(), e.x_view.size(), data, len);
  });
}

int32_t nfftk_get_f(nfftk_handle h, double** data, int64_t* len) {
  return with_entry(h, [&](Entry& e) { return expose(reinterpret_cast<double*>(e.f.data()), 2 * e.f.size(), data, len); });
}

int32_t nfftk_get_fhat(nfftk_handle h, double** data, int64_t* len) {
  return with_entry(h, [&](Entry& e) {
    return expose(reinterpret_cast<double*>(e.fhat.data()), 2 * e.fhat.size(), data, len);
  });
}

int32_t nfftk_get_info(nfftk_handle h, int32_t* d, int32_t* M, int32_t* N, int32_t* n, int32_t* m, uint32_t* f1,
                       uint32_t* f2) {
  return with_entry(h, [&](Entry& e) {
    const Plan<double>& p = e.plan;
    if (d) *d = p.dim();
    if (M) *M = static_cast<int32_t>(p.num_nodes());
    for (int i = 0; i < p.dim(); ++i) {
      if (N) N[i] = static_cast<int32_t>(p.bandlimit()[i]);
      if (n) n[i] = static_cast<int32_t>(p.fft_length()[i]);
    }
    if (m) *m = p.cutoff();
    if (f1) *f1 = p.nfft_flags();
    if (f2) *f2 = p.fftw_flags();
    return NFFTK_OK;
  });
}

int32_t nfftk_set_threads(nfftk_handle h, int32_t threads) {
  return with_entry(h, [&](Entry& e) {
    if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "thread count must be >= 1");
    e.plan.set_threads(threads);
    return NFFTK_OK;
  });
}

int32_t nfftk_last_error(nfftk_handle h, const char** message) {
  if (h == 0) {
    if (message) *message = t_create_message.c_str();
    return t_create_code;
  }
  Entry* e = table().find(h);
  if (!e) {
    static const char kInvalid[] = "invalid or destroyed handle";
    if (message) *message = kInvalid;
    return NFFTK_E_INVALID_HANDLE;
  }
  if (message) *message = e->last_message.c_str();
  return e->last_code;
}

int32_t nfftk_destroy(nfftk_handle h) { return table().erase(h) ? NFFTK_OK : NFFTK_E_INVALID_HANDLE; }

int64_t nfftk_live_plans(void) { return g_live.load(); }

}  // extern "C"
