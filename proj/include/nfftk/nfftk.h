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

/* Flat C interface to nfftk.
 *
 * Plans are referenced by opaque integer handles (> 0). Handles are never
 * reused, so calls on a destroyed handle fail with NFFTK_E_INVALID_HANDLE
 * instead of touching freed memory.
 *
 * Every plan owns its buffers: nodes x (M*d doubles, node-major), the
 * coefficients fhat (|I_N| complex values) and the samples f (M complex
 * values). Complex values are interleaved (re, im) pairs of doubles and fhat
 * is ordered lexicographically over I_N with the last dimension fastest. The
 * pointers returned by the getters stay valid until nfftk_destroy. The f and
 * fhat buffers may be written to directly; the x buffer is a read-only view,
 * change nodes with nfftk_set_x.
 *
 * Distinct handles may be used from different threads; one handle must not be
 * used by two threads at once.
 */

#ifndef NFFTK_NFFTK_H_
#define NFFTK_NFFTK_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define NFFTK_ABI_VERSION_MAJOR 1
#define NFFTK_ABI_VERSION_MINOR 0
#define NFFTK_ABI_VERSION_PATCH 0

/* Return codes. */
#define NFFTK_OK 0
#define NFFTK_E_INVALID_HANDLE (-1)
#define NFFTK_E_SHAPE (-2)
#define NFFTK_E_DOMAIN (-3)
#define NFFTK_E_INTERNAL (-9)

/* NFFT flag word (f1). */
#define NFFTK_PRE_PHI_HUT (1U << 0)
#define NFFTK_FG_PSI (1U << 1)
#define NFFTK_PRE_LIN_PSI (1U << 2)
#define NFFTK_PRE_FG_PSI (1U << 3)
#define NFFTK_PRE_PSI (1U << 4)
#define NFFTK_PRE_FULL_PSI (1U << 5)
#define NFFTK_MALLOC_X (1U << 6)
#define NFFTK_MALLOC_F_HAT (1U << 7)
#define NFFTK_MALLOC_F (1U << 8)
#define NFFTK_FFT_OUT_OF_PLACE (1U << 9)
#define NFFTK_FFTW_INIT (1U << 10)
#define NFFTK_NFFT_SORT_NODES (1U << 11)
#define NFFTK_NFFT_OMP_BLOCKWISE_ADJOINT (1U << 12)

/* FFTW flag word (f2); accepted and ignored. */
#define NFFTK_FFTW_MEASURE (0U)
#define NFFTK_FFTW_DESTROY_INPUT (1U << 0)
#define NFFTK_FFTW_UNALIGNED (1U << 1)
#define NFFTK_FFTW_CONSERVE_MEMORY (1U << 2)
#define NFFTK_FFTW_EXHAUSTIVE (1U << 3)
#define NFFTK_FFTW_PRESERVE_INPUT (1U << 4)
#define NFFTK_FFTW_PATIENT (1U << 5)
#define NFFTK_FFTW_ESTIMATE (1U << 6)
#define NFFTK_FFTW_WISDOM_ONLY (1U << 21)

typedef int64_t nfftk_handle;

/* MAJOR * 10000 + MINOR * 100 + PATCH of the loaded library. */
int32_t nfftk_abi_version(void);

/* Plan with default FFT length, m = 8 and default flags. Returns a handle > 0
 * or a negative error code; the message is available from nfftk_last_error(0). */
nfftk_handle nfftk_create(const int32_t* N, int32_t d, int32_t M);

/* Plan with explicit FFT length n[d], cutoff m and flag words. */
nfftk_handle nfftk_create_advanced(const int32_t* N, int32_t d, int32_t M, const int32_t* n, int32_t m, uint32_t f1,
                                   uint32_t f2);

/* Copies len == M*d node coordinates in [-1/2, 1/2) and precomputes. */
int32_t nfftk_set_x(nfftk_handle h, const double* x, int64_t len);
/* Copies len == 2*|I_N| doubles into the coefficient buffer. */
int32_t nfftk_set_fhat(nfftk_handle h, const double* fhat, int64_t len);
/* Copies len == 2*M doubles into the sample buffer. */
int32_t nfftk_set_f(nfftk_handle h, const double* f, int64_t len);

/* fhat -> f */
int32_t nfftk_trafo(nfftk_handle h);
/* f -> fhat */
int32_t nfftk_adjoint(nfftk_handle h);

/* Library-owned buffers; *len receives the number of doubles. */
int32_t nfftk_get_x(nfftk_handle h, double** data, int64_t* len);
int32_t nfftk_get_f(nfftk_handle h, double** data, int64_t* len);
int32_t nfftk_get_fhat(nfftk_handle h, double** data, int64_t* len);

/* d, M, N[d], n[d] and m; array arguments need room for 3 entries and may be NULL. */
int32_t nfftk_get_info(nfftk_handle h, int32_t* d, int32_t* M, int32_t* N, int32_t* n, int32_t* m, uint32_t* f1,
                       uint32_t* f2);

int32_t nfftk_set_threads(nfftk_handle h, int32_t threads);

/* Code and message of the last failure on h (NFFTK_OK and "" if none). h == 0
 * reports the last failed create on the calling thread. The message pointer is
 * valid until the next call on the same handle. */
int32_t nfftk_last_error(nfftk_handle h, const char** message);

int32_t nfftk_destroy(nfftk_handle h);

/* Number of live plans; diagnostic for leak checks. */
int64_t nfftk_live_plans(void);

#ifdef __cplusplus
}
#endif

#endif /* NFFTK_NFFTK_H_ */
