// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 kernels: one __m256d holds the same matrix element of four lanes.
// Built with -mavx2 only (no -mfma) and called only after a CPUID check.
// Operation order mirrors spd_batch_scalar.cc element for element.

#if defined(__x86_64__)

#include <immintrin.h>

#include <vector>

#include "infoplan/kernels.h"

namespace infoplan::kernels::detail {
namespace {

static_assert(kLanes == 4, "AVX2 kernels process four doubles per register");

struct VecScratch {
  std::vector<__m256d> l, ml, b, r, x, g, tmp;
  void Resize(int dim) {
    const size_t n = static_cast<size_t>(dim) * dim;
    for (auto* v : {&l, &ml, &b, &r, &x, &g, &tmp}) {
      v->assign(n, _mm256_setzero_pd());
    }
  }
};

inline __m256d Load(const double* block, int idx) {
  return _mm256_loadu_pd(block + idx * kLanes);
}

inline void Store(double* block, int idx, __m256d v) {
  _mm256_storeu_pd(block + idx * kLanes, v);
}

// `a(i, j)` yields the lower-triangle element; result into `l`.
template <typename Src>
bool Cholesky(int dim, Src a, __m256d* l) {
  const __m256d zero = _mm256_setzero_pd();
  for (int j = 0; j < dim; ++j) {
    __m256d s = a(j, j);
    for (int k = 0; k < j; ++k) {
      s = _mm256_sub_pd(s, _mm256_mul_pd(l[j * dim + k], l[j * dim + k]));
    }
    if (_mm256_movemask_pd(_mm256_cmp_pd(s, zero, _CMP_GT_OQ)) != 0xF) {
      return false;
    }
    const __m256d pivot = _mm256_sqrt_pd(s);
    l[j * dim + j] = pivot;
    for (int i = j + 1; i < dim; ++i) {
      __m256d t = a(i, j);
      for (int k = 0; k < j; ++k) {
        t = _mm256_sub_pd(t, _mm256_mul_pd(l[i * dim + k], l[j * dim + k]));
      }
      l[i * dim + j] = _mm256_div_pd(t, pivot);
    }
    for (int i = 0; i < j; ++i) l[i * dim + j] = zero;
  }
  return true;
}

}  // namespace

void PredictBlockAvx2(int dim, const double* a, const double* w,
                      const double* in, double* out) {
  thread_local VecScratch s;
  s.Resize(dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < dim; ++j) {
        acc = _mm256_add_pd(
            acc, _mm256_mul_pd(_mm256_set1_pd(a[i * dim + j]), Load(in, j * dim + k)));
      }
      s.tmp[i * dim + k] = acc;
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k <= i; ++k) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < dim; ++j) {
        acc = _mm256_add_pd(
            acc, _mm256_mul_pd(s.tmp[i * dim + j], _mm256_set1_pd(a[k * dim + j])));
      }
      const __m256d v = _mm256_add_pd(acc, _mm256_set1_pd(w[i * dim + k]));
      Store(out, i * dim + k, v);
      Store(out, k * dim + i, v);
    }
  }
}

bool UpdateBlockAvx2(int dim, const double* prior, const double* info,
                     double* post, double* diag_product) {
  thread_local VecScratch s;
  s.Resize(dim);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  auto prior_at = [&](int i, int j) { return Load(prior, i * dim + j); };
  if (!Cholesky(dim, prior_at, s.l.data())) return false;

  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      __m256d acc = zero;
      for (int k = j; k < dim; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(Load(info, i * dim + k), s.l[k * dim + j]));
      }
      s.ml[i * dim + j] = acc;
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      __m256d acc = zero;
      for (int k = i; k < dim; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(s.l[k * dim + i], s.ml[k * dim + j]));
      }
      s.b[i * dim + j] = (i == j) ? _mm256_add_pd(acc, one) : acc;
    }
  }
  auto b_at = [&](int i, int j) { return s.b[i * dim + j]; };
  if (!Cholesky(dim, b_at, s.r.data())) return false;

  for (int j = 0; j < dim; ++j) {
    s.x[j * dim + j] = _mm256_div_pd(one, s.r[j * dim + j]);
    for (int i = j + 1; i < dim; ++i) {
      __m256d acc = zero;
      for (int k = j; k < i; ++k) {
        acc = _mm256_sub_pd(acc, _mm256_mul_pd(s.r[i * dim + k], s.x[k * dim + j]));
      }
      s.x[i * dim + j] = _mm256_div_pd(acc, s.r[i * dim + i]);
    }
    for (int i = 0; i < j; ++i) s.x[i * dim + j] = zero;
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      __m256d acc = zero;
      const int kmax = i < j ? i : j;
      for (int k = 0; k <= kmax; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(s.l[i * dim + k], s.x[j * dim + k]));
      }
      s.g[i * dim + j] = acc;
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      __m256d acc = zero;
      for (int k = 0; k < dim; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(s.g[i * dim + k], s.g[j * dim + k]));
      }
      Store(post, i * dim + j, acc);
      Store(post, j * dim + i, acc);
    }
  }
  __m256d prod = one;
  for (int k = 0; k < dim; ++k) prod = _mm256_mul_pd(prod, s.r[k * dim + k]);
  _mm256_storeu_pd(diag_product, prod);
  return true;
}

}  // namespace infoplan::kernels::detail

#endif  // defined(__x86_64__)
