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

// Scalar reference kernels. Each lane is processed independently; the
// arithmetic per matrix element must stay in lockstep with
// spd_batch_avx2.cc.

#include <cmath>
#include <vector>

#include "infoplan/kernels.h"

namespace infoplan::kernels::detail {
namespace {

// Lower Cholesky factor of the lower triangle of `a` (dense, row-major).
bool Cholesky(int dim, const double* a, double* l) {
  for (int j = 0; j < dim; ++j) {
    double s = a[j * dim + j];
    for (int k = 0; k < j; ++k) s = s - l[j * dim + k] * l[j * dim + k];
    if (!(s > 0.0)) return false;
    const double pivot = std::sqrt(s);
    l[j * dim + j] = pivot;
    for (int i = j + 1; i < dim; ++i) {
      double t = a[i * dim + j];
      for (int k = 0; k < j; ++k) t = t - l[i * dim + k] * l[j * dim + k];
      l[i * dim + j] = t / pivot;
    }
    for (int i = 0; i < j; ++i) l[i * dim + j] = 0.0;
  }
  return true;
}

struct Scratch {
  std::vector<double> p, m, l, ml, b, r, x, g, out;
  void Resize(int dim) {
    const size_t n = static_cast<size_t>(dim) * dim;
    for (auto* v : {&p, &m, &l, &ml, &b, &r, &x, &g, &out}) v->assign(n, 0.0);
  }
};

void Gather(int dim, const double* block, int lane, double* dense) {
  for (int i = 0; i < dim * dim; ++i) dense[i] = block[i * kLanes + lane];
}

void Scatter(int dim, const double* dense, int lane, double* block) {
  for (int i = 0; i < dim * dim; ++i) block[i * kLanes + lane] = dense[i];
}

}  // namespace

void PredictBlockScalar(int dim, const double* a, const double* w,
                        const double* in, double* out) {
  thread_local Scratch s;
  s.Resize(dim);
  for (int lane = 0; lane < kLanes; ++lane) {
    Gather(dim, in, lane, s.p.data());
    // tmp = A * Sigma, kept in s.g.
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc = acc + a[i * dim + j] * s.p[j * dim + k];
        s.g[i * dim + k] = acc;
      }
    }
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k <= i; ++k) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc = acc + s.g[i * dim + j] * a[k * dim + j];
        const double v = acc + w[i * dim + k];
        s.out[i * dim + k] = v;
        s.out[k * dim + i] = v;
      }
    }
    Scatter(dim, s.out.data(), lane, out);
  }
}

bool UpdateBlockScalar(int dim, const double* prior, const double* info,
                       double* post, double* diag_product) {
  thread_local Scratch s;
  s.Resize(dim);
  for (int lane = 0; lane < kLanes; ++lane) {
    Gather(dim, prior, lane, s.p.data());
    Gather(dim, info, lane, s.m.data());
    if (!Cholesky(dim, s.p.data(), s.l.data())) return false;

    // ml = M L, using that L is lower triangular.
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double acc = 0.0;
        for (int k = j; k < dim; ++k) acc = acc + s.m[i * dim + k] * s.l[k * dim + j];
        s.ml[i * dim + j] = acc;
      }
    }
    // b = I + L^T M L, lower triangle.
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j <= i; ++j) {
        double acc = 0.0;
        for (int k = i; k < dim; ++k) acc = acc + s.l[k * dim + i] * s.ml[k * dim + j];
        s.b[i * dim + j] = (i == j) ? acc + 1.0 : acc;
      }
    }
    if (!Cholesky(dim, s.b.data(), s.r.data())) return false;

    // x = R^-1.
    for (int j = 0; j < dim; ++j) {
      s.x[j * dim + j] = 1.0 / s.r[j * dim + j];
      for (int i = j + 1; i < dim; ++i) {
        double acc = 0.0;
        for (int k = j; k < i; ++k) acc = acc - s.r[i * dim + k] * s.x[k * dim + j];
        s.x[i * dim + j] = acc / s.r[i * dim + i];
      }
      for (int i = 0; i < j; ++i) s.x[i * dim + j] = 0.0;
    }
    // g = L X^T.
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double acc = 0.0;
        const int kmax = i < j ? i : j;
        for (int k = 0; k <= kmax; ++k) acc = acc + s.l[i * dim + k] * s.x[j * dim + k];
        s.g[i * dim + j] = acc;
      }
    }
    // post = G G^T.
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j <= i; ++j) {
        double acc = 0.0;
        for (int k = 0; k < dim; ++k) acc = acc + s.g[i * dim + k] * s.g[j * dim + k];
        s.out[i * dim + j] = acc;
        s.out[j * dim + i] = acc;
      }
    }
    double prod = 1.0;
    for (int k = 0; k < dim; ++k) prod = prod * s.r[k * dim + k];
    diag_product[lane] = prod;
    Scatter(dim, s.out.data(), lane, post);
  }
  return true;
}

}  // namespace infoplan::kernels::detail
