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

// Batched covariance recursion kernels.
//
// Every oracle call runs a predict/update recursion for each observed target.
// Targets are independent, so the recursion is vectorized across targets:
// kLanes small symmetric matrices are stored interleaved and processed
// together. A scalar reference kernel and an AVX2 kernel implement the same
// per-lane operation sequence (no FMA, no reassociation), so the two produce
// bit-identical results and the variant is chosen at runtime.

#ifndef INFOPLAN_KERNELS_H_
#define INFOPLAN_KERNELS_H_

#include <span>
#include <string_view>
#include <vector>

namespace infoplan::kernels {

inline constexpr int kLanes = 4;

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);
bool IsaSupported(Isa isa);
// Best supported variant, unless INFOPLAN_ISA=scalar|avx2 overrides it.
Isa DefaultIsa();
Isa ActiveIsa();
// Throws ContractViolation for an unsupported variant.
void SetIsa(Isa isa);

// `count` symmetric dim x dim matrices. Element (r, c) of matrix b is stored at
//   data[(block(b) * dim * dim + r * dim + c) * kLanes + lane(b)]
// with block(b) = b / kLanes and lane(b) = b % kLanes. Padding lanes hold the
// identity so that whole blocks stay positive definite.
class SpdBatch {
 public:
  SpdBatch() = default;
  SpdBatch(int dim, int count);

  int dim() const { return dim_; }
  int count() const { return count_; }
  int blocks() const { return (count_ + kLanes - 1) / kLanes; }
  int block_stride() const { return dim_ * dim_ * kLanes; }

  double& at(int b, int r, int c) { return data_[Offset(b, r, c)]; }
  double at(int b, int r, int c) const { return data_[Offset(b, r, c)]; }

  // Row-major dim x dim input.
  void Set(int b, std::span<const double> row_major);
  void SetZero(int b);
  std::vector<double> Get(int b) const;
  void CopyLane(int b, const SpdBatch& from);

  double* block(int k) { return data_.data() + k * block_stride(); }
  const double* block(int k) const { return data_.data() + k * block_stride(); }

 private:
  size_t Offset(int b, int r, int c) const {
    return static_cast<size_t>(((b / kLanes) * dim_ * dim_ + r * dim_ + c) *
                                   kLanes +
                               b % kLanes);
  }

  int dim_ = 0;
  int count_ = 0;
  std::vector<double> data_;
};

// out_b = A in_b A^T + W for every b. A and W are row-major dim x dim and
// shared by the batch. The result is exactly symmetric.
void Predict(std::span<const double> a, std::span<const double> w,
             const SpdBatch& in, SpdBatch& out);

// post_b = (prior_b^-1 + info_b)^-1 and
// log_gain[b] = log det(prior_b) - log det(post_b) >= 0.
//
// Computed as prior = L L^T, B = I + L^T info L = R R^T,
// post = (L R^-T)(L R^-T)^T, log_gain = 2 log prod_k R_kk.
// Throws NumericalDomainError if a prior is not positive definite.
void InformationUpdate(const SpdBatch& prior, const SpdBatch& info,
                       SpdBatch& post, std::span<double> log_gain);

namespace detail {

// One block of kLanes matrices. Return false when a Cholesky pivot is not
// strictly positive. diag_product receives prod_k R_kk per lane.
using PredictBlockFn = void (*)(int dim, const double* a, const double* w,
                                const double* in, double* out);
using UpdateBlockFn = bool (*)(int dim, const double* prior, const double* info,
                               double* post, double* diag_product);

void PredictBlockScalar(int dim, const double* a, const double* w,
                        const double* in, double* out);
bool UpdateBlockScalar(int dim, const double* prior, const double* info,
                       double* post, double* diag_product);

#if defined(__x86_64__)
void PredictBlockAvx2(int dim, const double* a, const double* w,
                      const double* in, double* out);
bool UpdateBlockAvx2(int dim, const double* prior, const double* info,
                     double* post, double* diag_product);
#endif

}  // namespace detail
}  // namespace infoplan::kernels

#endif  // INFOPLAN_KERNELS_H_
