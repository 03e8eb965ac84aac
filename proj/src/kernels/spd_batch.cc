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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "infoplan/errors.h"
#include "infoplan/kernels.h"

namespace infoplan::kernels {
namespace {

std::atomic<int> active_isa{-1};

struct Table {
  detail::PredictBlockFn predict;
  detail::UpdateBlockFn update;
};

Table TableFor(Isa isa) {
#if defined(__x86_64__)
  if (isa == Isa::kAvx2) {
    return {detail::PredictBlockAvx2, detail::UpdateBlockAvx2};
  }
#endif
  (void)isa;
  return {detail::PredictBlockScalar, detail::UpdateBlockScalar};
}

void RequireSameShape(const SpdBatch& a, const SpdBatch& b, const char* what) {
  if (a.dim() != b.dim() || a.count() != b.count()) {
    throw ContractViolation(std::string(what) + ": batch shapes differ");
  }
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool IsaSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa DefaultIsa() {
  if (const char* env = std::getenv("INFOPLAN_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::kScalar;
    if (want == "avx2" && IsaSupported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return IsaSupported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

Isa ActiveIsa() {
  int v = active_isa.load(std::memory_order_acquire);
  if (v < 0) {
    v = static_cast<int>(DefaultIsa());
    active_isa.store(v, std::memory_order_release);
  }
  return static_cast<Isa>(v);
}

void SetIsa(Isa isa) {
  if (!IsaSupported(isa)) {
    throw ContractViolation("kernel variant not supported on this CPU: " +
                            std::string(IsaName(isa)));
  }
  active_isa.store(static_cast<int>(isa), std::memory_order_release);
}

SpdBatch::SpdBatch(int dim, int count) : dim_(dim), count_(count) {
  if (dim <= 0 || count < 0) throw ContractViolation("SpdBatch: bad shape");
  data_.assign(static_cast<size_t>(blocks()) * block_stride(), 0.0);
  for (int b = 0; b < blocks() * kLanes; ++b) {
    for (int i = 0; i < dim_; ++i) data_[Offset(b, i, i)] = 1.0;
  }
}

void SpdBatch::Set(int b, std::span<const double> row_major) {
  if (row_major.size() != static_cast<size_t>(dim_ * dim_)) {
    throw ContractViolation("SpdBatch::Set: expected dim*dim values");
  }
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) at(b, r, c) = row_major[r * dim_ + c];
  }
}

void SpdBatch::SetZero(int b) {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) at(b, r, c) = 0.0;
  }
}

std::vector<double> SpdBatch::Get(int b) const {
  std::vector<double> out(static_cast<size_t>(dim_) * dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) out[r * dim_ + c] = at(b, r, c);
  }
  return out;
}

void SpdBatch::CopyLane(int b, const SpdBatch& from) {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) at(b, r, c) = from.at(b, r, c);
  }
}

void Predict(std::span<const double> a, std::span<const double> w,
             const SpdBatch& in, SpdBatch& out) {
  const int dim = in.dim();
  if (a.size() != static_cast<size_t>(dim * dim) || w.size() != a.size()) {
    throw ContractViolation("Predict: model dimension mismatch");
  }
  RequireSameShape(in, out, "Predict");
  const Table table = TableFor(ActiveIsa());
  for (int k = 0; k < in.blocks(); ++k) {
    table.predict(dim, a.data(), w.data(), in.block(k), out.block(k));
  }
}

void InformationUpdate(const SpdBatch& prior, const SpdBatch& info,
                       SpdBatch& post, std::span<double> log_gain) {
  RequireSameShape(prior, info, "InformationUpdate");
  RequireSameShape(prior, post, "InformationUpdate");
  if (log_gain.size() < static_cast<size_t>(prior.count())) {
    throw ContractViolation("InformationUpdate: log_gain too short");
  }
  const Table table = TableFor(ActiveIsa());
  double diag[kLanes];
  for (int k = 0; k < prior.blocks(); ++k) {
    if (!table.update(prior.dim(), prior.block(k), info.block(k), post.block(k),
                      diag)) {
      throw NumericalDomainError(
          "InformationUpdate: covariance not positive definite");
    }
    for (int lane = 0; lane < kLanes; ++lane) {
      const int b = k * kLanes + lane;
      if (b < prior.count()) log_gain[b] = 2.0 * std::log(diag[lane]);
    }
  }
}

}  // namespace infoplan::kernels
