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

// Dense covariance recursion for linear-Gaussian targets.
//
// This is the reference path: general dimensions, Eigen-backed, one matrix at
// a time. The planners evaluate mutual information through the batched
// kernels in kernels.h instead; the two are cross-checked in tests.

#ifndef INFOPLAN_FILTERING_H_
#define INFOPLAN_FILTERING_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace infoplan {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// y_{t+1} = A_t y_t + w_t,  w_t ~ N(0, W_t).
//
// Either a single (A, W) pair used at every step, or one pair per step.
class TargetModel {
 public:
  TargetModel() = default;
  TargetModel(Mat transition, Mat process_noise);
  TargetModel(std::vector<Mat> transitions, std::vector<Mat> process_noises);

  int dim() const { return dim_; }
  bool is_constant() const { return transitions_.size() == 1; }
  // Number of stored steps; 1 for a constant model.
  int steps() const { return static_cast<int>(transitions_.size()); }

  // Transition from step t to t+1. Throws ContractViolation past the end of a
  // time-varying model.
  const Mat& transition(int t) const { return transitions_[Index(t)]; }
  const Mat& process_noise(int t) const { return noises_[Index(t)]; }

  bool operator==(const TargetModel& other) const;

 private:
  size_t Index(int t) const;

  int dim_ = 0;
  std::vector<Mat> transitions_;
  std::vector<Mat> noises_;
};

struct BeliefCov {
  Mat sigma;
  int t = 0;
};

// (S + S^T) / 2.
Mat Symmetrized(const Mat& m);

// A_t Sigma A_t^T + W_t, symmetrized.
Mat KfPredict(const Mat& sigma, const TargetModel& model, int t);

// (Sigma^-1 + sum_i M_i)^-1, symmetrized. An empty list returns Sigma as is.
Mat KfUpdateInfo(const Mat& sigma, std::span<const Mat> infos);

// Predict then update in one step of the planning recursion.
BeliefCov KfStep(const BeliefCov& belief, const TargetModel& model,
                 std::span<const Mat> infos);

// log det of a symmetric positive definite matrix via Cholesky. Throws
// NumericalDomainError when the factorization fails.
double LogDet(const Mat& spd);

// H^T V^-1 H.
Mat MeasurementInformation(const Mat& h, const Mat& v);

// Mutual information (nats) between the target trajectory y_{1:T} and the
// measurements whose information matrices are listed per step:
// infos_per_step[t - 1] holds the M_{i,t} of every sensing robot at step t.
//
//   I = 1/2 sum_t [ log det(predicted_t) - log det(posterior_t) ]
double MutualInformation(const TargetModel& model, const Mat& prior,
                         std::span<const std::vector<Mat>> infos_per_step);

}  // namespace infoplan

#endif  // INFOPLAN_FILTERING_H_
