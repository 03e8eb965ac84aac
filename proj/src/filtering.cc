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

#include "infoplan/filtering.h"

#include <cmath>
#include <string>

#include "infoplan/errors.h"

namespace infoplan {
namespace {

void RequireSquare(const Mat& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ContractViolation(std::string(what) + ": expected " +
                            std::to_string(dim) + "x" + std::to_string(dim) +
                            ", got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

}  // namespace

TargetModel::TargetModel(Mat transition, Mat process_noise)
    : TargetModel(std::vector<Mat>{std::move(transition)},
                  std::vector<Mat>{std::move(process_noise)}) {}

TargetModel::TargetModel(std::vector<Mat> transitions,
                         std::vector<Mat> process_noises)
    : transitions_(std::move(transitions)), noises_(std::move(process_noises)) {
  if (transitions_.empty() || transitions_.size() != noises_.size()) {
    throw ContractViolation("TargetModel: need matching, non-empty A/W lists");
  }
  dim_ = static_cast<int>(transitions_.front().rows());
  for (size_t t = 0; t < transitions_.size(); ++t) {
    RequireSquare(transitions_[t], dim_, "TargetModel transition");
    RequireSquare(noises_[t], dim_, "TargetModel process noise");
  }
}

size_t TargetModel::Index(int t) const {
  if (is_constant()) return 0;
  if (t < 0 || t >= steps()) {
    throw ContractViolation("TargetModel: step " + std::to_string(t) +
                            " outside time-varying model of length " +
                            std::to_string(steps()));
  }
  return static_cast<size_t>(t);
}

bool TargetModel::operator==(const TargetModel& other) const {
  if (dim_ != other.dim_ || steps() != other.steps()) return false;
  for (size_t t = 0; t < transitions_.size(); ++t) {
    if (transitions_[t] != other.transitions_[t]) return false;
    if (noises_[t] != other.noises_[t]) return false;
  }
  return true;
}

Mat Symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

Mat KfPredict(const Mat& sigma, const TargetModel& model, int t) {
  RequireSquare(sigma, model.dim(), "KfPredict covariance");
  const Mat& a = model.transition(t);
  return Symmetrized(a * sigma * a.transpose() + model.process_noise(t));
}

Mat KfUpdateInfo(const Mat& sigma, std::span<const Mat> infos) {
  if (infos.empty()) return sigma;
  const int dim = static_cast<int>(sigma.rows());
  RequireSquare(sigma, dim, "KfUpdateInfo covariance");

  Eigen::LLT<Mat> prior(sigma);
  if (prior.info() != Eigen::Success) {
    throw NumericalDomainError("KfUpdateInfo: covariance not positive definite");
  }
  Mat information = prior.solve(Mat::Identity(dim, dim));
  for (const Mat& m : infos) {
    RequireSquare(m, dim, "KfUpdateInfo information matrix");
    information += m;
  }
  Eigen::LLT<Mat> posterior(Symmetrized(information));
  if (posterior.info() != Eigen::Success) {
    throw NumericalDomainError("KfUpdateInfo: accumulated information singular");
  }
  return Symmetrized(posterior.solve(Mat::Identity(dim, dim)));
}

BeliefCov KfStep(const BeliefCov& belief, const TargetModel& model,
                 std::span<const Mat> infos) {
  return {KfUpdateInfo(KfPredict(belief.sigma, model, belief.t), infos),
          belief.t + 1};
}

double LogDet(const Mat& spd) {
  if (spd.rows() != spd.cols()) {
    throw ContractViolation("LogDet: matrix not square");
  }
  Eigen::LLT<Mat> llt(spd);
  if (llt.info() != Eigen::Success) {
    throw NumericalDomainError("LogDet: matrix not positive definite");
  }
  const Mat& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i));
  return 2.0 * sum;
}

Mat MeasurementInformation(const Mat& h, const Mat& v) {
  if (v.rows() != h.rows() || v.cols() != h.rows()) {
    throw ContractViolation("MeasurementInformation: V must be dz x dz");
  }
  return Symmetrized(h.transpose() * v.ldlt().solve(h));
}

double MutualInformation(const TargetModel& model, const Mat& prior,
                         std::span<const std::vector<Mat>> infos_per_step) {
  RequireSquare(prior, model.dim(), "MutualInformation prior");
  BeliefCov belief{prior, 0};
  double total = 0.0;
  for (const std::vector<Mat>& infos : infos_per_step) {
    Mat predicted = KfPredict(belief.sigma, model, belief.t);
    Mat posterior = KfUpdateInfo(predicted, infos);
    if (!infos.empty()) total += LogDet(predicted) - LogDet(posterior);
    belief = {std::move(posterior), belief.t + 1};
  }
  return 0.5 * total;
}

}  // namespace infoplan
