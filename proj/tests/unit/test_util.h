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

#ifndef INFOPLAN_TESTS_UNIT_TEST_UTIL_H_
#define INFOPLAN_TESTS_UNIT_TEST_UTIL_H_

#include <random>
#include <vector>

#include "infoplan/filtering.h"

namespace infoplan::testing {

// B B^T + shift I with B uniform in [-1, 1].
inline Mat RandomSpd(std::mt19937_64& rng, int dim, double shift = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat b(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) b(r, c) = u(rng);
  }
  return b * b.transpose() + shift * Mat::Identity(dim, dim);
}

inline Mat RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = u(rng);
  }
  return m;
}

// Plain triple-loop product, independent of Eigen's kernels.
inline std::vector<std::vector<double>> NaiveProduct(
    const std::vector<std::vector<double>>& a,
    const std::vector<std::vector<double>>& b) {
  const size_t n = a.size(), k = b.size(), m = b[0].size();
  std::vector<std::vector<double>> out(n, std::vector<double>(m, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      for (size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

inline std::vector<std::vector<double>> ToRows(const Mat& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

// Laplace expansion along the first row.
inline double CofactorDet(const std::vector<std::vector<double>>& a) {
  const size_t n = a.size();
  if (n == 1) return a[0][0];
  double det = 0.0;
  for (size_t col = 0; col < n; ++col) {
    std::vector<std::vector<double>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(row);
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * a[0][col] * CofactorDet(minor);
  }
  return det;
}

}  // namespace infoplan::testing

#endif  // INFOPLAN_TESTS_UNIT_TEST_UTIL_H_
