// Copyright 2026 The oodsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OODSIM_PCA_HPP_
#define OODSIM_PCA_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "oodsim/matrix.hpp"

namespace oodsim {

struct PcaModel {
  Eigen::RowVectorXd mean;
  // target_dim x dim, orthonormal rows ordered by decreasing variance. Each
  // row's largest-magnitude entry is positive so the basis is reproducible.
  RowMatrix components;
  Eigen::VectorXd explained_variance;        // eigenvalues of the covariance
  Eigen::VectorXd explained_variance_ratio;  // eigenvalue / total variance

  double cumulative_explained_variance() const { return explained_variance_ratio.sum(); }

  // (X - mean) * components^T
  RowMatrix transform(const RowMatrix& points) const;
  // Y * components + mean
  RowMatrix inverse_transform(const RowMatrix& reduced) const;
};

struct PcaFit {
  PcaModel model;
  std::vector<std::string> warnings;
};

// Eigendecomposition of the sample covariance (divided by N - 1). Requires
// N > target_dim >= 1 and target_dim <= dim. Throws InputError on invalid
// sizes or zero total variance. A warning is recorded when the components
// explain less than `min_explained` of the variance.
PcaFit fit_pca(const RowMatrix& points, int target_dim = 50, double min_explained = 0.80);

nlohmann::json summary_json(const PcaFit& fit);

}  // namespace oodsim

#endif  // OODSIM_PCA_HPP_
