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

#include "oodsim/pca.hpp"

#include <cmath>
#include <sstream>

#include "oodsim/error.hpp"

namespace oodsim {

RowMatrix PcaModel::transform(const RowMatrix& points) const {
  return (points.rowwise() - mean) * components.transpose();
}

RowMatrix PcaModel::inverse_transform(const RowMatrix& reduced) const {
  return (reduced * components).rowwise() + mean;
}

PcaFit fit_pca(const RowMatrix& points, int target_dim, double min_explained) {
  const Eigen::Index n = points.rows();
  const Eigen::Index dim = points.cols();
  if (target_dim < 1 || target_dim > dim || n <= target_dim) {
    throw InputError("PCA needs N > target_dim >= 1 and target_dim <= dim (N=" +
                     std::to_string(n) + ", dim=" + std::to_string(dim) +
                     ", target_dim=" + std::to_string(target_dim) + ")");
  }
  PcaFit fit;
  PcaModel& m = fit.model;
  m.mean = points.colwise().mean();
  const RowMatrix centered = points.rowwise() - m.mean;
  const Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);
  const double total = cov.trace();
  const double scale = std::max(1.0, m.mean.squaredNorm());
  if (!(total > 1e-24 * scale)) {
    throw InputError("PCA input has zero variance");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  // Eigen returns ascending eigenvalues.
  m.components.resize(target_dim, dim);
  m.explained_variance.resize(target_dim);
  for (int r = 0; r < target_dim; ++r) {
    const Eigen::Index col = dim - 1 - r;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    m.components.row(r) = v.transpose();
    m.explained_variance(r) = std::max(0.0, solver.eigenvalues()(col));
  }
  m.explained_variance_ratio = m.explained_variance / total;

  const double cum = m.cumulative_explained_variance();
  if (cum < min_explained) {
    std::ostringstream os;
    os << target_dim << " components explain " << cum
       << " of the variance, below the " << min_explained << " target";
    fit.warnings.push_back(os.str());
  }
  return fit;
}

nlohmann::json summary_json(const PcaFit& fit) {
  std::vector<double> ratio(fit.model.explained_variance_ratio.data(),
                            fit.model.explained_variance_ratio.data() +
                                fit.model.explained_variance_ratio.size());
  return {{"target_dim", fit.model.components.rows()},
          {"input_dim", fit.model.components.cols()},
          {"explained_variance_ratio", ratio},
          {"cumulative_explained_variance", fit.model.cumulative_explained_variance()},
          {"warnings", fit.warnings}};
}

}  // namespace oodsim
