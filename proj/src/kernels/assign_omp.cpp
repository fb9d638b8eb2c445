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

#include <omp.h>

#include "oodsim/kernels/assign.hpp"

namespace oodsim::kernels {

void assign_nearest(const RowMatrix& points, const RowMatrix& centroids,
                    std::span<int> labels, std::span<double> dist) {
  const Eigen::Index n = points.rows();
  const Eigen::Index k = centroids.rows();
  const Eigen::Index dim = points.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* x = points.row(i).data();
    int best = 0;
    double best_d = squared_distance(x, centroids.row(0).data(), dim);
    for (Eigen::Index c = 1; c < k; ++c) {
      const double d = squared_distance(x, centroids.row(c).data(), dim);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[i] = best;
    dist[i] = best_d;
  }
}

void update_min_distance(const RowMatrix& points, const double* centroid,
                         std::span<double> min_dist) {
  const Eigen::Index n = points.rows();
  const Eigen::Index dim = points.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = squared_distance(points.row(i).data(), centroid, dim);
    if (d < min_dist[i]) min_dist[i] = d;
  }
}

}  // namespace oodsim::kernels
