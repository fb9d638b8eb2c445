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

#ifndef OODSIM_KERNELS_ASSIGN_HPP_
#define OODSIM_KERNELS_ASSIGN_HPP_

#include <cstddef>
#include <span>

#include "oodsim/matrix.hpp"

// Data-parallel k-means kernels. Each kernel has an OpenMP version and a
// serial reference with identical per-element arithmetic; results are equal
// bit for bit regardless of thread count because no kernel reduces across
// points.
namespace oodsim::kernels {

// Sum of squared differences, accumulated in dimension order.
inline double squared_distance(const double* a, const double* b, Eigen::Index dim) {
  double s = 0.0;
  for (Eigen::Index d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

// labels[i] = argmin_c |x_i - c|^2 (ties to the lowest index); dist[i] is
// that minimum.
void assign_nearest(const RowMatrix& points, const RowMatrix& centroids,
                    std::span<int> labels, std::span<double> dist);
void assign_nearest_serial(const RowMatrix& points, const RowMatrix& centroids,
                           std::span<int> labels, std::span<double> dist);

// min_dist[i] = min(min_dist[i], |x_i - c|^2), for k-means++ seeding.
void update_min_distance(const RowMatrix& points, const double* centroid,
                         std::span<double> min_dist);
void update_min_distance_serial(const RowMatrix& points, const double* centroid,
                                std::span<double> min_dist);

}  // namespace oodsim::kernels

#endif  // OODSIM_KERNELS_ASSIGN_HPP_
