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

#ifndef OODSIM_KMEANS_HPP_
#define OODSIM_KMEANS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "oodsim/matrix.hpp"

namespace oodsim {

struct KMeansOptions {
  int max_iter = 300;
  // Stop once no centroid moves farther than this (Euclidean).
  double tol = 1e-6;
  // Use the OpenMP kernels; the serial references give identical results.
  bool parallel = true;
};

struct KMeansResult {
  RowMatrix centroids;       // k x dim
  std::vector<int> labels;   // nearest centroid per point, ties to lowest index
  double inertia = 0.0;      // sum of squared distances to assigned centroids
  // Inertia after every assignment step, starting with the seeding.
  std::vector<double> inertia_history;
  int iterations = 0;
  bool converged = false;
};

// k-means++ seeding: first centre uniform, each next one drawn with
// probability proportional to the squared distance to the nearest chosen
// centre (uniform over all points if every distance is zero).
RowMatrix kmeans_plus_plus(const RowMatrix& points, int k, std::uint64_t seed,
                           bool parallel = true);

// Lloyd iterations from k-means++ seeds. Clusters that become empty are
// re-seeded with the point farthest from its centroid. Deterministic for
// fixed (points, k, seed). Throws InputError unless 1 <= k <= N.
KMeansResult kmeans_fit(const RowMatrix& points, int k, std::uint64_t seed,
                        const KMeansOptions& options = {});

struct ElbowResult {
  int best_k = 0;
  std::vector<int> ks;
  std::vector<double> inertias;
  // Perpendicular distance of each normalized point to the end-point chord.
  std::vector<double> chord_distances;
};

// Picks the knee of an inertia curve: both axes are min-max normalized to
// [0, 1] and the point farthest from the chord through the first and last
// points wins (ties to the smaller k). Throws InputError if the curve does
// not decrease from its first to its last point.
ElbowResult elbow_from_curve(std::span<const int> ks, std::span<const double> inertias);

// Runs kmeans_fit for every k in [k_min, k_max] and applies elbow_from_curve.
// Requires 1 <= k_min < k_max < N.
ElbowResult elbow_select(const RowMatrix& points, int k_min, int k_max, std::uint64_t seed,
                         const KMeansOptions& options = {});

nlohmann::json to_json(const ElbowResult& elbow);

}  // namespace oodsim

#endif  // OODSIM_KMEANS_HPP_
