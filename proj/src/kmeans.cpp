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

#include "oodsim/kmeans.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "oodsim/error.hpp"
#include "oodsim/kernels/assign.hpp"
#include "oodsim/rng.hpp"

namespace oodsim {
namespace {

void assign(const RowMatrix& points, const RowMatrix& centroids, std::vector<int>& labels,
            std::vector<double>& dist, bool parallel) {
  if (parallel) {
    kernels::assign_nearest(points, centroids, labels, dist);
  } else {
    kernels::assign_nearest_serial(points, centroids, labels, dist);
  }
}

// Fixed left-to-right order keeps the total reproducible.
double ordered_sum(const std::vector<double>& values) {
  double s = 0.0;
  for (const double v : values) s += v;
  return s;
}

}  // namespace

RowMatrix kmeans_plus_plus(const RowMatrix& points, int k, std::uint64_t seed, bool parallel) {
  const Eigen::Index n = points.rows();
  SplitMix64 rng(seed);
  RowMatrix centers(k, points.cols());
  std::vector<double> min_dist(static_cast<std::size_t>(n),
                               std::numeric_limits<double>::infinity());
  auto idx = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      const double total = ordered_sum(min_dist);
      if (total > 0.0) {
        const double r = rng.uniform01() * total;
        double acc = 0.0;
        idx = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
          acc += min_dist[static_cast<std::size_t>(i)];
          if (r < acc) {
            idx = i;
            break;
          }
        }
        // Rounding can leave r just past the last positive weight.
        while (min_dist[static_cast<std::size_t>(idx)] == 0.0 && idx > 0) --idx;
      } else {
        idx = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      }
    }
    centers.row(c) = points.row(idx);
    if (parallel) {
      kernels::update_min_distance(points, centers.row(c).data(), min_dist);
    } else {
      kernels::update_min_distance_serial(points, centers.row(c).data(), min_dist);
    }
  }
  return centers;
}

KMeansResult kmeans_fit(const RowMatrix& points, int k, std::uint64_t seed,
                        const KMeansOptions& options) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) {
    throw InputError("k-means needs 1 <= K <= N (K=" + std::to_string(k) +
                     ", N=" + std::to_string(n) + ")");
  }
  KMeansResult res;
  res.centroids = kmeans_plus_plus(points, k, seed, options.parallel);
  res.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  assign(points, res.centroids, res.labels, dist, options.parallel);
  res.inertia_history.push_back(ordered_sum(dist));

  std::vector<double> counts(static_cast<std::size_t>(k));
  for (int it = 0; it < options.max_iter; ++it) {
    RowMatrix next = RowMatrix::Zero(k, points.cols());
    std::fill(counts.begin(), counts.end(), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = res.labels[static_cast<std::size_t>(i)];
      next.row(c) += points.row(i);
      counts[static_cast<std::size_t>(c)] += 1.0;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        next.row(c) /= counts[static_cast<std::size_t>(c)];
        continue;
      }
      // Empty cluster: move it onto the currently worst-served point.
      Eigen::Index far = 0;
      for (Eigen::Index i = 1; i < n; ++i) {
        if (dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(far)]) far = i;
      }
      next.row(c) = points.row(far);
      dist[static_cast<std::size_t>(far)] = 0.0;
    }

    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      shift = std::max(shift, (next.row(c) - res.centroids.row(c)).norm());
    }
    res.centroids = std::move(next);
    assign(points, res.centroids, res.labels, dist, options.parallel);
    res.inertia_history.push_back(ordered_sum(dist));
    res.iterations = it + 1;
    assert(res.inertia_history.back() <= res.inertia_history[res.inertia_history.size() - 2]);
    if (shift < options.tol) {
      res.converged = true;
      break;
    }
  }
  res.inertia = res.inertia_history.back();
  return res;
}

ElbowResult elbow_from_curve(std::span<const int> ks, std::span<const double> inertias) {
  if (ks.size() != inertias.size() || ks.size() < 2) {
    throw InputError("elbow needs an inertia curve with at least two points");
  }
  if (!(inertias.back() < inertias.front())) {
    throw InputError("inertia does not decrease from K=" + std::to_string(ks.front()) +
                     " to K=" + std::to_string(ks.back()) + "; k-means output is suspect");
  }
  ElbowResult out;
  out.ks.assign(ks.begin(), ks.end());
  out.inertias.assign(inertias.begin(), inertias.end());

  double lo = inertias.front();
  double hi = inertias.front();
  for (const double v : inertias) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double k_span = static_cast<double>(ks.back() - ks.front());
  const auto nx = [&](std::size_t i) { return static_cast<double>(ks[i] - ks.front()) / k_span; };
  const auto ny = [&](std::size_t i) { return (inertias[i] - lo) / (hi - lo); };

  const std::size_t last = ks.size() - 1;
  const double x0 = nx(0), y0 = ny(0), x1 = nx(last), y1 = ny(last);
  const double len = std::hypot(x1 - x0, y1 - y0);
  double best = -1.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double d = std::abs((y1 - y0) * nx(i) - (x1 - x0) * ny(i) + x1 * y0 - y1 * x0) / len;
    out.chord_distances.push_back(d);
    if (d > best) {
      best = d;
      out.best_k = ks[i];
    }
  }
  return out;
}

ElbowResult elbow_select(const RowMatrix& points, int k_min, int k_max, std::uint64_t seed,
                         const KMeansOptions& options) {
  if (!(k_min >= 1 && k_min < k_max && k_max < points.rows())) {
    throw InputError("elbow search needs 1 <= k_min < k_max < N (k_min=" +
                     std::to_string(k_min) + ", k_max=" + std::to_string(k_max) +
                     ", N=" + std::to_string(points.rows()) + ")");
  }
  std::vector<int> ks;
  std::vector<double> inertias;
  for (int k = k_min; k <= k_max; ++k) {
    ks.push_back(k);
    inertias.push_back(kmeans_fit(points, k, seed, options).inertia);
  }
  return elbow_from_curve(ks, inertias);
}

nlohmann::json to_json(const ElbowResult& elbow) {
  return {{"best_k", elbow.best_k},
          {"ks", elbow.ks},
          {"inertias", elbow.inertias},
          {"chord_distances", elbow.chord_distances}};
}

}  // namespace oodsim
