// Copyright 2026 The ComFair Authors
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

#include "comfair/kmeans.h"

#include <algorithm>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "comfair/random.h"
#include "comfair/status.h"
#include "comfair/text_io.h"

namespace comfair {
namespace {

double SquaredDistance(const Matrix& a, Eigen::Index i, const Matrix& b,
                       Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

Matrix SeedPlusPlus(const Matrix& points, int32_t k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Matrix centroids(k, points.cols());
  std::vector<uint8_t> chosen(n, 0);
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  Eigen::Index pick = first(rng);
  centroids.row(0) = points.row(pick);
  chosen[pick] = 1;
  std::vector<double> nearest(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    nearest[i] = SquaredDistance(points, i, centroids, 0);
  }
  for (int32_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : nearest) total += d;
    if (total > 0) {
      const double target = UniformUnit(rng) * total;
      double running = 0.0;
      pick = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += nearest[i];
        if (nearest[i] > 0 && running > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        // Rounding ran off the end; take the last point with positive mass.
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (nearest[i] > 0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a centroid; fall back to an unused index.
      pick = 0;
      while (chosen[pick]) ++pick;
    }
    chosen[pick] = 1;
    centroids.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], SquaredDistance(points, i, centroids, c));
    }
  }
  return centroids;
}

}  // namespace

absl::StatusOr<CommunityAssignment> KMeans(const Matrix& points,
                                           const KMeansParams& params,
                                           uint64_t seed) {
  const Eigen::Index n = points.rows();
  const int32_t k = params.num_clusters;
  if (k < 1) return ConfigError("ConfigInvalid", "K must be >= 1");
  if (k > n) {
    return ConfigError("KTooLarge",
                       absl::StrCat("K = ", k, " exceeds ", n, " points"));
  }
  if (!(params.tolerance >= 0)) {
    return ConfigError("ConfigInvalid", "tolerance must be >= 0");
  }
  if (params.max_iterations < 1) {
    return ConfigError("ConfigInvalid", "max_iterations must be >= 1");
  }
  if (!points.allFinite()) {
    return DataError("NonFiniteInput", "points contain NaN or Inf");
  }

  Rng rng = MakeRng(seed, /*stream=*/0x4b4du);
  CommunityAssignment result;
  result.centroids = SeedPlusPlus(points, k, rng);
  result.assignment.assign(n, 0);
  std::vector<double> distance(n);
  std::vector<int64_t> sizes(k);

  for (int32_t iter = 0; iter < params.max_iterations; ++iter) {
    std::fill(sizes.begin(), sizes.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int32_t best_c = 0;
      for (int32_t c = 0; c < k; ++c) {
        const double dist = SquaredDistance(points, i, result.centroids, c);
        if (dist < best) {
          best = dist;
          best_c = c;
        }
      }
      result.assignment[i] = best_c;
      distance[i] = best;
      ++sizes[best_c];
    }

    for (int32_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (sizes[result.assignment[i]] < 2) continue;
        if (far < 0 || distance[i] > distance[far]) far = i;
      }
      --sizes[result.assignment[far]];
      result.assignment[far] = c;
      distance[far] = 0.0;
      sizes[c] = 1;
    }

    Matrix updated = Matrix::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      updated.row(result.assignment[i]) += points.row(i);
    }
    for (int32_t c = 0; c < k; ++c) {
      updated.row(c) /= static_cast<double>(sizes[c]);
    }
    double shift = 0.0;
    for (int32_t c = 0; c < k; ++c) {
      shift = std::max(shift,
                       (updated.row(c) - result.centroids.row(c)).norm());
    }
    result.centroids = std::move(updated);

    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      objective +=
          SquaredDistance(points, i, result.centroids, result.assignment[i]);
    }
    result.wcss_history.push_back(objective);
    result.iterations_run = iter + 1;
    if (shift <= params.tolerance) break;
  }
  result.wcss = result.wcss_history.back();
  return result;
}

absl::StatusOr<double> Wcss(const Matrix& points,
                            const std::vector<int32_t>& assignment) {
  if (static_cast<Eigen::Index>(assignment.size()) != points.rows()) {
    return DataError("DimensionMismatch", "assignment length != point count");
  }
  int32_t k = 0;
  for (int32_t c : assignment) {
    if (c < 0) return DataError("CommunityOutOfRange", "negative community");
    k = std::max(k, c + 1);
  }
  Matrix means = Matrix::Zero(k, points.cols());
  std::vector<int64_t> sizes(k, 0);
  for (size_t i = 0; i < assignment.size(); ++i) {
    means.row(assignment[i]) += points.row(i);
    ++sizes[assignment[i]];
  }
  for (int32_t c = 0; c < k; ++c) {
    if (sizes[c] > 0) means.row(c) /= static_cast<double>(sizes[c]);
  }
  double total = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    total += (points.row(i) - means.row(assignment[i])).squaredNorm();
  }
  return total;
}

std::vector<std::vector<int32_t>> ClusterMembers(
    const std::vector<int32_t>& assignment, int32_t num_clusters) {
  std::vector<std::vector<int32_t>> members(num_clusters);
  for (size_t i = 0; i < assignment.size(); ++i) {
    members[assignment[i]].push_back(static_cast<int32_t>(i));
  }
  return members;
}

std::string AssignmentToCsv(const std::vector<int32_t>& assignment) {
  std::string out = "node_id,community_id\n";
  for (size_t i = 0; i < assignment.size(); ++i) {
    absl::StrAppend(&out, i, ",", assignment[i], "\n");
  }
  return out;
}

absl::StatusOr<std::vector<int32_t>> AssignmentFromCsv(const std::string& csv,
                                                       int32_t num_nodes) {
  std::vector<int32_t> assignment(num_nodes, -1);
  const auto lines = SplitLines(csv);
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    if (lines[line_no].empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(lines[line_no], ',');
    int64_t node = 0;
    int64_t community = 0;
    if (fields.size() != 2 || !ParseInt64(fields[0], &node) ||
        !ParseInt64(fields[1], &community) || node < 0 ||
        node >= num_nodes || community < 0) {
      return DataError("MalformedLine",
                       absl::StrCat("communities line ", line_no + 1));
    }
    assignment[node] = static_cast<int32_t>(community);
  }
  for (int32_t c : assignment) {
    if (c < 0) return DataError("DimensionMismatch", "community rows missing");
  }
  return assignment;
}

}  // namespace comfair
