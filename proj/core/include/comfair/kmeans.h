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

#ifndef COMFAIR_KMEANS_H_
#define COMFAIR_KMEANS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/types.h"

namespace comfair {

struct KMeansParams {
  int32_t num_clusters = 5;
  int32_t max_iterations = 300;
  // Stop once no centroid moves farther than this (Euclidean).
  double tolerance = 1e-8;
};

struct CommunityAssignment {
  std::vector<int32_t> assignment;  // per node, in [0, K)
  Matrix centroids;                 // K x d, mean of each community
  double wcss = 0.0;
  int32_t iterations_run = 0;
  // Objective after each Lloyd iteration; non-increasing.
  std::vector<double> wcss_history;

  int32_t num_clusters() const { return static_cast<int32_t>(centroids.rows()); }
};

// Lloyd's algorithm from k-means++ seeding, with squared Euclidean distance.
// Ties in the assignment step go to the lowest cluster id. A cluster left
// empty is reseeded with the point farthest from its current centroid
// (taken from a cluster that keeps at least one member). KTooLarge when
// K > n, ConfigInvalid when K < 1 or tolerance < 0.
absl::StatusOr<CommunityAssignment> KMeans(const Matrix& points,
                                           const KMeansParams& params,
                                           uint64_t seed);

// Within-cluster sum of squared distances to each cluster's mean.
absl::StatusOr<double> Wcss(const Matrix& points,
                            const std::vector<int32_t>& assignment);

// Per-cluster member lists, ordered by node id.
std::vector<std::vector<int32_t>> ClusterMembers(
    const std::vector<int32_t>& assignment, int32_t num_clusters);

// CSV "node_id,community_id" with header.
std::string AssignmentToCsv(const std::vector<int32_t>& assignment);
absl::StatusOr<std::vector<int32_t>> AssignmentFromCsv(const std::string& csv,
                                                       int32_t num_nodes);

}  // namespace comfair

#endif  // COMFAIR_KMEANS_H_
