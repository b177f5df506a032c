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

#include "comfair/sbm.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/random.h"
#include "comfair/status.h"
#include "json.hpp"

namespace comfair {
namespace {

bool InUnit(double p) { return p >= 0.0 && p <= 1.0; }

absl::Status Invalid(absl::string_view detail) {
  return ConfigError("ConfigInvalid", detail);
}

struct Acceptance {
  double same = 1.0;
  double cross = 1.0;
};

// Solves for thinning probabilities so that, over candidate pairs of which a
// fraction `same_fraction` share a label, the accepted same-label fraction is
// `target` in expectation. One of the two probabilities is always 1.
Acceptance SolveAcceptance(double same_fraction, double target) {
  const double q = same_fraction;
  if (q <= 0.0 || q >= 1.0) return {};
  if (target >= q) {
    if (target >= 1.0) return {1.0, 0.0};
    return {1.0, q * (1.0 - target) / (target * (1.0 - q))};
  }
  if (target <= 0.0) return {0.0, 1.0};
  return {target * (1.0 - q) / ((1.0 - target) * q), 1.0};
}

}  // namespace

absl::Status ValidateSbmConfig(const SbmConfig& config) {
  if (config.block_sizes.empty()) return Invalid("block_sizes is empty");
  for (int32_t size : config.block_sizes) {
    if (size < 2) return Invalid("every block needs at least 2 nodes");
  }
  if (!InUnit(config.p_in) || !InUnit(config.p_out)) {
    return Invalid("p_in and p_out must lie in [0, 1]");
  }
  if (!(config.sens_alignment >= 0.5 && config.sens_alignment <= 1.0)) {
    return Invalid("sens_alignment must lie in [0.5, 1]");
  }
  if (!config.label_homophily.empty() &&
      config.label_homophily.size() != config.block_sizes.size()) {
    return Invalid("label_homophily needs one entry per block");
  }
  for (double h : config.label_homophily) {
    if (!InUnit(h)) return Invalid("label_homophily must lie in [0, 1]");
  }
  if (config.num_classes < 2) return Invalid("num_classes must be >= 2");
  if (!config.label_prior.empty()) {
    if (config.num_classes != 2) {
      return Invalid("label_prior is only defined for binary labels");
    }
    if (config.label_prior.size() != config.block_sizes.size()) {
      return Invalid("label_prior needs one entry per block");
    }
    for (double p : config.label_prior) {
      if (!InUnit(p)) return Invalid("label_prior must lie in [0, 1]");
    }
  }
  if (config.feature_dim < 1) return Invalid("feature_dim must be >= 1");
  if (!(config.feature_signal >= 0.0) || !std::isfinite(config.feature_signal)) {
    return Invalid("feature_signal must be finite and >= 0");
  }
  int64_t total = 0;
  for (int32_t size : config.block_sizes) total += size;
  if (total > (int64_t{1} << 24)) return Invalid("graph too large");
  return absl::OkStatus();
}

std::vector<int32_t> SbmBlockOf(const SbmConfig& config) {
  std::vector<int32_t> block_of;
  for (size_t b = 0; b < config.block_sizes.size(); ++b) {
    block_of.insert(block_of.end(), config.block_sizes[b],
                    static_cast<int32_t>(b));
  }
  return block_of;
}

absl::StatusOr<Graph> GenerateSbm(const SbmConfig& config, uint64_t seed) {
  COMFAIR_RETURN_IF_ERROR(ValidateSbmConfig(config));
  const std::vector<int32_t> block_of = SbmBlockOf(config);
  const int32_t n = static_cast<int32_t>(block_of.size());
  const size_t num_blocks = config.block_sizes.size();
  Rng rng = MakeRng(seed, /*stream=*/0x53424du);

  std::vector<uint8_t> sensitive(n);
  std::vector<int32_t> labels(n);
  std::uniform_int_distribution<int32_t> uniform_label(0,
                                                       config.num_classes - 1);
  for (NodeId i = 0; i < n; ++i) {
    const int32_t b = block_of[i];
    const uint8_t majority = static_cast<uint8_t>(b % 2);
    sensitive[i] = UniformUnit(rng) < config.sens_alignment ? majority
                                                            : 1 - majority;
    if (!config.label_prior.empty()) {
      labels[i] = UniformUnit(rng) < config.label_prior[b] ? 1 : 0;
    } else {
      labels[i] = uniform_label(rng);
    }
  }

  std::vector<Acceptance> acceptance(num_blocks);
  if (!config.label_homophily.empty()) {
    std::vector<std::vector<int64_t>> class_counts(
        num_blocks, std::vector<int64_t>(config.num_classes, 0));
    for (NodeId i = 0; i < n; ++i) ++class_counts[block_of[i]][labels[i]];
    for (size_t b = 0; b < num_blocks; ++b) {
      const double m = config.block_sizes[b];
      double same_pairs = 0.0;
      for (int64_t c : class_counts[b]) same_pairs += 0.5 * c * (c - 1.0);
      const double q = same_pairs / (0.5 * m * (m - 1.0));
      acceptance[b] = SolveAcceptance(q, config.label_homophily[b]);
    }
  }

  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const bool same_block = block_of[u] == block_of[v];
      const double p = same_block ? config.p_in : config.p_out;
      if (!(UniformUnit(rng) < p)) continue;
      if (same_block && !config.label_homophily.empty()) {
        const Acceptance& a = acceptance[block_of[u]];
        const double keep = labels[u] == labels[v] ? a.same : a.cross;
        if (keep < 1.0 && !(UniformUnit(rng) < keep)) continue;
      }
      edges.push_back({u, v});
    }
  }

  Matrix features(n, config.feature_dim);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double half = 0.5 * config.feature_signal;
  for (NodeId i = 0; i < n; ++i) {
    for (int32_t j = 0; j < config.feature_dim; ++j) {
      const double mean =
          (j % config.num_classes == labels[i]) ? half : -half;
      features(i, j) = mean + noise(rng);
    }
  }
  return Graph::Create(n, edges, std::move(features), std::move(labels),
                       std::move(sensitive), config.num_classes);
}

absl::StatusOr<SbmConfig> ParseSbmConfig(absl::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text.begin(), json_text.end(),
                                           nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return Invalid("SBM config must be a JSON object");
  }
  SbmConfig config;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "block_sizes") {
        config.block_sizes = value.get<std::vector<int32_t>>();
      } else if (key == "p_in") {
        config.p_in = value.get<double>();
      } else if (key == "p_out") {
        config.p_out = value.get<double>();
      } else if (key == "sens_alignment") {
        config.sens_alignment = value.get<double>();
      } else if (key == "label_homophily") {
        config.label_homophily = value.get<std::vector<double>>();
      } else if (key == "label_prior") {
        config.label_prior = value.get<std::vector<double>>();
      } else if (key == "num_classes") {
        config.num_classes = value.get<int32_t>();
      } else if (key == "feature_dim") {
        config.feature_dim = value.get<int32_t>();
      } else if (key == "feature_signal") {
        config.feature_signal = value.get<double>();
      } else {
        return Invalid(absl::StrCat("unknown SBM key \"", key, "\""));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return Invalid(e.what());
  }
  COMFAIR_RETURN_IF_ERROR(ValidateSbmConfig(config));
  return config;
}

std::string SbmConfigToJson(const SbmConfig& config) {
  nlohmann::json j;
  j["block_sizes"] = config.block_sizes;
  j["p_in"] = config.p_in;
  j["p_out"] = config.p_out;
  j["sens_alignment"] = config.sens_alignment;
  j["label_homophily"] = config.label_homophily;
  j["label_prior"] = config.label_prior;
  j["num_classes"] = config.num_classes;
  j["feature_dim"] = config.feature_dim;
  j["feature_signal"] = config.feature_signal;
  return j.dump();
}

}  // namespace comfair
