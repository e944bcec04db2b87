/******************************************************************************
 * Copyright 2026 The Panocam Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "baselines.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "solver.hpp"

namespace panocam {

std::vector<CenterWalk> center_walks(const GlimpseGrid& grid, int K, double sigma, RngSeed seed) {
  if (!(sigma > 0.0)) fail(ErrorCode::kInvalidArgument, "center baseline sigma must be positive");
  if (K < 1) fail(ErrorCode::kInvalidArgument, "K must be >= 1");
  std::vector<CenterWalk> walks;
  walks.reserve(K);
  for (int k = 0; k < K; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    CenterWalk walk;
    double theta = 0.0;
    double phi = 0.0;
    for (int t = 0; t < grid.num_steps(); ++t) {
      if (t > 0) {
        theta = std::clamp(theta + sigma * rng.normal(), -90.0, 90.0);
        phi = normalize_longitude(phi + sigma * rng.normal());
      }
      walk.raw.emplace_back(theta, phi);
      walk.snapped.steps.push_back(
          grid.glimpse(t, grid.nearest_latitude(theta), grid.nearest_longitude(phi)));
    }
    walks.push_back(std::move(walk));
  }
  return walks;
}

std::vector<DiscreteTrajectory> center_baseline(const GlimpseGrid& grid, int K, double sigma,
                                                RngSeed seed) {
  std::vector<DiscreteTrajectory> out;
  for (auto& w : center_walks(grid, K, sigma, seed)) out.push_back(std::move(w.snapped));
  return out;
}

std::vector<DiscreteTrajectory> eye_level_baseline(const GlimpseGrid& grid) {
  const int eye = grid.find_latitude(0.0);
  if (eye < 0) fail(ErrorCode::kInvalidArgument, "glimpse lattice has no latitude-0 row");
  std::vector<DiscreteTrajectory> out;
  for (int b = 0; b < grid.num_lon(); ++b) {
    DiscreteTrajectory traj;
    for (int t = 0; t < grid.num_steps(); ++t) traj.steps.push_back(grid.glimpse(t, eye, b));
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<DiscreteTrajectory> no_stitch_sample(const ScoreMap& scores, int K,
                                                 double temperature, RngSeed seed) {
  if (!(temperature > 0.0)) fail(ErrorCode::kInvalidArgument, "softmax temperature must be positive");
  if (K < 1) fail(ErrorCode::kInvalidArgument, "K must be >= 1");
  const GlimpseGrid& grid = scores.grid();
  const int cells = grid.cells_per_step();

  // Per-step cumulative softmax weights, shifted by the max for stability.
  std::vector<std::vector<double>> cdf(grid.num_steps(), std::vector<double>(cells));
  for (int t = 0; t < grid.num_steps(); ++t) {
    const double* s = scores.values().data() + static_cast<std::size_t>(t) * cells;
    const double top = *std::max_element(s, s + cells);
    double running = 0.0;
    for (int c = 0; c < cells; ++c) {
      running += std::exp((s[c] - top) / temperature);
      cdf[t][c] = running;
    }
  }

  std::vector<DiscreteTrajectory> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    DiscreteTrajectory traj;
    for (int t = 0; t < grid.num_steps(); ++t) {
      const double u = rng.uniform() * cdf[t].back();
      const auto it = std::upper_bound(cdf[t].begin(), cdf[t].end(), u);
      const int c = std::min(static_cast<int>(it - cdf[t].begin()), cells - 1);
      traj.steps.push_back(grid.glimpse(t, c / grid.num_lon(), c % grid.num_lon()));
    }
    traj.aggregate_score = aggregate_score(scores, traj);
    out.push_back(std::move(traj));
  }
  return out;
}

}  // namespace panocam
