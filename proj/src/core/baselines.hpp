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

#pragma once

#include <vector>

#include "rng.hpp"
#include "scoring.hpp"
#include "trajectory.hpp"

namespace panocam {

// Reference trajectory generators. A saliency-driven baseline needs no code
// here: run the solver on a saliency score map.

inline constexpr double kDefaultCenterSigmaDeg = 10.0;
inline constexpr double kDefaultSoftmaxTemperature = 1.0;

struct CenterWalk {
  /// Lattice-snapped steps.
  DiscreteTrajectory snapped;
  /// The walk before snapping; step 0 is (0, 0).
  std::vector<Direction> raw;
};

/// Random walk from (0, 0): every step adds independent N(0, sigma^2)
/// offsets to the previous raw latitude and longitude, clamps latitude to
/// [-90, 90], wraps longitude, and is snapped to the nearest lattice cell.
/// Sample k uses the stream derive_seed(seed, k).
std::vector<CenterWalk> center_walks(const GlimpseGrid& grid, int K, double sigma, RngSeed seed);

std::vector<DiscreteTrajectory> center_baseline(const GlimpseGrid& grid, int K, double sigma,
                                                RngSeed seed);

/// One static trajectory at latitude 0 for every lattice longitude.
/// Throws kInvalidArgument when the lattice has no latitude-0 row.
std::vector<DiscreteTrajectory> eye_level_baseline(const GlimpseGrid& grid);

/// At every step, independently draws one cell with probability
/// softmax(score / temperature). No motion constraint. Sample k uses the
/// stream derive_seed(seed, k).
std::vector<DiscreteTrajectory> no_stitch_sample(const ScoreMap& scores, int K,
                                                 double temperature, RngSeed seed);

}  // namespace panocam
