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

/**
 * @file solver.hpp
 * @brief Camera trajectory selection over the glimpse lattice.
 *
 * A trajectory visits one cell per time step. Consecutive cells may differ
 * by at most epsilon degrees in latitude and, independently, at most epsilon
 * degrees in wrapped longitude. Among feasible trajectories we maximize the
 * sum of capture-worthiness scores (the shortest path under edge weight
 * -score), one forward pass of dynamic programming:
 *
 *   best[0][c] = score[0][c]
 *   best[t][c] = score[t][c] + max over feasible predecessors p of best[t-1][p]
 *
 * Back-pointers give the optimal trajectory ending at every terminal cell;
 * the top K of those (by aggregate score) are returned.
 *
 * Ties are broken deterministically. Among equally good predecessors we keep
 * the one closest to the current cell by |dtheta| + |dphi|, then the one with
 * smaller |theta|, then smaller phi, then smaller theta. Terminal cells with
 * equal aggregate are ordered by |theta|, phi, theta.
 */

#pragma once

#include <vector>

#include "scoring.hpp"
#include "trajectory.hpp"

namespace panocam {

inline constexpr double kDefaultEpsilonDeg = 30.0;
inline constexpr int kDefaultTopK = 20;

/// True when a -> b is an allowed camera move for threshold epsilon.
bool is_feasible_move(const Direction& a, const Direction& b, double epsilon);

/// Optimal trajectory ending at every terminal cell, sorted by non-increasing
/// aggregate score (then by the terminal tie-break order). Returns
/// cells_per_step() trajectories.
std::vector<DiscreteTrajectory> solve_all_terminals(const ScoreMap& scores,
                                                    double epsilon = kDefaultEpsilonDeg);

/// The first K of solve_all_terminals. When K exceeds the number of terminal
/// cells, all are returned and a warning is issued.
std::vector<DiscreteTrajectory> solve_topk(const ScoreMap& scores,
                                           double epsilon = kDefaultEpsilonDeg,
                                           int K = kDefaultTopK);

/// Sum of the map's scores along `traj`, accumulated in time order.
double aggregate_score(const ScoreMap& scores, const DiscreteTrajectory& traj);

/// Number of distinct cell sequences among `trajs`.
std::size_t count_distinct_paths(const std::vector<DiscreteTrajectory>& trajs);

/// Per-frame directions for keypoints placed at the centers of consecutive
/// `interval`-second steps. Frame i is sampled at (i + 0.5) / fps; latitude
/// is interpolated linearly, longitude linearly along the shorter arc;
/// before the first and after the last keypoint the direction is held.
/// Produces round(keypoints.size() * interval * fps) frames.
ContinuousTrajectory interpolate_keypoints(const std::vector<Direction>& keypoints,
                                           double fps, double interval);

ContinuousTrajectory interpolate(const DiscreteTrajectory& traj, double fps, double interval);

/// Linear, wrap-aware interpolation of timestamped directions onto frame
/// centers (i + 0.5) / fps for i in [0, frame_count). Timestamps must be
/// strictly increasing; outside their range the end values are held.
ContinuousTrajectory resample_timed(const std::vector<double>& timestamps,
                                    const std::vector<Direction>& directions, double fps,
                                    int frame_count);

/// Resamples a continuous trajectory to another frame rate, preserving its
/// duration (frame_count = round(size / fps * new_fps)).
ContinuousTrajectory resample(const ContinuousTrajectory& traj, double fps);

}  // namespace panocam
