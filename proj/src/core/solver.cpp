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

#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "error.hpp"

namespace panocam {
namespace {

/// Lexicographic preference key; smaller is preferred.
using PreferenceKey = std::tuple<double, double, double, double>;

PreferenceKey predecessor_key(const Direction& cell, const Direction& pred) {
  const AngleDelta d = wrapped_delta(cell, pred);
  return {d.dtheta + d.dphi, std::fabs(pred.theta()), pred.phi(), pred.theta()};
}

PreferenceKey terminal_key(const Direction& cell) {
  return {0.0, std::fabs(cell.theta()), cell.phi(), cell.theta()};
}

}  // namespace

bool is_feasible_move(const Direction& a, const Direction& b, double epsilon) {
  const AngleDelta d = wrapped_delta(a, b);
  return d.dtheta <= epsilon && d.dphi <= epsilon;
}

std::vector<DiscreteTrajectory> solve_all_terminals(const ScoreMap& scores, double epsilon) {
  if (!(epsilon >= 0.0)) fail(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  const GlimpseGrid& grid = scores.grid();
  const int T = grid.num_steps();
  const int cells = grid.cells_per_step();
  const int nlon = grid.num_lon();

  std::vector<Direction> dirs(cells);
  for (int c = 0; c < cells; ++c) dirs[c] = grid.direction(c / nlon, c % nlon);

  // Feasible predecessors of each cell, in tie-break preference order. A
  // cell is always its own predecessor since epsilon >= 0.
  std::vector<std::vector<int>> preds(cells);
  for (int c = 0; c < cells; ++c) {
    for (int p = 0; p < cells; ++p) {
      if (is_feasible_move(dirs[p], dirs[c], epsilon)) preds[c].push_back(p);
    }
    std::sort(preds[c].begin(), preds[c].end(), [&](int a, int b) {
      return predecessor_key(dirs[c], dirs[a]) < predecessor_key(dirs[c], dirs[b]);
    });
  }

  const auto score_at = [&](int t, int c) {
    return scores.values()[static_cast<std::size_t>(t) * cells + c];
  };

  std::vector<double> accum(cells);
  for (int c = 0; c < cells; ++c) accum[c] = score_at(0, c);
  std::vector<std::vector<int>> back(T, std::vector<int>(cells, -1));
  std::vector<double> next(cells);
  for (int t = 1; t < T; ++t) {
    for (int c = 0; c < cells; ++c) {
      const auto& candidates = preds[c];
      int best = candidates.front();
      for (std::size_t k = 1; k < candidates.size(); ++k) {
        // Strict '>' keeps the earliest (most preferred) of equal maxima.
        if (accum[candidates[k]] > accum[best]) best = candidates[k];
      }
      back[t][c] = best;
      next[c] = accum[best] + score_at(t, c);
    }
    accum.swap(next);
  }

  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (accum[a] != accum[b]) return accum[a] > accum[b];
    return terminal_key(dirs[a]) < terminal_key(dirs[b]);
  });

  std::vector<DiscreteTrajectory> out;
  out.reserve(cells);
  for (int terminal : order) {
    DiscreteTrajectory traj;
    traj.aggregate_score = accum[terminal];
    traj.steps.resize(T);
    int c = terminal;
    for (int t = T - 1; t >= 0; --t) {
      traj.steps[t] = grid.glimpse(t, c / nlon, c % nlon);
      if (t > 0) c = back[t][c];
    }
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<DiscreteTrajectory> solve_topk(const ScoreMap& scores, double epsilon, int K) {
  if (K < 1) fail(ErrorCode::kInvalidArgument, "K must be >= 1");
  auto all = solve_all_terminals(scores, epsilon);
  if (static_cast<std::size_t>(K) > all.size()) {
    warn("requested K=" + std::to_string(K) + " trajectories but only " +
         std::to_string(all.size()) + " terminal cells exist; returning all");
    return all;
  }
  all.resize(K);
  return all;
}

double aggregate_score(const ScoreMap& scores, const DiscreteTrajectory& traj) {
  double sum = 0.0;
  for (const auto& s : traj.steps) sum += scores.at(s.t, s.lat_index, s.lon_index);
  return sum;
}

std::size_t count_distinct_paths(const std::vector<DiscreteTrajectory>& trajs) {
  std::set<std::vector<std::pair<int, int>>> seen;
  for (const auto& tr : trajs) {
    std::vector<std::pair<int, int>> cells;
    for (const auto& s : tr.steps) cells.emplace_back(s.lat_index, s.lon_index);
    seen.insert(std::move(cells));
  }
  return seen.size();
}

namespace {

Direction lerp_direction(const Direction& a, const Direction& b, double alpha) {
  if (alpha == 0.0) return a;
  const double theta = a.theta() + alpha * (b.theta() - a.theta());
  const double phi = a.phi() + alpha * shortest_longitude_step(a.phi(), b.phi());
  return Direction(std::clamp(theta, -90.0, 90.0), phi);
}

}  // namespace

ContinuousTrajectory interpolate_keypoints(const std::vector<Direction>& keypoints, double fps,
                                           double interval) {
  if (keypoints.empty()) fail(ErrorCode::kInvalidArgument, "cannot interpolate an empty trajectory");
  if (!(fps > 0.0)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
  if (!(interval > 0.0)) fail(ErrorCode::kInvalidArgument, "interval must be positive");

  const auto n_keys = static_cast<double>(keypoints.size());
  const int frames = static_cast<int>(std::lround(n_keys * interval * fps));
  ContinuousTrajectory out;
  out.fps = fps;
  out.directions.reserve(frames);
  for (int i = 0; i < frames; ++i) {
    // Position in keypoint units; keypoint k sits at time (k + 0.5) * interval.
    const double u = out.frame_time(i) / interval - 0.5;
    if (u <= 0.0) {
      out.directions.push_back(keypoints.front());
    } else if (u >= n_keys - 1.0) {
      out.directions.push_back(keypoints.back());
    } else {
      const auto k = static_cast<std::size_t>(std::floor(u));
      out.directions.push_back(lerp_direction(keypoints[k], keypoints[k + 1], u - k));
    }
  }
  return out;
}

ContinuousTrajectory interpolate(const DiscreteTrajectory& traj, double fps, double interval) {
  std::vector<Direction> keys;
  keys.reserve(traj.steps.size());
  for (const auto& s : traj.steps) keys.push_back(s.dir);
  return interpolate_keypoints(keys, fps, interval);
}

ContinuousTrajectory resample_timed(const std::vector<double>& timestamps,
                                    const std::vector<Direction>& directions, double fps,
                                    int frame_count) {
  if (timestamps.size() != directions.size() || timestamps.empty()) {
    fail(ErrorCode::kInvalidArgument, "need matching, non-empty timestamps and directions");
  }
  if (!(fps > 0.0)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      fail(ErrorCode::kInvalidArgument, "timestamps must be strictly increasing");
    }
  }
  ContinuousTrajectory out;
  out.fps = fps;
  out.directions.reserve(std::max(frame_count, 0));
  for (int i = 0; i < frame_count; ++i) {
    const double tau = out.frame_time(i);
    if (tau <= timestamps.front()) {
      out.directions.push_back(directions.front());
    } else if (tau >= timestamps.back()) {
      out.directions.push_back(directions.back());
    } else {
      const auto it = std::upper_bound(timestamps.begin(), timestamps.end(), tau);
      const auto k = static_cast<std::size_t>(it - timestamps.begin()) - 1;
      const double alpha = (tau - timestamps[k]) / (timestamps[k + 1] - timestamps[k]);
      out.directions.push_back(lerp_direction(directions[k], directions[k + 1], alpha));
    }
  }
  return out;
}

ContinuousTrajectory resample(const ContinuousTrajectory& traj, double fps) {
  if (traj.directions.empty()) fail(ErrorCode::kInvalidArgument, "cannot resample an empty trajectory");
  if (fps == traj.fps) return traj;
  std::vector<double> times(traj.directions.size());
  for (int i = 0; i < traj.size(); ++i) times[i] = traj.frame_time(i);
  const int frames = static_cast<int>(std::lround(traj.size() / traj.fps * fps));
  return resample_timed(times, traj.directions, fps, frames);
}

}  // namespace panocam
