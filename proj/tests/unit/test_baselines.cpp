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

#include <cmath>

#include <gtest/gtest.h>

#include "baselines.hpp"
#include "error.hpp"
#include "solver.hpp"

namespace panocam {
namespace {

bool same_paths(const std::vector<DiscreteTrajectory>& a, const std::vector<DiscreteTrajectory>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].steps.size() != b[k].steps.size()) return false;
    for (std::size_t t = 0; t < a[k].steps.size(); ++t) {
      if (!(a[k].steps[t].dir == b[k].steps[t].dir)) return false;
    }
  }
  return true;
}

TEST(CenterBaseline, StartsAtOriginAndIsSeeded) {
  const auto grid = build_grid(60.0);
  const auto a = center_baseline(grid, 20, 10.0, RngSeed{1});
  ASSERT_EQ(a.size(), 20u);
  for (const auto& tr : a) {
    ASSERT_EQ(tr.steps.size(), 12u);
    EXPECT_EQ(tr.steps[0].dir, Direction(0, 0));
  }
  EXPECT_TRUE(same_paths(a, center_baseline(grid, 20, 10.0, RngSeed{1})));
  EXPECT_FALSE(same_paths(a, center_baseline(grid, 20, 10.0, RngSeed{2})));
}

TEST(CenterBaseline, TinySigmaStaysPut) {
  const auto grid = build_grid(60.0);
  for (const auto& tr : center_baseline(grid, 5, 1e-9, RngSeed{3})) {
    for (const auto& s : tr.steps) EXPECT_EQ(s.dir, Direction(0, 0));
  }
  EXPECT_THROW(center_baseline(grid, 5, 0.0, RngSeed{3}), Error);
}

TEST(CenterBaseline, FirstStepMeanNearZero) {
  const auto grid = build_grid(500.0);  // T = 100
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto walks = center_walks(grid, 1, 10.0, RngSeed{seed});
    ASSERT_EQ(walks[0].raw.size(), 100u);
    sum += walks[0].raw[1].theta();
  }
  EXPECT_NEAR(sum / 1000.0, 0.0, 1.0);
}

TEST(CenterBaseline, RawStepsBoundedAndSnappedToNearest) {
  const auto grid = build_grid(200.0);
  for (const auto& w : center_walks(grid, 50, 10.0, RngSeed{4})) {
    for (std::size_t t = 1; t < w.raw.size(); ++t) {
      const auto d = wrapped_delta(w.raw[t - 1], w.raw[t]);
      EXPECT_LE(d.dtheta, 60.0);
      EXPECT_LE(d.dphi, 60.0);
    }
    for (std::size_t t = 0; t < w.raw.size(); ++t) {
      const auto& s = w.snapped.steps[t];
      EXPECT_EQ(s.lat_index, grid.nearest_latitude(w.raw[t].theta()));
      EXPECT_EQ(s.lon_index, grid.nearest_longitude(w.raw[t].phi()));
    }
  }
}

TEST(EyeLevelBaseline, EighteenStaticTrajectories) {
  for (double duration : {5.0, 60.0}) {
    const auto grid = build_grid(duration);
    const auto trs = eye_level_baseline(grid);
    ASSERT_EQ(trs.size(), 18u);
    for (std::size_t k = 0; k < trs.size(); ++k) {
      EXPECT_EQ(static_cast<int>(trs[k].steps.size()), grid.num_steps());
      for (const auto& s : trs[k].steps) EXPECT_EQ(s.dir, Direction(0, 20.0 * k));
    }
  }
  const GlimpseGrid no_equator({-10, 10}, default_longitudes(), 5.0, 2);
  try {
    eye_level_baseline(no_equator);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(NoStitch, ColdTemperaturePicksTheHotCell) {
  const auto grid = build_grid(20.0);
  ScoreMap m(grid);
  for (int t = 0; t < grid.num_steps(); ++t) m.set(t, 3, t + 2, 1.0);
  for (const auto& tr : no_stitch_sample(m, 10, 1e-3, RngSeed{5})) {
    for (int t = 0; t < grid.num_steps(); ++t) {
      EXPECT_EQ(tr.steps[t].lat_index, 3);
      EXPECT_EQ(tr.steps[t].lon_index, t + 2);
    }
    EXPECT_DOUBLE_EQ(tr.aggregate_score, 4.0);
  }
}

TEST(NoStitch, UniformScoresGiveUniformPicks) {
  const auto grid = build_grid(5.0);
  const ScoreMap m(grid, std::vector<double>(grid.size(), 0.3));
  const int draws = 198 * 200;
  std::vector<int> counts(198, 0);
  for (const auto& tr : no_stitch_sample(m, draws, 1.0, RngSeed{6})) {
    ++counts[tr.steps[0].lat_index * 18 + tr.steps[0].lon_index];
  }
  const double p = 1.0 / 198, mean = draws * p, sd = std::sqrt(draws * p * (1 - p));
  // Bonferroni-free 5-sigma band keeps the check deterministic-safe.
  for (int c : counts) EXPECT_NEAR(c, mean, 5 * sd);
}

TEST(NoStitch, SoftmaxFrequencies) {
  // Two-cell lattice: P(cell 1) = e^1 / (e^0 + e^1).
  const GlimpseGrid grid({0}, {0, 90}, 5.0, 1);
  const ScoreMap m(grid, std::vector<double>{0.0, 1.0});
  const int draws = 20000;
  int hits = 0;
  for (const auto& tr : no_stitch_sample(m, draws, 1.0, RngSeed{7})) hits += tr.steps[0].lon_index;
  const double p = std::exp(1.0) / (1.0 + std::exp(1.0));
  EXPECT_NEAR(hits / double(draws), p, 5 * std::sqrt(p * (1 - p) / draws));
}

TEST(NoStitch, Seeded) {
  const auto grid = build_grid(30.0);
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i % 17) / 16.0;
  const ScoreMap m(grid, s);
  EXPECT_TRUE(same_paths(no_stitch_sample(m, 20, 1.0, RngSeed{8}),
                         no_stitch_sample(m, 20, 1.0, RngSeed{8})));
  EXPECT_FALSE(same_paths(no_stitch_sample(m, 20, 1.0, RngSeed{8}),
                          no_stitch_sample(m, 20, 1.0, RngSeed{9})));
  EXPECT_THROW(no_stitch_sample(m, 20, 0.0, RngSeed{8}), Error);
}

}  // namespace
}  // namespace panocam
