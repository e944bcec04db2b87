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

#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "error.hpp"
#include "glimpse_grid.hpp"
#include "render.hpp"

namespace panocam {
namespace {

TEST(BuildGrid, DefaultLattice) {
  const auto g = build_grid(5.0);
  EXPECT_EQ(g.num_steps(), 1);
  EXPECT_EQ(g.num_lat(), 11);
  EXPECT_EQ(g.num_lon(), 18);
  EXPECT_EQ(g.size(), 198u);
  EXPECT_EQ(g.latitudes().front(), -75.0);
  EXPECT_EQ(g.latitudes().back(), 75.0);
  EXPECT_EQ(g.longitudes()[1], 20.0);
  EXPECT_EQ(g.longitudes().back(), 340.0);
}

TEST(BuildGrid, SixtySeconds) {
  const auto g = build_grid(60.0);
  EXPECT_EQ(g.num_steps(), 12);
  EXPECT_EQ(g.size(), 2376u);
}

TEST(BuildGrid, DropsPartialTail) {
  EXPECT_EQ(build_grid(14.99).num_steps(), 2);
  EXPECT_DOUBLE_EQ(build_grid(14.99).step_end(1), 10.0);
}

TEST(BuildGrid, TooShort) {
  try {
    build_grid(4.9, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(GlimpseGrid, SortsAndRejectsBadAxes) {
  const GlimpseGrid g({10, -10, 0}, {90, 0}, 5.0, 1);
  EXPECT_EQ(g.latitudes(), (std::vector<double>{-10, 0, 10}));
  EXPECT_EQ(g.longitudes(), (std::vector<double>{0, 90}));
  EXPECT_THROW(GlimpseGrid({0, 0}, {0}, 5.0, 1), Error);
  EXPECT_THROW(GlimpseGrid({100}, {0}, 5.0, 1), Error);
  EXPECT_THROW(GlimpseGrid({0}, {0}, 0.0, 1), Error);
  EXPECT_THROW(GlimpseGrid({0}, {0}, 5.0, 0), Error);
}

TEST(GlimpseGrid, EnumerationOrderRoundTrips) {
  const auto g = build_grid(20.0);
  std::set<std::tuple<int, double, double>> seen;
  std::size_t expected = 0;
  for (int t = 0; t < g.num_steps(); ++t) {
    for (int i = 0; i < g.num_lat(); ++i) {
      for (int j = 0; j < g.num_lon(); ++j) {
        ASSERT_EQ(g.index(t, i, j), expected);
        const auto s = g.glimpse(expected);
        EXPECT_EQ(s.t, t);
        EXPECT_EQ(s.lat_index, i);
        EXPECT_EQ(s.lon_index, j);
        EXPECT_EQ(s.dir.theta(), g.latitudes()[i]);
        EXPECT_EQ(s.dir.phi(), g.longitudes()[j]);
        seen.emplace(t, s.dir.theta(), s.dir.phi());
        ++expected;
      }
    }
  }
  EXPECT_EQ(seen.size(), g.size());
}

TEST(GlimpseGrid, NearestCells) {
  const auto g = build_grid(5.0);
  EXPECT_EQ(g.latitudes()[g.nearest_latitude(3)], 0.0);
  EXPECT_EQ(g.latitudes()[g.nearest_latitude(5)], 0.0);  // tie -> smaller
  EXPECT_EQ(g.latitudes()[g.nearest_latitude(89)], 75.0);
  EXPECT_EQ(g.longitudes()[g.nearest_longitude(355)], 0.0);
  EXPECT_EQ(g.longitudes()[g.nearest_longitude(349)], 340.0);
  EXPECT_EQ(g.find_latitude(45), g.nearest_latitude(45));
  EXPECT_EQ(g.find_latitude(44), -1);
}

TEST(FramesForStep, CentersInsideSpan) {
  const auto g = build_grid(10.0);
  auto span = frames_for_step(g, 0, 30.0);
  EXPECT_EQ(span.first, 0);
  EXPECT_EQ(span.count, 150);
  span = frames_for_step(g, 1, 30.0);
  EXPECT_EQ(span.first, 150);
  EXPECT_EQ(span.count, 150);
  span = frames_for_step(g, 1, 1.0);
  EXPECT_EQ(span.first, 5);
  EXPECT_EQ(span.count, 5);
}

Image constant_panorama(float v) { return Image(64, 32, 3, v); }

TEST(GlimpseClip, CountAndConstantColor) {
  std::vector<Image> frames(300, constant_panorama(0.25f));
  const InMemoryFrames src(frames, 30.0);
  const auto g = build_grid(10.0);
  const CameraModel cam(65.5, 4.0 / 3.0, 16, 12);
  const auto clip = glimpse_clip(src, g, g.glimpse(1, 5, 9), cam);
  ASSERT_EQ(clip.size(), 150u);
  for (const auto& f : clip) {
    EXPECT_EQ(f.width(), 16);
    for (float v : f.data()) EXPECT_FLOAT_EQ(v, 0.25f);
  }
}

TEST(GlimpseClip, MarkerLandsAtCenter) {
  // Panorama with a bright block around (0, 180).
  Image pano(360, 180, 1, 0.0f);
  for (int y = 85; y < 95; ++y) {
    for (int x = 175; x < 185; ++x) pano.at(x, y, 0) = 1.0f;
  }
  const InMemoryFrames src(std::vector<Image>(5, pano), 1.0);
  const auto g = build_grid(5.0);
  const CameraModel cam(65.5, 4.0 / 3.0, 64, 48);
  const int lat0 = g.find_latitude(0), lon180 = g.find_longitude(180);
  const auto clip = glimpse_clip(src, g, g.glimpse(0, lat0, lon180), cam);
  ASSERT_EQ(clip.size(), 5u);
  EXPECT_FLOAT_EQ(clip[0].at(32, 24, 0), 1.0f);
  EXPECT_FLOAT_EQ(clip[0].at(0, 0, 0), 0.0f);
}

TEST(GlimpseClip, MissingFramesIsIncomplete) {
  const InMemoryFrames src(std::vector<Image>(100, constant_panorama(0.0f)), 30.0);
  const auto g = build_grid(5.0);
  try {
    glimpse_clip(src, g, g.glimpse(0, 0, 0), CameraModel(65.5, 4.0 / 3.0, 8, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncomplete);
  }
}

}  // namespace
}  // namespace panocam
