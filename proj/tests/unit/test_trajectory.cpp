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

#include <gtest/gtest.h>

#include "error.hpp"
#include "json_io.hpp"
#include "solver.hpp"
#include "test_util.hpp"
#include "trajectory.hpp"

namespace panocam {
namespace {

TEST(TrajectoryFile, SingleDiscreteUsesTopLevelEntries) {
  const auto grid = build_grid(10.0);
  DiscreteTrajectory tr;
  tr.steps = {grid.glimpse(0, 5, 1), grid.glimpse(1, 5, 2)};
  tr.aggregate_score = 1.5;
  const auto set = TrajectorySet::from_discrete("vid", "autocam", 5.0, {tr});
  const auto j = trajectory_set_to_json(set);
  EXPECT_EQ(j.at("kind"), "discrete");
  EXPECT_EQ(j.at("interval_seconds"), 5.0);
  ASSERT_TRUE(j.contains("entries"));
  EXPECT_EQ(j.at("entries")[1].at("t"), 1);
  EXPECT_EQ(j.at("entries")[1].at("phi"), 40.0);
  EXPECT_EQ(j.at("aggregate_score"), 1.5);

  const auto back = trajectory_set_from_json(nlohmann::json::parse(j.dump()), "x");
  EXPECT_EQ(back.video_id, "vid");
  EXPECT_EQ(back.method, "autocam");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back.trajectories[0][1], Direction(0, 40));
  EXPECT_EQ(back.aggregate_scores[0], 1.5);
}

TEST(TrajectoryFile, MultiContinuousRoundTripWithExtras) {
  panocam_test::TempDir dir;
  ContinuousTrajectory a{2.0, {{0, 10}, {5, 20}, {10, 30}}};
  ContinuousTrajectory b{2.0, {{-5, 350}, {-5, 355}, {-5, 0}}};
  auto set = TrajectorySet::from_continuous("v", "humanedit", {a, b});
  set.extra["annotator_id"] = "ann1";
  save_trajectory_set(dir / "t.json", set);
  const auto back = load_trajectory_set(dir / "t.json");
  EXPECT_EQ(back.kind, TrajectorySet::Kind::kContinuous);
  EXPECT_EQ(back.fps, 2.0);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.continuous(1).directions, b.directions);
  EXPECT_EQ(back.extra.at("annotator_id"), "ann1");
  EXPECT_EQ(dump_json(trajectory_set_to_json(back)), dump_json(trajectory_set_to_json(set)));
}

TEST(TrajectoryFile, NormalizesSignedLongitudes) {
  const auto j = nlohmann::json::parse(
      R"({"video_id":"v","kind":"continuous","fps":1,
          "entries":[{"frame":0,"theta":0,"phi":-170},{"frame":1,"theta":0,"phi":179}]})");
  const auto set = trajectory_set_from_json(j, "x");
  EXPECT_DOUBLE_EQ(set.trajectories[0][0].phi(), 190.0);
}

TEST(TrajectoryFile, SchemaErrors) {
  auto bad = [](const char* text) {
    try {
      trajectory_set_from_json(nlohmann::json::parse(text), "x");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"weird","entries":[]})"), ErrorCode::kSchema);
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"discrete","entries":[{"t":0,"theta":0,"phi":0}]})"),
            ErrorCode::kSchema);
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"continuous","fps":1,"entries":[]})"), ErrorCode::kSchema);
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"continuous","fps":1,
                    "entries":[{"frame":1,"theta":0,"phi":0}]})"),
            ErrorCode::kSchema);
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"continuous","fps":1,
                    "entries":[{"frame":0,"theta":100,"phi":0}]})"),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(bad(R"({"video_id":"v","kind":"continuous","fps":1,"trajectories":[]})"),
            ErrorCode::kSchema);
}

TEST(TrajectorySet, DiscreteIsNotContinuous) {
  const auto grid = build_grid(5.0);
  DiscreteTrajectory tr;
  tr.steps = {grid.glimpse(0)};
  const auto set = TrajectorySet::from_discrete("v", "m", 5.0, {tr});
  try {
    set.continuous(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kState);
  }
}

TEST(JsonIo, ErrorsAndAtomicWrite) {
  panocam_test::TempDir dir;
  EXPECT_THROW(read_json_file(dir / "missing.json"), Error);
  try {
    parse_json("{oops", "text");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  write_json_file_atomic(dir / "a.json", {{"k", 1}});
  EXPECT_EQ(read_json_file(dir / "a.json").at("k"), 1);
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    EXPECT_EQ(entry.path().filename(), "a.json");
  }
}

}  // namespace
}  // namespace panocam
