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
#include <thread>

#include <gtest/gtest.h>

#include "annotation.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "test_util.hpp"

namespace panocam {
namespace {

// A 10 s, 30 fps video directory; only frame 0 exists on disk.
void make_video(const std::filesystem::path& dir, int frames = 300, double fps = 30.0) {
  std::filesystem::create_directories(dir);
  FrameMetadata meta;
  meta.fps = fps;
  meta.width = 64;
  meta.height = 32;
  meta.frame_count = frames;
  write_png(dir / frame_file_name(meta, 0), Image(64, 32, 3, 0.5f));
  write_frame_metadata(dir, meta);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

class AnnotationStoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    make_video(videos_ / "clip1");
    make_video(videos_ / "clip2", 150, 15.0);
    std::filesystem::create_directories(videos_ / "not_a_video");
    store_ = std::make_unique<AnnotationStore>(out_.path());
    store_->scan_videos(videos_.path());
  }

  std::vector<AnnotationSample> sweep(double t0, double t1, double rate, double phi0 = 0.0,
                                      double speed = 3.0) {
    std::vector<AnnotationSample> out;
    for (int i = 0;; ++i) {
      const double t = t0 + i / rate;
      if (t > t1 + 1e-12) break;
      out.push_back({t, 10.0, phi0 + speed * t});
    }
    return out;
  }

  panocam_test::TempDir videos_, out_;
  std::unique_ptr<AnnotationStore> store_;
};

TEST_F(AnnotationStoreTest, ScansVideoDirectories) {
  const auto vids = store_->videos();
  ASSERT_EQ(vids.size(), 2u);
  EXPECT_EQ(vids[0].video_id, "clip1");
  EXPECT_DOUBLE_EQ(vids[0].duration(), 10.0);
  EXPECT_EQ(code_of([&] { store_->video("nope"); }), ErrorCode::kNotFound);
}

TEST_F(AnnotationStoreTest, CreateSessionRules) {
  const auto id = store_->create_session("clip1", "ann", -30.0, 1);
  const auto s = store_->session(id);
  EXPECT_EQ(s.center_longitude, 330.0);
  EXPECT_TRUE(s.open);
  EXPECT_NE(store_->create_session("clip1", "ann", 0.0, 2), id);
  EXPECT_EQ(code_of([&] { store_->create_session("clip1", "ann", 0.0, 1); }), ErrorCode::kConflict);
  EXPECT_EQ(code_of([&] { store_->create_session("clip1", "ann", 0.0, 3); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { store_->create_session("zzz", "ann", 0.0, 1); }), ErrorCode::kNotFound);
  EXPECT_EQ(code_of([&] { store_->create_session("clip1", "../evil", 0.0, 1); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { store_->session("session-999"); }), ErrorCode::kNotFound);
}

TEST_F(AnnotationStoreTest, RecordsBatches) {
  const auto id = store_->create_session("clip1", "ann", 0.0, 1);
  const auto samples = sweep(0.0, 10.0 - 1.0 / 30, 30.0);
  ASSERT_EQ(samples.size(), 300u);
  std::size_t n = 0;
  for (std::size_t i = 0; i < samples.size(); i += 30) {
    n = store_->record_samples(id, {samples.begin() + i, samples.begin() + i + 30});
  }
  EXPECT_EQ(n, 300u);
  EXPECT_EQ(store_->session(id).sample_count, 300u);
}

TEST_F(AnnotationStoreTest, RejectsBadBatchesWhole) {
  const auto id = store_->create_session("clip1", "ann", 0.0, 1);
  store_->record_samples(id, {{0.0, 0, 0}, {0.5, 0, 0}});
  EXPECT_EQ(code_of([&] { store_->record_samples(id, {{1.0, 0, 0}, {1.0, 0, 1}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { store_->record_samples(id, {{0.4, 0, 0}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { store_->record_samples(id, {{2.0, 0, 0}, {3.0, 95, 0}}); }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { store_->record_samples(id, {{std::nan(""), 0, 0}}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(store_->session(id).sample_count, 2u);
}

TEST_F(AnnotationStoreTest, FinalizeAtFrameTimesIsExact) {
  const auto id = store_->create_session("clip1", "ann", 0.0, 1);
  std::vector<AnnotationSample> samples;
  for (int i = 0; i < 300; ++i) samples.push_back({(i + 0.5) / 30.0, 5.0, 350.0 + 0.1 * i});
  store_->record_samples(id, samples);
  const auto set = store_->finalize(id, 30.0);
  ASSERT_EQ(set.size(), 1u);
  const auto traj = set.continuous(0);
  ASSERT_EQ(traj.size(), 300);
  for (int i = 0; i < 300; ++i) {
    EXPECT_LT(angular_distance(traj.directions[i], Direction(5.0, 350.0 + 0.1 * i)), 1e-9);
  }
  EXPECT_FALSE(store_->session(id).open);
  EXPECT_EQ(code_of([&] { store_->record_samples(id, {{20.0, 0, 0}}); }), ErrorCode::kState);

  const auto path = annotation_output_path(out_.path(), "clip1", "ann", 1);
  ASSERT_TRUE(std::filesystem::exists(path));
  const auto loaded = load_trajectory_set(path);
  EXPECT_EQ(loaded.method, "humanedit");
  EXPECT_EQ(loaded.extra.at("annotator_id"), "ann");
  EXPECT_EQ(loaded.extra.at("pass"), 1);
  // The saved file replays through the metrics with perfect self-similarity.
  const auto c = loaded.continuous(0);
  for (const auto& s : similarity_settings()) {
    EXPECT_NEAR(pool(c, {c}, s.measure, s.pooling), 1.0, 1e-12);
  }
  // A new store refuses to overwrite the finished pass.
  AnnotationStore fresh(out_.path());
  fresh.scan_videos(videos_.path());
  EXPECT_EQ(code_of([&] { fresh.create_session("clip1", "ann", 0.0, 1); }), ErrorCode::kConflict);
}

TEST_F(AnnotationStoreTest, FinalizeInterpolatesOnShorterArc) {
  const auto id = store_->create_session("clip2", "ann", 0.0, 2);
  // 60 Hz samples spinning through the seam; output at 15 fps.
  std::vector<AnnotationSample> samples;
  for (int i = 0; i <= 600; ++i) samples.push_back({i / 60.0, 0.0, 300.0 + 12.0 * i / 60.0});
  store_->record_samples(id, samples);
  const auto traj = store_->finalize(id, 15.0).continuous(0);
  ASSERT_EQ(traj.size(), 150);
  for (int i = 0; i < traj.size(); ++i) {
    const double t = (i + 0.5) / 15.0;
    const int k = static_cast<int>(std::floor(t * 60.0));
    const Direction lo(0.0, samples[k].phi), hi(0.0, samples[k + 1].phi);
    const double span = angular_distance(lo, hi);
    EXPECT_NEAR(angular_distance(lo, traj.directions[i]) + angular_distance(traj.directions[i], hi),
                span, 1e-9);
  }
}

TEST_F(AnnotationStoreTest, FinalizeNeedsCoverage) {
  const auto a = store_->create_session("clip1", "a", 0.0, 1);
  store_->record_samples(a, {{0.2, 0, 0}});
  EXPECT_EQ(code_of([&] { store_->finalize(a, 30.0); }), ErrorCode::kIncomplete);
  const auto b = store_->create_session("clip1", "b", 0.0, 1);
  store_->record_samples(b, {{1.5, 0, 0}, {9.5, 0, 0}});
  EXPECT_EQ(code_of([&] { store_->finalize(b, 30.0); }), ErrorCode::kIncomplete);
  const auto c = store_->create_session("clip1", "c", 0.0, 1);
  store_->record_samples(c, {{0.5, 0, 0}, {8.5, 0, 0}});
  EXPECT_EQ(code_of([&] { store_->finalize(c, 30.0); }), ErrorCode::kIncomplete);
  EXPECT_TRUE(store_->session(c).open);
  store_->record_samples(c, {{9.2, 0, 0}});
  EXPECT_NO_THROW(store_->finalize(c, 30.0));
}

TEST_F(AnnotationStoreTest, ConcurrentSessions) {
  std::vector<std::string> ids;
  for (int k = 0; k < 4; ++k) ids.push_back(store_->create_session("clip1", "w" + std::to_string(k), 0, 1));
  std::vector<std::thread> threads;
  for (int k = 0; k < 4; ++k) {
    threads.emplace_back([&, k] {
      for (int i = 0; i < 300; ++i) store_->record_samples(ids[k], {{i / 30.0, 0.0, 1.0 * k}});
    });
  }
  for (auto& t : threads) t.join();
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(store_->session(ids[k]).sample_count, 300u);
    const auto traj = store_->finalize(ids[k], 1.0).continuous(0);
    EXPECT_EQ(traj.directions[3], Direction(0.0, 1.0 * k));
  }
}

}  // namespace
}  // namespace panocam
