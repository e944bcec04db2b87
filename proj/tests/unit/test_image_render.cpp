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
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "error.hpp"
#include "image.hpp"
#include "render.hpp"
#include "test_util.hpp"

namespace panocam {
namespace {

// Value (theta + 90) / 180 sampled at every pixel center.
Image latitude_pattern(int w, int h) {
  Image img(w, h, 1);
  for (int y = 0; y < h; ++y) {
    const double theta = 90.0 - (y + 0.5) * 180.0 / h;
    for (int x = 0; x < w; ++x) img.at(x, y, 0) = static_cast<float>((theta + 90.0) / 180.0);
  }
  return img;
}

Image noise_image(int w, int h, int channels, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Image img(w, h, channels);
  for (float& v : img.data()) v = u(gen);
  return img;
}

TEST(Png, EightBitRoundTripQuantizes) {
  panocam_test::TempDir dir;
  const Image img = noise_image(7, 5, 3, 1);
  write_png(dir / "a.png", img);
  const Image back = read_png(dir / "a.png");
  ASSERT_EQ(back.width(), 7);
  ASSERT_EQ(back.height(), 5);
  ASSERT_EQ(back.channels(), 3);
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    EXPECT_NEAR(back.data()[i], img.data()[i], 0.5 / 255 + 1e-6);
  }
}

TEST(Png, SixteenBitGray) {
  panocam_test::TempDir dir;
  const Image img = noise_image(4, 3, 1, 2);
  write_png(dir / "g.png", img, 16);
  const Image back = read_png(dir / "g.png");
  ASSERT_EQ(back.channels(), 1);
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    EXPECT_NEAR(back.data()[i], img.data()[i], 0.5 / 65535 + 1e-7);
  }
}

TEST(Png, MissingAndCorruptFiles) {
  panocam_test::TempDir dir;
  try {
    read_png(dir / "nope.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  { std::ofstream(dir / "bad.png") << "not a png"; }
  EXPECT_THROW(read_png(dir / "bad.png"), Error);
}

TEST(FrameDirectory, WriterAndReader) {
  panocam_test::TempDir dir;
  FrameWriter writer(dir.path(), 24.0);
  for (int i = 0; i < 3; ++i) writer.write(i, Image(8, 4, 3, i / 4.0f));
  writer.finish();
  const DirectoryFrames frames(dir.path());
  EXPECT_EQ(frames.size(), 3);
  EXPECT_DOUBLE_EQ(frames.fps(), 24.0);
  EXPECT_EQ(frames.metadata().width, 8);
  // 8-bit PNG: 0.5 is stored as 128.
  EXPECT_NEAR(frames.frame(2).at(3, 2, 1), 128.0f / 255.0f, 1e-6);
  EXPECT_EQ(frame_file_name(frames.metadata(), 12), "frame_000012.png");
  EXPECT_THROW(frames.frame(3), Error);
}

TEST(RenderFrame, ConstantSourceGivesConstantOutput) {
  const Image src(256, 128, 3, 0.375f);
  const CameraModel cam(65.5, 4.0 / 3.0, 64, 48);
  for (const Direction& p : {Direction(0, 0), Direction(75, 359.9), Direction(-90, 10)}) {
    const Image out = render_frame(src, cam, p);
    EXPECT_EQ(out.width(), 64);
    EXPECT_EQ(out.height(), 48);
    EXPECT_EQ(out.channels(), 3);
    for (float v : out.data()) EXPECT_FLOAT_EQ(v, 0.375f);
  }
}

TEST(RenderFrame, LatitudePatternAtCenter) {
  const Image src = latitude_pattern(1024, 512);
  // Odd raster so a pixel center lies exactly on the principal axis.
  const CameraModel cam(65.5, 4.0 / 3.0, 321, 241);
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> th(-75, 75), ph(0, 360);
  for (int i = 0; i < 50; ++i) {
    const Direction p(th(gen), ph(gen));
    const Image out = render_frame(src, cam, p);
    EXPECT_NEAR(out.at(160, 120, 0), (p.theta() + 90.0) / 180.0, 1e-4);
  }
}

TEST(RenderFrame, SeamMatchesRotatedSource) {
  // Shifting the source by half its width is a 180 degree yaw; a camera
  // straddling the seam must see what the shifted source shows mid-image.
  const Image src = noise_image(512, 256, 1, 4);
  Image shifted(512, 256, 1);
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 512; ++x) shifted.at((x + 256) % 512, y, 0) = src.at(x, y, 0);
  }
  const CameraModel cam(65.5, 4.0 / 3.0, 80, 60);
  for (double phi : {0.0, 0.3, 359.7, 10.0}) {
    const Image a = render_frame(src, cam, {5.0, phi});
    const Image b = render_frame(shifted, cam, {5.0, phi + 180.0});
    for (std::size_t i = 0; i < a.data().size(); ++i) {
      ASSERT_NEAR(a.data()[i], b.data()[i], 1e-5) << "phi " << phi << " sample " << i;
    }
  }
}

TEST(RenderFrame, ThreadCountDoesNotChangeOutput) {
  const Image src = noise_image(256, 128, 3, 5);
  const CameraModel cam(65.5, 4.0 / 3.0, 64, 48);
  const Image one = render_frame(src, cam, {30, 200}, 1);
  EXPECT_EQ(one, render_frame(src, cam, {30, 200}, 3));
  EXPECT_EQ(one, render_frame(src, cam, {30, 200}, 0));
}

TEST(RenderFrame, LongitudeOffsetInvariant) {
  const Image src = noise_image(256, 128, 1, 6);
  const CameraModel cam(65.5, 4.0 / 3.0, 32, 24);
  EXPECT_EQ(render_frame(src, cam, {10, 40}), render_frame(src, cam, {10, 400}));
}

TEST(RenderFrame, EmptySourceThrows) {
  EXPECT_THROW(render_frame(Image(), CameraModel(), {0, 0}), Error);
}

TEST(RenderVideo, CountsAndComposition) {
  std::vector<Image> frames;
  for (int i = 0; i < 150; ++i) frames.push_back(noise_image(64, 32, 1, 100 + i % 3));
  const InMemoryFrames src(frames, 30.0);
  const CameraModel cam(65.5, 4.0 / 3.0, 16, 12);
  ContinuousTrajectory traj{30.0, std::vector<Direction>(150, Direction(10, 20))};
  RenderJob job{&src, traj, cam, 0, -1, 1};
  std::vector<Image> seq;
  render_video(job, [&](int idx, const Image& f) {
    EXPECT_EQ(idx, static_cast<int>(seq.size()));
    seq.push_back(f);
  });
  ASSERT_EQ(seq.size(), 150u);
  EXPECT_EQ(seq[7], render_frame(frames[7], cam, {10, 20}));

  job.threads = 4;
  std::vector<Image> par;
  render_video(job, [&](int, const Image& f) { par.push_back(f); });
  EXPECT_EQ(seq, par);
}

TEST(RenderVideo, ShortTrajectoryOrFpsMismatch) {
  const InMemoryFrames src(std::vector<Image>(10, Image(16, 8, 1)), 30.0);
  RenderJob job{&src, ContinuousTrajectory{30.0, std::vector<Direction>(5)}, CameraModel(), 0, 8, 1};
  try {
    render_video(job, [](int, const Image&) {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncomplete);
  }
  job.frame_count = 5;
  job.trajectory.fps = 25.0;
  EXPECT_THROW(render_video(job, [](int, const Image&) {}), Error);
}

}  // namespace
}  // namespace panocam
