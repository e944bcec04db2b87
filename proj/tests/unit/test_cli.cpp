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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "image.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace {

using Json = nlohmann::json;

struct Result {
  int exit_code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(PANOCAM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

// 10 s of 2 fps equirect frames with a moving bright patch.
void make_frames(const std::filesystem::path& dir) {
  panocam::FrameWriter writer(dir, 2.0);
  for (int i = 0; i < 20; ++i) {
    panocam::Image img(72, 36, 3, 0.2f);
    for (int y = 14; y < 20; ++y) {
      for (int x = 0; x < 8; ++x) img.at((x + 3 * i) % 72, y, i % 3) = 0.9f;
    }
    writer.write(i, img);
  }
  writer.finish();
}

void write_features(const std::filesystem::path& path, const std::string& label, int n,
                    int videos, double shift, unsigned seed) {
  std::ofstream out(path);
  out << "dim=3\n";
  unsigned x = seed;
  auto next = [&] {
    x = x * 1664525u + 1013904223u;
    return (x >> 8) / double(1u << 24) - 0.5;
  };
  for (int i = 0; i < n; ++i) {
    out << label << i << ",vid" << i % videos << "," << label;
    for (int d = 0; d < 3; ++d) out << "," << next() + shift;
    out << "\n";
  }
}

class CliTest : public ::testing::Test {
 protected:
  panocam_test::TempDir dir_;
  std::filesystem::path p(const std::string& name) const { return dir_ / name; }
};

TEST_F(CliTest, GridDescribesLattice) {
  const auto r = run("grid --duration 60");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["total_glimpses"], 2376);
  EXPECT_EQ(run("grid --duration 4").exit_code, 1);
}

TEST_F(CliTest, EyeLevelHasEighteen) {
  const auto r = run("baseline eyelevel --duration 30 --video-id v");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(Json::parse(r.out)["trajectories"].size(), 18u);
}

TEST_F(CliTest, RandomizedCommandsNeedSeed) {
  EXPECT_EQ(run("baseline center --duration 30 --video-id v").exit_code, 2);
  const auto a = run("baseline center --duration 30 --video-id v --seed 4");
  const auto b = run("--seed 4 baseline center --duration 30 --video-id v");
  const auto c = run("--set '{\"seed\": 4}' baseline center --duration 30 --video-id v");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, run("baseline center --duration 30 --video-id v --seed 5").out);
}

TEST_F(CliTest, UsageAndValidationFailures) {
  EXPECT_NE(run("frobnicate").exit_code, 0);
  EXPECT_NE(run("").exit_code, 0);
  EXPECT_EQ(run("--set '{\"solver\": {\"epsilon\": -3}}' grid --duration 10").exit_code, 1);
  std::ofstream(p("bad.json")) << "{\"video_id\": \"v\"}";
  EXPECT_EQ(run("solve --scores " + q(p("bad.json"))).exit_code, 1);
}

TEST_F(CliTest, EndToEndPipelineIsDeterministic) {
  make_frames(p("frames"));
  const std::string small = "--set '{\"camera\": {\"width\": 32, \"height\": 24}}' ";
  ASSERT_EQ(run(small + "score standin --frames " + q(p("frames")) + " --video-id v -o " +
                q(p("scores.json")))
                .exit_code,
            0);
  ASSERT_EQ(run("solve --scores " + q(p("scores.json")) + " -o " + q(p("solve1.json"))).exit_code, 0);
  ASSERT_EQ(run("solve --scores " + q(p("scores.json")) + " -o " + q(p("solve2.json"))).exit_code, 0);
  EXPECT_EQ(slurp(p("solve1.json")), slurp(p("solve2.json")));
  const auto solved = Json::parse(slurp(p("solve1.json")));
  EXPECT_EQ(solved["trajectories"].size(), 20u);
  EXPECT_EQ(solved["trajectories"][0]["entries"].size(), 2u);

  for (const char* out : {"ns1.json", "ns2.json"}) {
    ASSERT_EQ(run("baseline nostitch --seed 11 --scores " + q(p("scores.json")) + " -o " + q(p(out)))
                  .exit_code,
              0);
  }
  EXPECT_EQ(slurp(p("ns1.json")), slurp(p("ns2.json")));

  ASSERT_EQ(run("interp --in " + q(p("solve1.json")) + " --fps 2 -o " + q(p("cont.json"))).exit_code, 0);
  EXPECT_EQ(Json::parse(slurp(p("cont.json")))["trajectories"][0]["entries"].size(), 20u);

  ASSERT_EQ(run(small + "render --frames " + q(p("frames")) + " --trajectory " + q(p("solve1.json")) +
                " --count 4 -o " + q(p("nfov")))
                .exit_code,
            0);
  const auto meta = Json::parse(slurp(p("nfov") / "metadata.json"));
  EXPECT_EQ(meta["frame_count"], 4);
  EXPECT_EQ(meta["width"], 32);

  const auto analysis = run("analyze-scores --scores " + q(p("scores.json")));
  ASSERT_EQ(analysis.exit_code, 0);
  EXPECT_EQ(Json::parse(analysis.out)["total_glimpses"], 396);

  const auto he = run("eval humanedit --generated " + q(p("solve1.json")) + " " + q(p("ns1.json")) +
                      " --human " + q(p("cont.json")));
  ASSERT_EQ(he.exit_code, 0);
  EXPECT_EQ(Json::parse(he.out)["rows"].size(), 2u);
}

TEST_F(CliTest, ConsistencyOfIdenticalAnnotatorsIsOne) {
  for (const char* who : {"a", "b"}) {
    Json doc{{"video_id", "v"}, {"method", "humanedit"}, {"kind", "continuous"}, {"fps", 1.0},
             {"annotator_id", who}};
    for (int i = 0; i < 6; ++i) doc["entries"].push_back({{"frame", i}, {"theta", 5}, {"phi", 10 * i}});
    std::ofstream(p(std::string(who) + ".json")) << doc.dump();
  }
  const auto r = run("eval consistency --human " + q(p("a.json")) + " " + q(p("b.json")) +
                     " --table " + q(p("table.txt")));
  ASSERT_EQ(r.exit_code, 0);
  for (const auto& v : Json::parse(r.out)["rows"][0]["values"]) EXPECT_NEAR(v.get<double>(), 1.0, 1e-12);
  EXPECT_NE(slurp(p("table.txt")).find("1.000"), std::string::npos);
}

TEST_F(CliTest, ClassifierCommandsAreDeterministic) {
  write_features(p("hc.txt"), "hc", 40, 4, 0.3, 1);
  write_features(p("gl.txt"), "g", 200, 5, -0.3, 2);
  for (const char* out : {"m1.json", "m2.json"}) {
    ASSERT_EQ(run("train --seed 3 --humancam " + q(p("hc.txt")) + " --glimpses " + q(p("gl.txt")) +
                  " --heldout vid1 -o " + q(p(out)))
                  .exit_code,
              0);
  }
  EXPECT_EQ(slurp(p("m1.json")), slurp(p("m2.json")));
  EXPECT_EQ(run("train --humancam " + q(p("hc.txt")) + " --glimpses " + q(p("gl.txt")) + " -o " +
                q(p("m3.json")))
                .exit_code,
            2);

  write_features(p("gen.txt"), "gen", 100, 10, 0.0, 4);
  write_features(p("hum.txt"), "hum", 100, 10, 0.0, 5);
  const std::string cmd = "eval distinguish --gen " + q(p("gen.txt")) + " --human " + q(p("hum.txt"));
  const auto a = run(cmd + " --seed 8");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, run(cmd + " --seed 8").out);
  EXPECT_EQ(run(cmd).exit_code, 2);
}

}  // namespace
