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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "error.hpp"
#include "metrics.hpp"

namespace panocam {
namespace {

ContinuousTrajectory equator(std::vector<double> phis, double fps = 1.0) {
  ContinuousTrajectory c{fps, {}};
  for (double p : phis) c.directions.emplace_back(0.0, p);
  return c;
}

ContinuousTrajectory random_traj(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> th(-75, 75), ph(0, 360);
  ContinuousTrajectory c{1.0, {}};
  for (int i = 0; i < n; ++i) c.directions.emplace_back(th(gen), ph(gen));
  return c;
}

TEST(Similarity, OverlapFormula) {
  EXPECT_EQ(overlap_from_angle(32.75, 65.5), 0.5);
  EXPECT_EQ(overlap_from_angle(0.0, 65.5), 1.0);
  EXPECT_EQ(overlap_from_angle(65.5, 65.5), 0.0);
  EXPECT_EQ(overlap_from_angle(120.0, 65.5), 0.0);
  EXPECT_THROW(SimilarityMeasure::overlap(0.0), Error);
}

TEST(Similarity, ConstantOffsets) {
  const auto a = equator({0, 10, 20});
  const auto b = equator({90, 100, 110});
  for (double v : framewise_similarity(a, b, SimilarityMeasure::cosine())) EXPECT_NEAR(v, 0.0, 1e-15);
  for (double v : framewise_similarity(a, b, SimilarityMeasure::overlap())) EXPECT_EQ(v, 0.0);
  const auto c = equator({32.75, 42.75, 52.75});
  for (double v : framewise_similarity(a, c, SimilarityMeasure::overlap())) EXPECT_NEAR(v, 0.5, 1e-12);
  for (double v : framewise_similarity(a, a, SimilarityMeasure::overlap())) EXPECT_EQ(v, 1.0);
  for (double v : framewise_similarity(a, a, SimilarityMeasure::cosine())) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Similarity, CosineIsDotOfUnitVectors) {
  std::mt19937_64 gen(1);
  const auto a = random_traj(gen, 50), b = random_traj(gen, 50);
  const auto ab = framewise_similarity(a, b, SimilarityMeasure::cosine());
  const auto ba = framewise_similarity(b, a, SimilarityMeasure::cosine());
  for (int i = 0; i < 50; ++i) {
    const double t1 = a.directions[i].theta() * M_PI / 180, p1 = a.directions[i].phi() * M_PI / 180;
    const double t2 = b.directions[i].theta() * M_PI / 180, p2 = b.directions[i].phi() * M_PI / 180;
    const double dot = std::cos(t1) * std::cos(t2) * std::cos(p1 - p2) + std::sin(t1) * std::sin(t2);
    EXPECT_NEAR(ab[i], dot, 1e-12);
    EXPECT_EQ(ab[i], ba[i]);
  }
}

TEST(Similarity, LengthRules) {
  const auto a = equator({0, 0, 0, 0});
  EXPECT_EQ(framewise_similarity(a, equator({0, 0, 0}), SimilarityMeasure::cosine()).size(), 4u);
  EXPECT_THROW(framewise_similarity(a, equator({0, 0}), SimilarityMeasure::cosine()), Error);
  EXPECT_THROW(framewise_similarity(a, equator({0, 0, 0, 0}, 2.0), SimilarityMeasure::cosine()),
               Error);
}

TEST(Pool, HalfAndHalf) {
  const auto gen = equator({0, 0, 90, 90});
  const auto a = equator({0, 0, 180, 180});
  const auto b = equator({90, 90, 90, 90});
  const auto cos = SimilarityMeasure::cosine();
  EXPECT_NEAR(pool(gen, {a, b}, cos, Pooling::kFrame), 1.0, 1e-15);
  EXPECT_NEAR(pool(gen, {a, b}, cos, Pooling::kTrajectory), 0.5, 1e-15);
  EXPECT_THROW(pool(gen, {}, cos, Pooling::kFrame), Error);
}

TEST(Pool, IdenticalToOneHuman) {
  std::mt19937_64 g(2);
  const auto h1 = random_traj(g, 20), h2 = random_traj(g, 20), h3 = random_traj(g, 20);
  for (const auto& s : similarity_settings()) {
    EXPECT_NEAR(pool(h2, {h1, h2, h3}, s.measure, s.pooling), 1.0, 1e-12);
  }
}

TEST(Pool, FrameAtLeastTrajectoryAndOrderFree) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 300; ++i) {
    const auto gen = random_traj(g, 10);
    std::vector<ContinuousTrajectory> hs{random_traj(g, 10), random_traj(g, 10), random_traj(g, 10)};
    for (const auto& m : {SimilarityMeasure::cosine(), SimilarityMeasure::overlap()}) {
      const double f = pool(gen, hs, m, Pooling::kFrame);
      const double t = pool(gen, hs, m, Pooling::kTrajectory);
      EXPECT_GE(f, t - 1e-12);
      auto rev = hs;
      std::reverse(rev.begin(), rev.end());
      EXPECT_NEAR(pool(gen, rev, m, Pooling::kFrame), f, 1e-12);
      EXPECT_NEAR(pool(gen, rev, m, Pooling::kTrajectory), t, 1e-12);
    }
  }
}

TEST(Consistency, HandComputedTable) {
  std::map<std::string, std::vector<AnnotatedTrajectory>> humans;
  humans["v"] = {{"A", equator({0, 0})},
                 {"A", equator({90, 90})},
                 {"B", equator({0, 90})},
                 {"B", equator({180, 150})}};
  const auto r = consistency_report(humans);
  ASSERT_EQ(r.rows.size(), 1u);
  ASSERT_EQ(r.columns, similarity_columns());
  // Per trajectory (cosine trajectory, cosine frame):
  //   A1 (0.5, 0.5), A2 (0.5, 0.5), B1 (0.5, 1), B2 (0.25, 0.25).
  // Overlap with o = 1 - 60/65.5:
  //   A1 (0.5, 0.5), A2 (0.5, 0.5), B1 (0.5, 1), B2 (o/2, o/2).
  const double o = 1.0 - 60.0 / 65.5;
  const auto& v = r.rows[0].values;
  EXPECT_NEAR(v[0], 0.4375, 1e-12);
  EXPECT_NEAR(v[1], 0.5625, 1e-12);
  EXPECT_NEAR(v[2], (1.5 + o / 2) / 4, 1e-12);
  EXPECT_NEAR(v[3], (2.0 + o / 2) / 4, 1e-12);
}

TEST(Consistency, IdenticalAnnotatorsAndOrthogonalOnes) {
  std::map<std::string, std::vector<AnnotatedTrajectory>> same;
  same["v"] = {{"A", equator({10, 20, 30})}, {"B", equator({10, 20, 30})}};
  const auto same_report = consistency_report(same);
  for (double x : same_report.rows[0].values) EXPECT_NEAR(x, 1.0, 1e-12);

  std::map<std::string, std::vector<AnnotatedTrajectory>> apart;
  apart["v"] = {{"A", equator({0, 0, 0})}, {"B", equator({90, 90, 90})}};
  const auto v = consistency_report(apart).rows[0].values;
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], 0.0, 1e-15);
}

TEST(Consistency, SingleAnnotatorIsAnError) {
  std::map<std::string, std::vector<AnnotatedTrajectory>> one;
  one["v"] = {{"A", equator({0})}, {"A", equator({10})}};
  try {
    consistency_report(one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(HumanEditReport, RowsPerMethod) {
  std::map<std::string, std::vector<ContinuousTrajectory>> humans{
      {"v1", {equator({0, 0, 0})}}, {"v2", {equator({90, 90, 90})}}};
  std::map<std::string, MethodTrajectories> gen;
  gen["copy"] = {{"v1", {equator({0, 0, 0})}}, {"v2", {equator({90, 90, 90})}}};
  gen["opposite"] = {{"v1", {equator({180, 180, 180})}}};
  const auto r = humanedit_report(gen, humans);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].name, "copy");
  for (double x : r.rows[0].values) EXPECT_NEAR(x, 1.0, 1e-12);
  EXPECT_NEAR(r.rows[1].values[0], -1.0, 1e-12);
  EXPECT_EQ(r.rows[1].values[2], 0.0);
  EXPECT_NE(r.to_table().find("1.000"), std::string::npos);
  EXPECT_EQ(r.to_json().at("rows")[0].at("name"), "copy");
}

FeatureSet gaussian_set(const std::string& label, int n, int videos, int dim, double shift,
                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0, 1);
  FeatureSet s(dim);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (double& x : v) x = nd(gen) + shift;
    s.add({label + std::to_string(i), label + "_vid" + std::to_string(i % videos), label, v});
  }
  return s;
}

TEST(Distinguishability, SameDistributionNearChance) {
  const auto gen = gaussian_set("g", 400, 20, 4, 0.0, 1);
  const auto hum = gaussian_set("h", 400, 20, 4, 0.0, 2);
  const auto r = distinguishability(gen, hum, 5, RngSeed{3});
  EXPECT_EQ(r.fold_errors.size(), 5u);
  EXPECT_NEAR(r.error_rate, 0.5, 0.1);
}

TEST(Distinguishability, SeparableIsEasy) {
  const auto gen = gaussian_set("g", 200, 10, 4, 4.0, 1);
  const auto hum = gaussian_set("h", 200, 10, 4, -4.0, 2);
  EXPECT_LE(distinguishability(gen, hum, 5, RngSeed{3}).error_rate, 0.02);
}

TEST(Distinguishability, Deterministic) {
  const auto gen = gaussian_set("g", 100, 10, 3, 0.3, 1);
  const auto hum = gaussian_set("h", 100, 10, 3, 0.0, 2);
  EXPECT_EQ(distinguishability(gen, hum, 5, RngSeed{9}).fold_errors,
            distinguishability(gen, hum, 5, RngSeed{9}).fold_errors);
}

TEST(Distinguishability, NeedsEnoughVideos) {
  const auto gen = gaussian_set("g", 100, 3, 3, 0.0, 1);
  const auto hum = gaussian_set("h", 100, 3, 3, 0.0, 2);
  EXPECT_THROW(distinguishability(gen, hum, 5, RngSeed{1}), Error);
  EXPECT_THROW(distinguishability(gen, hum, 1, RngSeed{1}), Error);
  EXPECT_THROW(distinguishability(FeatureSet(3), hum, 2, RngSeed{1}), Error);
}

FeatureSet method_set(const std::string& method, int videos, int per_video, double shift,
                      std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0, 1);
  FeatureSet s(3);
  for (int v = 0; v < videos; ++v) {
    for (int i = 0; i < per_video; ++i) {
      s.add({method + std::to_string(v) + "_" + std::to_string(i), "vid" + std::to_string(v),
             method, {nd(gen) + shift, nd(gen), nd(gen)}});
    }
  }
  return s;
}

TEST(Likeness, HumanLikeMethodRanksFirst) {
  const auto human = gaussian_set("h", 300, 10, 3, 0.0, 1);
  std::map<std::string, FeatureSet> methods{{"near", method_set("near", 6, 20, 0.0, 2)},
                                            {"far", method_set("far", 6, 20, 3.0, 3)}};
  const auto r = humancam_likeness(methods, human);
  EXPECT_LT(r.mean_rank.at("near"), r.mean_rank.at("far"));
  EXPECT_EQ(r.per_video.size(), 6u);
  for (const auto& [m, rank] : r.mean_rank) {
    EXPECT_GE(rank, 0.0);
    EXPECT_LE(rank, 1.0);
  }
}

TEST(Likeness, IdenticalMethodsTie) {
  const auto human = gaussian_set("h", 300, 10, 3, 0.0, 1);
  const auto a = method_set("x", 6, 20, 1.0, 2);
  FeatureSet b(3);
  for (const auto& r : a.records()) b.add({r.id + "b", r.video_id, "y", r.vector});
  const auto res = humancam_likeness({{"a", a}, {"b", b}}, human);
  EXPECT_NEAR(res.mean_rank.at("a"), res.mean_rank.at("b"), 1e-12);
}

TEST(Likeness, NeedsTwoMethods) {
  const auto human = gaussian_set("h", 30, 3, 3, 0.0, 1);
  EXPECT_THROW(humancam_likeness({{"a", method_set("a", 3, 5, 0, 2)}}, human), Error);
}

TEST(Transferability, SameDataIsResubstitution) {
  FeatureSet s(2);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd(0, 0.4);
  const double cx[] = {2, -2, 0, 0}, cy[] = {0, 0, 2, -2};
  for (int i = 0; i < 200; ++i) {
    const int k = i % 4;
    s.add({std::to_string(i), "v", "c" + std::to_string(k), {cx[k] + nd(gen), cy[k] + nd(gen)}});
  }
  EXPECT_GE(transferability(s, s), 0.99);
  FeatureSet other(2);
  other.add({"x", "v", "zz", {0, 0}});
  EXPECT_THROW(transferability(s, other), Error);
}

}  // namespace
}  // namespace panocam
