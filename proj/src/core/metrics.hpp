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
 * @file metrics.hpp
 * @brief Trajectory similarity and classifier-based evaluation.
 *
 * Every similarity is reported so that higher means closer. Where a
 * comparison is naturally phrased as "minimum distance to a human
 * trajectory", it is computed here as the maximum similarity.
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "features.hpp"
#include "json.hpp"
#include "logistic.hpp"
#include "rng.hpp"
#include "trajectory.hpp"

namespace panocam {

struct SimilarityMeasure {
  enum class Kind { kCosine, kOverlap };

  Kind kind = Kind::kCosine;
  /// Field of view in degrees; overlap only.
  double fov = kDefaultHfovDeg;

  static SimilarityMeasure cosine() { return {Kind::kCosine, kDefaultHfovDeg}; }
  /// Throws kInvalidArgument unless fov > 0.
  static SimilarityMeasure overlap(double fov = kDefaultHfovDeg);

  std::string name() const;
};

enum class Pooling { kTrajectory, kFrame };

std::string pooling_name(Pooling p);

/// max(1 - delta / fov, 0) for an angular separation delta in degrees.
double overlap_from_angle(double delta_deg, double fov_deg);

/// Similarity of two principal axes.
double direction_similarity(const Direction& a, const Direction& b, const SimilarityMeasure& m);

/// Per-frame similarity. Trajectories must share fps; when the frame counts
/// differ by one, the shorter is stretched by nearest frame. Larger
/// mismatches throw kInvalidArgument.
std::vector<double> framewise_similarity(const ContinuousTrajectory& a,
                                         const ContinuousTrajectory& b,
                                         const SimilarityMeasure& m);

/// kTrajectory: max over humans of the mean per-frame similarity.
/// kFrame: mean over frames of the max similarity over humans.
/// Throws kInvalidArgument for an empty `humans`.
double pool(const ContinuousTrajectory& gen, const std::vector<ContinuousTrajectory>& humans,
            const SimilarityMeasure& m, Pooling pooling);

/// Tabular result with one row per method (or per group) and free-form
/// per-video detail.
struct MetricReport {
  struct Row {
    std::string name;
    std::vector<double> values;
  };

  std::string title;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  /// Aligned plain-text table, three decimals.
  std::string to_table() const;
};

/// The four comparison settings, in report column order.
struct SimilaritySetting {
  SimilarityMeasure measure;
  Pooling pooling;
};
std::vector<SimilaritySetting> similarity_settings(double fov = kDefaultHfovDeg);
std::vector<std::string> similarity_columns();

struct AnnotatedTrajectory {
  std::string annotator;
  ContinuousTrajectory trajectory;
};

/// Human-vs-human agreement. Each trajectory is pooled against the
/// trajectories of the other annotators of the same video (an annotator's
/// own trajectories are never compared with each other). Reports the mean
/// over all trajectories for every similarity setting. Videos with a single
/// annotator are skipped with a warning; throws kInvalidArgument when no
/// video has two annotators.
MetricReport consistency_report(
    const std::map<std::string, std::vector<AnnotatedTrajectory>>& humans_by_video,
    double fov = kDefaultHfovDeg);

/// Generated trajectories of one method for one video.
using MethodTrajectories = std::map<std::string, std::vector<ContinuousTrajectory>>;

/// For every method and video, the mean over the method's trajectories of
/// their pooled similarity to the video's human trajectories; a row per
/// method holds the mean over videos. Videos lacking human trajectories are
/// skipped with a warning.
MetricReport humanedit_report(
    const std::map<std::string, MethodTrajectories>& generated_by_method,
    const std::map<std::string, std::vector<ContinuousTrajectory>>& humans_by_video,
    double fov = kDefaultHfovDeg);

struct ClassifierOptions {
  LogisticOptions logistic;
  /// Standardize features with training-split statistics.
  bool standardize = true;
};

struct DistinguishabilityResult {
  double error_rate = 0.0;
  std::vector<double> fold_errors;
};

/// Cross-validated error of a classifier separating generated clips from
/// human clips. Generated clips are split into folds by video_id so that no
/// 360 video contributes to both training and testing; human clips are
/// split randomly. Higher is better for the generator. Throws
/// kInvalidArgument when either set is empty or when there are fewer
/// distinct generated video_ids than folds.
DistinguishabilityResult distinguishability(const FeatureSet& gen, const FeatureSet& human,
                                            int folds, RngSeed seed,
                                            const ClassifierOptions& options = {});

struct LikenessResult {
  /// Mean normalized rank per method; 0 is most human-like.
  std::map<std::string, double> mean_rank;
  /// video_id -> method -> mean normalized rank of that method's clips.
  std::map<std::string, std::map<std::string, double>> per_video;
};

/// Leave-one-video-out ranking. For each 360 video, a human-vs-generated
/// classifier is trained without that video's generated clips, then every
/// method's clips of the video are ranked together by decision value
/// (larger = more human-like = better rank). Ranks are normalized to
/// (r - 1) / (N - 1) with average ranks for ties. Throws kInvalidArgument
/// with fewer than two methods.
LikenessResult humancam_likeness(const std::map<std::string, FeatureSet>& per_method_gen,
                                 const FeatureSet& human,
                                 const ClassifierOptions& options = {});

/// Multi-class accuracy on `target` of a one-vs-rest classifier trained on
/// `source`. Throws kInvalidArgument when the label alphabets differ.
double transferability(const FeatureSet& source, const FeatureSet& target,
                       const ClassifierOptions& options = {});

}  // namespace panocam
