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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "features.hpp"
#include "glimpse_grid.hpp"
#include "image.hpp"
#include "json.hpp"
#include "logistic.hpp"
#include "rng.hpp"

namespace panocam {

/// Capture-worthiness in [0, 1] for every cell of a glimpse lattice.
class ScoreMap {
 public:
  /// All scores zero.
  explicit ScoreMap(GlimpseGrid grid, std::string video_id = {});
  /// Throws kSchema unless scores has grid.size() finite values in [0, 1].
  ScoreMap(GlimpseGrid grid, std::vector<double> scores, std::string video_id = {});

  const GlimpseGrid& grid() const { return grid_; }
  const std::string& video_id() const { return video_id_; }
  const std::vector<double>& values() const { return scores_; }

  double at(int t, int lat_index, int lon_index) const {
    return scores_[grid_.index(t, lat_index, lon_index)];
  }
  /// Throws kOutOfRange for values outside [0, 1].
  void set(int t, int lat_index, int lon_index, double score);

 private:
  GlimpseGrid grid_;
  std::string video_id_;
  std::vector<double> scores_;
};

/// Values this far outside [0, 1] are clamped with a warning on load.
inline constexpr double kScoreClampTolerance = 1e-6;

/// Document: {video_id, interval_seconds, latitudes[], longitudes[],
/// scores[t][lat_index][lon_index]}. When `expected` is given, the file's
/// lattice must match it exactly.
ScoreMap score_map_from_json(const nlohmann::json& j, const std::string& origin,
                             const std::optional<GlimpseGrid>& expected = std::nullopt);
ScoreMap load_score_map(const std::filesystem::path& path,
                        const std::optional<GlimpseGrid>& expected = std::nullopt);
nlohmann::ordered_json score_map_to_json(const ScoreMap& map);
void save_score_map(const std::filesystem::path& path, const ScoreMap& map);

/// Record id used for per-glimpse features: "<t>:<theta>:<phi>".
std::string glimpse_record_id(int t, double theta, double phi);

/// Positives are all HumanCam records; negatives are glimpses from videos
/// other than `heldout_video`, subsampled uniformly (seeded) to exactly twice
/// the positive count. Labels are rewritten to "positive" / "negative".
/// Throws kIncomplete when too few negative candidates exist.
FeatureSet assemble_training_set(const FeatureSet& humancam, const FeatureSet& glimpses,
                                 const std::string& heldout_video, RngSeed seed);

struct WorthinessModel {
  LogisticModel logistic;
};

/// Requires labels "positive" and "negative" only.
WorthinessModel train_worthiness(const FeatureSet& data, double C = 1.0,
                                 LogisticTrace* trace = nullptr);

nlohmann::ordered_json worthiness_model_to_json(const WorthinessModel& model);
WorthinessModel worthiness_model_from_json(const nlohmann::json& j, const std::string& origin);
WorthinessModel load_worthiness_model(const std::filesystem::path& path);
void save_worthiness_model(const std::filesystem::path& path, const WorthinessModel& model);

/// Positive-class probability for each lattice cell. Records are matched to
/// cells by glimpse_record_id; only records of `video_id` are used when it
/// is non-empty. Throws kIncomplete when a cell has no record.
ScoreMap score_glimpses(const WorthinessModel& model, const FeatureSet& glimpse_features,
                        const GlimpseGrid& grid, const std::string& video_id = {});

/// Weights of the stand-in scorer. This is a cheap image-statistics proxy so
/// the pipeline runs end to end without a learned feature extractor; it is
/// not a model of capture-worthiness.
struct StandinParams {
  double alpha = 8.0;   // weight of spatial luminance contrast
  double beta = 16.0;   // weight of mean absolute temporal difference
  /// Score every n-th frame of a clip.
  int frame_stride = 1;
};

/// sigmoid(alpha * contrast + beta * motion), where contrast is the mean
/// per-frame luminance standard deviation and motion the mean absolute
/// luminance difference between consecutive frames. The minimum, 0.5, is
/// reached by any constant clip.
double standin_score(const std::vector<Image>& clip, const StandinParams& params = {});

/// Renders every glimpse of `grid` from `frames` and scores it with
/// standin_score.
ScoreMap standin_score_map(const FrameSource& frames, const GlimpseGrid& grid,
                           const CameraModel& cam, const StandinParams& params = {},
                           std::string video_id = {});

struct ScoreDistribution {
  double hi = 0.95;
  double lo = 0.05;
  std::vector<double> bin_edges;        // bins + 1 values over [0, 1]
  std::vector<std::size_t> bin_counts;  // last bin includes 1.0
  std::vector<double> latitudes;
  std::vector<double> capture_worthy_by_latitude;
  std::vector<double> non_capture_worthy_by_latitude;
  std::vector<double> longitudes;
  std::vector<double> capture_worthy_by_longitude;
  std::vector<double> non_capture_worthy_by_longitude;
  std::size_t total = 0;
};

/// Histogram of all scores plus, per latitude and per longitude, the
/// fraction of glimpses at that angle scoring >= hi and <= lo. All maps must
/// share one lattice layout. Throws kInvalidArgument when hi <= lo.
ScoreDistribution analyze_scores(const std::vector<ScoreMap>& maps, double hi = 0.95,
                                 double lo = 0.05, int bins = 20);
nlohmann::ordered_json score_distribution_to_json(const ScoreDistribution& dist);

}  // namespace panocam
