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

#include "scoring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "json_io.hpp"

namespace panocam {
namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_score(double v, const std::string& where) {
  if (!std::isfinite(v)) fail(ErrorCode::kSchema, where + ": score is not finite");
  if (v < 0.0 || v > 1.0) {
    fail(ErrorCode::kSchema, where + ": score " + shortest(v) + " outside [0, 1]");
  }
}

struct CellRef {
  int t;
  double theta;
  double phi;
};

std::optional<CellRef> parse_glimpse_id(const std::string& id) {
  const auto a = id.find(':');
  const auto b = id.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) return std::nullopt;
  const std::string ts = id.substr(0, a);
  const std::string th = id.substr(a + 1, b - a - 1);
  const std::string ph = id.substr(b + 1);
  char* end = nullptr;
  const long t = std::strtol(ts.c_str(), &end, 10);
  if (ts.empty() || *end != '\0') return std::nullopt;
  const double theta = std::strtod(th.c_str(), &end);
  if (th.empty() || *end != '\0') return std::nullopt;
  const double phi = std::strtod(ph.c_str(), &end);
  if (ph.empty() || *end != '\0') return std::nullopt;
  return CellRef{static_cast<int>(t), theta, phi};
}

}  // namespace

ScoreMap::ScoreMap(GlimpseGrid grid, std::string video_id)
    : grid_(std::move(grid)), video_id_(std::move(video_id)), scores_(grid_.size(), 0.0) {}

ScoreMap::ScoreMap(GlimpseGrid grid, std::vector<double> scores, std::string video_id)
    : grid_(std::move(grid)), video_id_(std::move(video_id)), scores_(std::move(scores)) {
  if (scores_.size() != grid_.size()) {
    fail(ErrorCode::kSchema, "score map has " + std::to_string(scores_.size()) +
                                 " values for " + std::to_string(grid_.size()) + " cells");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) check_score(scores_[i], "cell " + std::to_string(i));
}

void ScoreMap::set(int t, int lat_index, int lon_index, double score) {
  if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
    fail(ErrorCode::kOutOfRange, "score " + shortest(score) + " outside [0, 1]");
  }
  scores_[grid_.index(t, lat_index, lon_index)] = score;
}

ScoreMap score_map_from_json(const nlohmann::json& j, const std::string& origin,
                             const std::optional<GlimpseGrid>& expected) {
  try {
    const std::string video_id = j.value("video_id", std::string());
    const double interval = j.at("interval_seconds").get<double>();
    const auto lats = j.at("latitudes").get<std::vector<double>>();
    const auto lons = j.at("longitudes").get<std::vector<double>>();
    const auto& steps = j.at("scores");
    if (!steps.is_array() || steps.empty()) {
      fail(ErrorCode::kSchema, origin + ": scores must be a non-empty array");
    }
    // The lattice sorts and normalizes its angles; file rows and columns are
    // mapped onto it by value.
    GlimpseGrid grid(lats, lons, interval, static_cast<int>(steps.size()));
    std::vector<int> lat_slot(lats.size()), lon_slot(lons.size());
    for (std::size_t a = 0; a < lats.size(); ++a) lat_slot[a] = grid.find_latitude(lats[a]);
    for (std::size_t b = 0; b < lons.size(); ++b) lon_slot[b] = grid.find_longitude(lons[b]);
    if (expected && (!expected->same_layout(grid) || expected->num_steps() != grid.num_steps())) {
      fail(ErrorCode::kSchema, origin + ": lattice does not match the expected grid");
    }

    std::vector<double> values(grid.size());
    for (int t = 0; t < grid.num_steps(); ++t) {
      const auto& rows = steps.at(t);
      if (!rows.is_array() || static_cast<int>(rows.size()) != grid.num_lat()) {
        fail(ErrorCode::kSchema, origin + ": step " + std::to_string(t) + " needs " +
                                     std::to_string(grid.num_lat()) + " latitude rows");
      }
      for (int a = 0; a < grid.num_lat(); ++a) {
        const auto& row = rows.at(a);
        if (!row.is_array() || static_cast<int>(row.size()) != grid.num_lon()) {
          fail(ErrorCode::kSchema, origin + ": missing cells at step " + std::to_string(t) +
                                       ", latitude " + shortest(lats[a]));
        }
        for (int b = 0; b < grid.num_lon(); ++b) {
          const auto& cell = row.at(b);
          const std::string where = origin + ": cell (" + std::to_string(t) + ", " +
                                    shortest(lats[a]) + ", " + shortest(lons[b]) + ")";
          if (!cell.is_number()) fail(ErrorCode::kSchema, where + " is not a finite number");
          double v = cell.get<double>();
          if (!std::isfinite(v)) fail(ErrorCode::kSchema, where + " is not finite");
          if (v < 0.0 || v > 1.0) {
            if (v >= -kScoreClampTolerance && v <= 1.0 + kScoreClampTolerance) {
              warn(where + ": score " + shortest(v) + " clamped to [0, 1]");
              v = std::clamp(v, 0.0, 1.0);
            } else {
              fail(ErrorCode::kSchema, where + ": score " + shortest(v) + " outside [0, 1]");
            }
          }
          values[grid.index(t, lat_slot[a], lon_slot[b])] = v;
        }
      }
    }
    return ScoreMap(std::move(grid), std::move(values), video_id);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, origin + ": " + e.what());
  }
}

ScoreMap load_score_map(const std::filesystem::path& path, const std::optional<GlimpseGrid>& expected) {
  return score_map_from_json(read_json_file(path), path.string(), expected);
}

nlohmann::ordered_json score_map_to_json(const ScoreMap& map) {
  const GlimpseGrid& g = map.grid();
  nlohmann::ordered_json j;
  j["video_id"] = map.video_id();
  j["interval_seconds"] = g.interval();
  j["latitudes"] = g.latitudes();
  j["longitudes"] = g.longitudes();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (int t = 0; t < g.num_steps(); ++t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int a = 0; a < g.num_lat(); ++a) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int b = 0; b < g.num_lon(); ++b) row.push_back(map.at(t, a, b));
      rows.push_back(std::move(row));
    }
    steps.push_back(std::move(rows));
  }
  j["scores"] = std::move(steps);
  return j;
}

void save_score_map(const std::filesystem::path& path, const ScoreMap& map) {
  write_json_file_atomic(path, score_map_to_json(map));
}

std::string glimpse_record_id(int t, double theta, double phi) {
  return std::to_string(t) + ":" + shortest(theta) + ":" + shortest(phi);
}

FeatureSet assemble_training_set(const FeatureSet& humancam, const FeatureSet& glimpses,
                                 const std::string& heldout_video, RngSeed seed) {
  if (humancam.empty()) fail(ErrorCode::kDegenerateData, "no HumanCam positives");
  if (!glimpses.empty() && glimpses.dim() != humancam.dim()) {
    fail(ErrorCode::kSchema, "HumanCam and glimpse features differ in dimension");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < glimpses.size(); ++i) {
    if (glimpses[i].video_id != heldout_video) candidates.push_back(i);
  }
  const std::size_t positives = humancam.size();
  const std::size_t needed = 2 * positives;
  if (candidates.size() < needed) {
    std::ostringstream os;
    os << "need " << needed << " negative glimpses outside video '" << heldout_video
       << "' but only " << candidates.size() << " are available (short by "
       << needed - candidates.size() << ")";
    fail(ErrorCode::kIncomplete, os.str());
  }

  // Partial Fisher-Yates: the first `needed` slots become a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < needed; ++i) {
    const std::size_t j = i + rng.below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(needed);
  std::sort(candidates.begin(), candidates.end());

  FeatureSet out(humancam.dim());
  for (const auto& r : humancam.records()) {
    out.add({r.id, r.video_id, kPositiveLabel, r.vector});
  }
  for (std::size_t i : candidates) {
    const auto& r = glimpses[i];
    out.add({r.id, r.video_id, kNegativeLabel, r.vector});
  }
  return out;
}

WorthinessModel train_worthiness(const FeatureSet& data, double C, LogisticTrace* trace) {
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const auto& r : data.records()) {
    if (r.label == kPositiveLabel) {
      labels.push_back(1);
    } else if (r.label == kNegativeLabel) {
      labels.push_back(0);
    } else {
      fail(ErrorCode::kSchema, "worthiness labels must be 'positive' or 'negative', found '" +
                                   r.label + "'");
    }
  }
  LogisticOptions options;
  options.C = C;
  return WorthinessModel{train_logistic(data.matrix(), labels, options, trace)};
}

nlohmann::ordered_json worthiness_model_to_json(const WorthinessModel& model) {
  nlohmann::ordered_json j;
  j["kind"] = "logistic_regression";
  j["C"] = model.logistic.C;
  j["bias"] = model.logistic.bias;
  j["weights"] = std::vector<double>(model.logistic.weights.data(),
                                     model.logistic.weights.data() + model.logistic.weights.size());
  return j;
}

WorthinessModel worthiness_model_from_json(const nlohmann::json& j, const std::string& origin) {
  try {
    WorthinessModel m;
    m.logistic.C = j.at("C").get<double>();
    m.logistic.bias = j.at("bias").get<double>();
    const auto w = j.at("weights").get<std::vector<double>>();
    m.logistic.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    if (!(m.logistic.C > 0.0)) fail(ErrorCode::kSchema, origin + ": C must be positive");
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, origin + ": " + e.what());
  }
}

WorthinessModel load_worthiness_model(const std::filesystem::path& path) {
  return worthiness_model_from_json(read_json_file(path), path.string());
}

void save_worthiness_model(const std::filesystem::path& path, const WorthinessModel& model) {
  write_json_file_atomic(path, worthiness_model_to_json(model));
}

ScoreMap score_glimpses(const WorthinessModel& model, const FeatureSet& glimpse_features,
                        const GlimpseGrid& grid, const std::string& video_id) {
  if (glimpse_features.dim() != model.logistic.weights.size()) {
    fail(ErrorCode::kSchema, "glimpse features have dimension " +
                                 std::to_string(glimpse_features.dim()) + ", model expects " +
                                 std::to_string(model.logistic.weights.size()));
  }
  std::vector<long> record_of(grid.size(), -1);
  for (std::size_t i = 0; i < glimpse_features.size(); ++i) {
    const auto& r = glimpse_features[i];
    if (!video_id.empty() && r.video_id != video_id) continue;
    const auto cell = parse_glimpse_id(r.id);
    if (!cell) fail(ErrorCode::kSchema, "glimpse record id '" + r.id + "' is not <t>:<theta>:<phi>");
    const int a = grid.find_latitude(cell->theta);
    const int b = grid.find_longitude(cell->phi);
    if (cell->t < 0 || cell->t >= grid.num_steps() || a < 0 || b < 0) {
      fail(ErrorCode::kSchema, "glimpse record '" + r.id + "' is not a cell of the grid");
    }
    const auto idx = grid.index(cell->t, a, b);
    if (record_of[idx] >= 0) fail(ErrorCode::kSchema, "duplicate features for glimpse '" + r.id + "'");
    record_of[idx] = static_cast<long>(i);
  }

  std::vector<double> scores(grid.size());
  std::size_t missing = 0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (record_of[idx] < 0) {
      ++missing;
      continue;
    }
    const auto& v = glimpse_features[record_of[idx]].vector;
    scores[idx] = model.logistic.probability(
        Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  if (missing > 0) {
    fail(ErrorCode::kIncomplete, std::to_string(missing) + " of " + std::to_string(grid.size()) +
                                     " glimpse cells have no features");
  }
  return ScoreMap(grid, std::move(scores), video_id);
}

double standin_score(const std::vector<Image>& clip, const StandinParams& params) {
  if (clip.empty()) fail(ErrorCode::kInvalidArgument, "cannot score an empty clip");
  const int stride = std::max(1, params.frame_stride);

  std::vector<std::vector<float>> luma;
  for (std::size_t f = 0; f < clip.size(); f += stride) {
    const Image& img = clip[f];
    std::vector<float> l(static_cast<std::size_t>(img.width()) * img.height());
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) l[static_cast<std::size_t>(y) * img.width() + x] = luminance(img, x, y);
    }
    luma.push_back(std::move(l));
  }

  double contrast = 0.0;
  for (const auto& l : luma) {
    double mean = 0.0;
    for (float v : l) mean += v;
    mean /= static_cast<double>(l.size());
    double var = 0.0;
    for (float v : l) var += (v - mean) * (v - mean);
    contrast += std::sqrt(var / static_cast<double>(l.size()));
  }
  contrast /= static_cast<double>(luma.size());

  double motion = 0.0;
  for (std::size_t f = 1; f < luma.size(); ++f) {
    if (luma[f].size() != luma[f - 1].size()) {
      fail(ErrorCode::kInvalidArgument, "clip frames differ in size");
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < luma[f].size(); ++i) diff += std::fabs(luma[f][i] - luma[f - 1][i]);
    motion += diff / static_cast<double>(luma[f].size());
  }
  if (luma.size() > 1) motion /= static_cast<double>(luma.size() - 1);

  return sigmoid(params.alpha * contrast + params.beta * motion);
}

ScoreMap standin_score_map(const FrameSource& frames, const GlimpseGrid& grid,
                           const CameraModel& cam, const StandinParams& params,
                           std::string video_id) {
  ScoreMap map(grid, std::move(video_id));
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const STGlimpse g = grid.glimpse(idx);
    map.set(g.t, g.lat_index, g.lon_index, standin_score(glimpse_clip(frames, grid, g, cam), params));
  }
  return map;
}

ScoreDistribution analyze_scores(const std::vector<ScoreMap>& maps, double hi, double lo, int bins) {
  if (!(hi > lo)) fail(ErrorCode::kInvalidArgument, "capture-worthy threshold must exceed the low threshold");
  if (maps.empty()) fail(ErrorCode::kInvalidArgument, "no score maps to analyze");
  if (bins < 1) fail(ErrorCode::kInvalidArgument, "histogram needs >= 1 bin");
  const GlimpseGrid& layout = maps.front().grid();
  for (const auto& m : maps) {
    if (!m.grid().same_layout(layout)) {
      fail(ErrorCode::kInvalidArgument, "score maps use different glimpse lattices");
    }
  }

  ScoreDistribution d;
  d.hi = hi;
  d.lo = lo;
  for (int k = 0; k <= bins; ++k) d.bin_edges.push_back(static_cast<double>(k) / bins);
  d.bin_counts.assign(bins, 0);
  d.latitudes = layout.latitudes();
  d.longitudes = layout.longitudes();
  std::vector<std::size_t> lat_hi(layout.num_lat()), lat_lo(layout.num_lat()), lat_n(layout.num_lat());
  std::vector<std::size_t> lon_hi(layout.num_lon()), lon_lo(layout.num_lon()), lon_n(layout.num_lon());

  for (const auto& m : maps) {
    const GlimpseGrid& g = m.grid();
    for (int t = 0; t < g.num_steps(); ++t) {
      for (int a = 0; a < g.num_lat(); ++a) {
        for (int b = 0; b < g.num_lon(); ++b) {
          const double s = m.at(t, a, b);
          const int bin = std::min(bins - 1, static_cast<int>(s * bins));
          ++d.bin_counts[bin];
          ++d.total;
          ++lat_n[a];
          ++lon_n[b];
          if (s >= hi) ++lat_hi[a], ++lon_hi[b];
          if (s <= lo) ++lat_lo[a], ++lon_lo[b];
        }
      }
    }
  }
  for (int a = 0; a < layout.num_lat(); ++a) {
    d.capture_worthy_by_latitude.push_back(static_cast<double>(lat_hi[a]) / lat_n[a]);
    d.non_capture_worthy_by_latitude.push_back(static_cast<double>(lat_lo[a]) / lat_n[a]);
  }
  for (int b = 0; b < layout.num_lon(); ++b) {
    d.capture_worthy_by_longitude.push_back(static_cast<double>(lon_hi[b]) / lon_n[b]);
    d.non_capture_worthy_by_longitude.push_back(static_cast<double>(lon_lo[b]) / lon_n[b]);
  }
  return d;
}

nlohmann::ordered_json score_distribution_to_json(const ScoreDistribution& d) {
  nlohmann::ordered_json j;
  j["hi"] = d.hi;
  j["lo"] = d.lo;
  j["total_glimpses"] = d.total;
  j["histogram"] = {{"bin_edges", d.bin_edges}, {"counts", d.bin_counts}};
  j["by_latitude"] = {{"latitudes", d.latitudes},
                      {"capture_worthy", d.capture_worthy_by_latitude},
                      {"non_capture_worthy", d.non_capture_worthy_by_latitude}};
  j["by_longitude"] = {{"longitudes", d.longitudes},
                       {"capture_worthy", d.capture_worthy_by_longitude},
                       {"non_capture_worthy", d.non_capture_worthy_by_longitude}};
  return j;
}

}  // namespace panocam
