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

#include <cstddef>
#include <vector>

#include "image.hpp"
#include "sphere_geom.hpp"

namespace panocam {

/// {-75, -45, -30, -20, -10, 0, 10, 20, 30, 45, 75}: denser near the equator.
std::vector<double> default_latitudes();
/// {0, 20, ..., 340}.
std::vector<double> default_longitudes();
inline constexpr double kDefaultIntervalSeconds = 5.0;

struct STGlimpse {
  int t = 0;
  int lat_index = 0;
  int lon_index = 0;
  Direction dir;
};

/// Space-time lattice of candidate glimpses. Latitudes and longitudes are
/// kept sorted ascending; cells are enumerated t-major, then latitude, then
/// longitude.
class GlimpseGrid {
 public:
  GlimpseGrid(std::vector<double> latitudes, std::vector<double> longitudes,
              double interval_seconds, int num_steps);

  const std::vector<double>& latitudes() const { return latitudes_; }
  const std::vector<double>& longitudes() const { return longitudes_; }
  double interval() const { return interval_; }
  int num_steps() const { return num_steps_; }

  int num_lat() const { return static_cast<int>(latitudes_.size()); }
  int num_lon() const { return static_cast<int>(longitudes_.size()); }
  /// Locations per time step.
  int cells_per_step() const { return num_lat() * num_lon(); }
  std::size_t size() const {
    return static_cast<std::size_t>(num_steps_) * cells_per_step();
  }

  std::size_t index(int t, int lat_index, int lon_index) const;
  STGlimpse glimpse(std::size_t index) const;
  STGlimpse glimpse(int t, int lat_index, int lon_index) const;
  Direction direction(int lat_index, int lon_index) const;

  /// Index of an exact lattice latitude/longitude, or -1.
  int find_latitude(double theta) const;
  int find_longitude(double phi) const;

  /// Nearest lattice latitude by |dtheta| and nearest longitude by wrapped
  /// delta; ties go to the smaller value.
  int nearest_latitude(double theta) const;
  int nearest_longitude(double phi) const;

  /// Same locations and interval; the number of steps may differ.
  bool same_layout(const GlimpseGrid& other) const;

  /// Covered time span [start, end) of step t in seconds.
  double step_start(int t) const { return t * interval_; }
  double step_end(int t) const { return (t + 1) * interval_; }

 private:
  std::vector<double> latitudes_;
  std::vector<double> longitudes_;
  double interval_;
  int num_steps_;
};

/// T = floor(duration / interval); a trailing partial interval is dropped.
/// Throws kInvalidArgument when duration < interval.
GlimpseGrid build_grid(double video_duration, double interval = kDefaultIntervalSeconds,
                       std::vector<double> latitudes = default_latitudes(),
                       std::vector<double> longitudes = default_longitudes());

/// Indices of the source frames whose centers fall inside step t's span.
struct FrameSpan {
  int first = 0;
  int count = 0;
};
FrameSpan frames_for_step(const GlimpseGrid& grid, int t, double fps);

/// Renders every source frame of the glimpse's time span at its fixed
/// direction. Throws kIncomplete when the source lacks frames of the span.
std::vector<Image> glimpse_clip(const FrameSource& frames, const GlimpseGrid& grid,
                                const STGlimpse& g, const CameraModel& cam);

}  // namespace panocam
