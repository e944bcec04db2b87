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
 * @file sphere_geom.hpp
 * @brief Angles on the viewing sphere, the NFOV camera model and the maps
 * between sphere directions, equirectangular pixels and NFOV pixels.
 *
 * Conventions used throughout the project:
 *  - latitude theta in [-90, 90] degrees, 0 is eye level, +90 is up;
 *  - longitude phi in [0, 360) degrees, increasing to the right on screen;
 *  - equirectangular x = phi / 360 * width, y = (90 - theta) / 180 * height;
 *  - continuous pixel coordinates, pixel (i, j) has its center at
 *    (i + 0.5, j + 0.5);
 *  - the virtual camera never rolls: its up vector lies in the meridian
 *    plane through the principal axis.
 */

#pragma once

#include <array>
#include <optional>
#include <vector>

namespace panocam {

inline constexpr double kDefaultHfovDeg = 65.5;
inline constexpr double kDefaultAspect = 4.0 / 3.0;

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Maps any finite longitude into [0, 360).
double normalize_longitude(double phi);

/// Signed longitude change from `from` to `to` along the shorter arc, in
/// (-180, 180]. Exactly antipodal longitudes resolve to +180.
double shortest_longitude_step(double from, double to);

using Vec3 = std::array<double, 3>;

class Direction {
 public:
  /// (0, 0): eye level, longitude zero.
  Direction() = default;

  /// Throws kOutOfRange when theta is outside [-90, 90] or either angle is
  /// not finite. phi is normalized to [0, 360).
  Direction(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Vec3 unit_vector() const;
  static Direction from_vector(const Vec3& v);

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Great-circle angle between two directions, degrees in [0, 180].
double angular_distance(const Direction& a, const Direction& b);

struct AngleDelta {
  double dtheta = 0.0;
  double dphi = 0.0;
};

/// Per-angle displacement with longitude wraparound; both parts in [0, 180].
AngleDelta wrapped_delta(const Direction& a, const Direction& b);

struct PixelCoord {
  double x = 0.0;
  double y = 0.0;
};

class CameraModel {
 public:
  /// Throws kInvalidArgument unless 0 < hfov < 180, aspect > 0, both raster
  /// sides are positive and width is within one pixel of aspect * height.
  CameraModel(double hfov_deg = kDefaultHfovDeg, double aspect = kDefaultAspect,
              int width_px = 640, int height_px = 480);

  double hfov() const { return hfov_; }
  double aspect() const { return aspect_; }
  int width() const { return width_; }
  int height() const { return height_; }

  /// Half of the horizontal field of view.
  double half_hfov() const { return hfov_ / 2.0; }
  /// atan(tan(hfov / 2) / aspect).
  double half_vfov() const;

  /// tan of the horizontal and vertical half angles.
  double tan_half_h() const { return tan_half_h_; }
  double tan_half_v() const { return tan_half_v_; }

 private:
  double hfov_;
  double aspect_;
  int width_;
  int height_;
  double tan_half_h_;
  double tan_half_v_;
};

/// Orthonormal frame of a zero-roll camera: forward is the principal axis,
/// right points toward increasing longitude, up toward increasing latitude.
struct CameraFrame {
  Vec3 forward;
  Vec3 right;
  Vec3 up;

  static CameraFrame at(const Direction& principal);
  Vec3 to_world(double right_coord, double up_coord) const;
};

/// Sphere direction seen by continuous pixel `px` of a gnomonic camera
/// looking along `principal`. Throws kOutOfRange outside [0,w] x [0,h].
Direction nfov_pixel_ray(const CameraModel& cam, const Direction& principal,
                         PixelCoord px);

/// Inverse of nfov_pixel_ray. Empty when `dir` lies behind the image plane.
/// The result may fall outside the raster.
std::optional<PixelCoord> nfov_pixel_of(const CameraModel& cam,
                                        const Direction& principal,
                                        const Direction& dir);

struct ImageSize {
  int width = 0;
  int height = 0;
};

PixelCoord sphere_to_equirect_px(ImageSize dims, const Direction& d);

/// Inverse of sphere_to_equirect_px; y is clamped to [0, height].
Direction equirect_px_to_sphere(ImageSize dims, PixelCoord px);

using Polyline = std::vector<PixelCoord>;

/// The NFOV raster border sampled with `samples_per_edge` points per edge,
/// clockwise from the top-left corner, in equirectangular pixel coordinates.
/// Throws kInvalidArgument when samples_per_edge < 2.
Polyline fov_border_points(const CameraModel& cam, const Direction& principal,
                           ImageSize equirect, int samples_per_edge);

/// Closed FOV outline split into drawable segments wherever it wraps across
/// the phi = 0/360 seam. Without a seam crossing a single closed segment is
/// returned (first point repeated at the end).
std::vector<Polyline> fov_outline(const CameraModel& cam,
                                  const Direction& principal,
                                  ImageSize equirect, int samples_per_edge);

}  // namespace panocam
