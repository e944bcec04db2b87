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

#include "sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace panocam {
namespace {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

double normalize_longitude(double phi) {
  double r = std::fmod(phi, 360.0);
  if (r < 0.0) r += 360.0;
  // -tiny + 360 rounds to 360.
  if (r >= 360.0) r = 0.0;
  return r;
}

double shortest_longitude_step(double from, double to) {
  double d = normalize_longitude(to) - normalize_longitude(from);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    fail(ErrorCode::kOutOfRange, "direction angles must be finite");
  }
  if (theta < -90.0 || theta > 90.0) {
    std::ostringstream os;
    os << "latitude " << theta << " outside [-90, 90]";
    fail(ErrorCode::kOutOfRange, os.str());
  }
  theta_ = theta;
  phi_ = normalize_longitude(phi);
}

Vec3 Direction::unit_vector() const {
  const double t = deg_to_rad(theta_);
  const double p = deg_to_rad(phi_);
  return {std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), std::sin(t)};
}

Direction Direction::from_vector(const Vec3& v) {
  const double horiz = std::hypot(v[0], v[1]);
  const double theta = rad_to_deg(std::atan2(v[2], horiz));
  const double phi = horiz > 0.0 ? rad_to_deg(std::atan2(v[1], v[0])) : 0.0;
  return Direction(theta, phi);
}

double angular_distance(const Direction& a, const Direction& b) {
  const Vec3 u = a.unit_vector();
  const Vec3 v = b.unit_vector();
  // atan2 keeps full precision near 0 and 180 where acos does not.
  return rad_to_deg(std::atan2(norm(cross(u, v)), dot(u, v)));
}

AngleDelta wrapped_delta(const Direction& a, const Direction& b) {
  const double dphi = std::fabs(a.phi() - b.phi());
  return {std::fabs(a.theta() - b.theta()), std::min(dphi, 360.0 - dphi)};
}

CameraModel::CameraModel(double hfov_deg, double aspect, int width_px,
                         int height_px)
    : hfov_(hfov_deg), aspect_(aspect), width_(width_px), height_(height_px) {
  if (!(hfov_deg > 0.0 && hfov_deg < 180.0)) {
    fail(ErrorCode::kInvalidArgument, "camera hfov must lie in (0, 180)");
  }
  if (!(aspect > 0.0) || !std::isfinite(aspect)) {
    fail(ErrorCode::kInvalidArgument, "camera aspect must be positive");
  }
  if (width_px <= 0 || height_px <= 0) {
    fail(ErrorCode::kInvalidArgument, "camera raster must be non-empty");
  }
  if (std::fabs(width_px - aspect * height_px) > 1.0) {
    std::ostringstream os;
    os << "camera raster " << width_px << "x" << height_px
       << " does not match aspect " << aspect;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  tan_half_h_ = std::tan(deg_to_rad(hfov_ / 2.0));
  tan_half_v_ = tan_half_h_ / aspect_;
}

double CameraModel::half_vfov() const {
  return rad_to_deg(std::atan(tan_half_v_));
}

CameraFrame CameraFrame::at(const Direction& principal) {
  const double t = deg_to_rad(principal.theta());
  const double p = deg_to_rad(principal.phi());
  const double ct = std::cos(t), st = std::sin(t);
  const double cp = std::cos(p), sp = std::sin(p);
  return CameraFrame{{ct * cp, ct * sp, st}, {-sp, cp, 0.0}, {-st * cp, -st * sp, ct}};
}

Vec3 CameraFrame::to_world(double right_coord, double up_coord) const {
  return {forward[0] + right_coord * right[0] + up_coord * up[0],
          forward[1] + right_coord * right[1] + up_coord * up[1],
          forward[2] + right_coord * right[2] + up_coord * up[2]};
}

Direction nfov_pixel_ray(const CameraModel& cam, const Direction& principal,
                         PixelCoord px) {
  if (!(px.x >= 0.0 && px.x <= cam.width() && px.y >= 0.0 &&
        px.y <= cam.height())) {
    std::ostringstream os;
    os << "pixel (" << px.x << ", " << px.y << ") outside " << cam.width()
       << "x" << cam.height() << " raster";
    fail(ErrorCode::kOutOfRange, os.str());
  }
  const double a = (2.0 * px.x / cam.width() - 1.0) * cam.tan_half_h();
  const double b = (1.0 - 2.0 * px.y / cam.height()) * cam.tan_half_v();
  return Direction::from_vector(CameraFrame::at(principal).to_world(a, b));
}

std::optional<PixelCoord> nfov_pixel_of(const CameraModel& cam,
                                        const Direction& principal,
                                        const Direction& dir) {
  const CameraFrame frame = CameraFrame::at(principal);
  const Vec3 v = dir.unit_vector();
  const double depth = dot(v, frame.forward);
  if (!(depth > 0.0)) return std::nullopt;
  const double a = dot(v, frame.right) / depth;
  const double b = dot(v, frame.up) / depth;
  return PixelCoord{(a / cam.tan_half_h() + 1.0) * 0.5 * cam.width(),
                    (1.0 - b / cam.tan_half_v()) * 0.5 * cam.height()};
}

PixelCoord sphere_to_equirect_px(ImageSize dims, const Direction& d) {
  return {d.phi() / 360.0 * dims.width, (90.0 - d.theta()) / 180.0 * dims.height};
}

Direction equirect_px_to_sphere(ImageSize dims, PixelCoord px) {
  const double y = std::clamp(px.y, 0.0, static_cast<double>(dims.height));
  return Direction(90.0 - 180.0 * y / dims.height, 360.0 * px.x / dims.width);
}

Polyline fov_border_points(const CameraModel& cam, const Direction& principal,
                           ImageSize equirect, int samples_per_edge) {
  if (samples_per_edge < 2) {
    fail(ErrorCode::kInvalidArgument, "fov outline needs >= 2 samples per edge");
  }
  const double w = cam.width();
  const double h = cam.height();
  const int n = samples_per_edge;
  Polyline out;
  out.reserve(4 * n);
  auto emit = [&](double x, double y) {
    out.push_back(sphere_to_equirect_px(equirect, nfov_pixel_ray(cam, principal, {x, y})));
  };
  for (int i = 0; i < n; ++i) emit(w * i / n, 0.0);
  for (int i = 0; i < n; ++i) emit(w, h * i / n);
  for (int i = 0; i < n; ++i) emit(w - w * i / n, h);
  for (int i = 0; i < n; ++i) emit(0.0, h - h * i / n);
  return out;
}

std::vector<Polyline> fov_outline(const CameraModel& cam,
                                  const Direction& principal,
                                  ImageSize equirect, int samples_per_edge) {
  const Polyline ring = fov_border_points(cam, principal, equirect, samples_per_edge);
  const std::size_t n = ring.size();
  const double half_width = equirect.width / 2.0;

  // breaks[i]: the edge ring[i] -> ring[i+1] jumps across the seam.
  std::vector<bool> breaks(n);
  std::size_t first_break = n;
  for (std::size_t i = 0; i < n; ++i) {
    breaks[i] = std::fabs(ring[(i + 1) % n].x - ring[i].x) > half_width;
    if (breaks[i] && first_break == n) first_break = i;
  }

  if (first_break == n) {
    Polyline closed = ring;
    closed.push_back(ring.front());
    return {closed};
  }

  std::vector<Polyline> segments;
  Polyline current;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = (first_break + k) % n;
    current.push_back(ring[i]);
    if (breaks[i]) {
      segments.push_back(std::move(current));
      current.clear();
    }
  }
  return segments;
}

}  // namespace panocam
