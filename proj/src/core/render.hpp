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

#include <functional>

#include "image.hpp"
#include "sphere_geom.hpp"
#include "trajectory.hpp"

namespace panocam {

/// Bilinear lookup at continuous equirectangular coordinates. Columns wrap
/// around the longitude seam, rows clamp at the poles. `out` receives one
/// value per channel.
void sample_bilinear(const EquirectImage& src, PixelCoord px, float* out);

/// Renders the NFOV view of `principal`. `threads` <= 0 picks the hardware
/// concurrency; the output does not depend on the thread count.
Image render_frame(const EquirectImage& src, const CameraModel& cam,
                   const Direction& principal, int threads = 1);

struct RenderJob {
  const FrameSource* frames = nullptr;
  ContinuousTrajectory trajectory;
  CameraModel cam;
  /// Render source frames [first_frame, first_frame + frame_count);
  /// frame_count < 0 means the whole trajectory.
  int first_frame = 0;
  int frame_count = -1;
  /// Frames rendered concurrently; <= 0 picks the hardware concurrency.
  int threads = 1;
};

using FrameSink = std::function<void(int frame_index, const Image& frame)>;

/// Frame i is rendered at trajectory.directions[i]. The sink is called in
/// increasing frame order regardless of `threads`.
void render_video(const RenderJob& job, const FrameSink& sink);

}  // namespace panocam
