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

#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "error.hpp"

namespace panocam {
namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(begin, end) over [0, n) split into contiguous chunks.
template <typename Body>
void parallel_chunks(int n, int threads, Body body) {
  threads = std::clamp(threads, 1, std::max(n, 1));
  if (threads == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int k = 0; k < threads; ++k) {
    const int begin = n * k / threads;
    const int end = n * (k + 1) / threads;
    pool.emplace_back([&, k, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void sample_bilinear(const EquirectImage& src, PixelCoord px, float* out) {
  const int w = src.width();
  const int h = src.height();
  const double sx = px.x - 0.5;
  const double sy = px.y - 0.5;
  const double fx0 = std::floor(sx);
  const double fy0 = std::floor(sy);
  const double ax = sx - fx0;
  const double ay = sy - fy0;

  int x0 = static_cast<int>(std::fmod(fx0, static_cast<double>(w)));
  if (x0 < 0) x0 += w;
  const int x1 = x0 + 1 == w ? 0 : x0 + 1;
  const int y0 = std::clamp(static_cast<int>(fy0), 0, h - 1);
  const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, h - 1);

  for (int c = 0; c < src.channels(); ++c) {
    const double top = (1.0 - ax) * src.at(x0, y0, c) + ax * src.at(x1, y0, c);
    const double bottom = (1.0 - ax) * src.at(x0, y1, c) + ax * src.at(x1, y1, c);
    out[c] = static_cast<float>((1.0 - ay) * top + ay * bottom);
  }
}

Image render_frame(const EquirectImage& src, const CameraModel& cam,
                   const Direction& principal, int threads) {
  if (src.empty() || src.width() == 0 || src.height() == 0) {
    fail(ErrorCode::kInvalidArgument, "cannot render from an empty source frame");
  }
  Image out(cam.width(), cam.height(), src.channels());
  const CameraFrame frame = CameraFrame::at(principal);
  const double w = cam.width();
  const double h = cam.height();
  const double src_w = src.width();
  const double src_h = src.height();
  constexpr double kRadToDeg = 180.0 / std::numbers::pi;

  parallel_chunks(cam.height(), resolve_threads(threads), [&](int row_begin, int row_end) {
    for (int j = row_begin; j < row_end; ++j) {
      const double b = (1.0 - 2.0 * (j + 0.5) / h) * cam.tan_half_v();
      for (int i = 0; i < cam.width(); ++i) {
        const double a = (2.0 * (i + 0.5) / w - 1.0) * cam.tan_half_h();
        const Vec3 ray = frame.to_world(a, b);
        const double horiz = std::hypot(ray[0], ray[1]);
        const double theta = std::atan2(ray[2], horiz) * kRadToDeg;
        double phi = std::atan2(ray[1], ray[0]) * kRadToDeg;
        if (phi < 0.0) phi += 360.0;
        const PixelCoord px{phi / 360.0 * src_w, (90.0 - theta) / 180.0 * src_h};
        sample_bilinear(src, px, &out.at(i, j, 0));
      }
    }
  });
  return out;
}

void render_video(const RenderJob& job, const FrameSink& sink) {
  if (job.frames == nullptr) fail(ErrorCode::kInvalidArgument, "render job has no frames");
  const int available = job.trajectory.size();
  const int count = job.frame_count < 0 ? available - job.first_frame : job.frame_count;
  if (job.first_frame < 0 || count < 0) {
    fail(ErrorCode::kInvalidArgument, "render span must be non-negative");
  }
  if (job.first_frame + count > available) {
    std::ostringstream os;
    os << "trajectory has " << available << " directions but frames ["
       << job.first_frame << ", " << job.first_frame + count << ") were requested";
    fail(ErrorCode::kIncomplete, os.str());
  }
  if (job.first_frame + count > job.frames->size()) {
    std::ostringstream os;
    os << "source has " << job.frames->size() << " frames but frames ["
       << job.first_frame << ", " << job.first_frame + count << ") were requested";
    fail(ErrorCode::kIncomplete, os.str());
  }
  if (std::fabs(job.trajectory.fps - job.frames->fps()) > 1e-9) {
    std::ostringstream os;
    os << "trajectory fps " << job.trajectory.fps << " differs from source fps "
       << job.frames->fps();
    fail(ErrorCode::kInvalidArgument, os.str());
  }

  const int threads = std::max(1, resolve_threads(job.threads));
  std::vector<Image> batch;
  for (int start = 0; start < count; start += threads) {
    const int n = std::min(threads, count - start);
    batch.assign(n, Image());
    parallel_chunks(n, n, [&](int begin, int end) {
      for (int k = begin; k < end; ++k) {
        const int index = job.first_frame + start + k;
        batch[k] = render_frame(job.frames->frame(index), job.cam,
                                job.trajectory.directions[index], 1);
      }
    });
    for (int k = 0; k < n; ++k) sink(job.first_frame + start + k, batch[k]);
  }
}

}  // namespace panocam
