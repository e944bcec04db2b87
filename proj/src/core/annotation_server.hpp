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
 * @file annotation_server.hpp
 * @brief JSON-over-HTTP front end of AnnotationStore.
 *
 * Endpoints (all bodies are JSON unless noted):
 *
 *   GET  /api/videos
 *        -> {"videos": [{video_id, fps, frame_count, width, height, duration}]}
 *   GET  /api/videos/{video_id}/frames/{index}            -> image/png
 *   GET  /api/fov_outline?theta=&phi=&width=&height=[&samples=&hfov=&aspect=]
 *        -> {"segments": [[[x, y], ...], ...]}
 *   POST /api/sessions
 *        {video_id, annotator_id, center_longitude, pass} -> 201 session
 *   GET  /api/sessions/{session_id}                       -> session
 *   POST /api/sessions/{session_id}/samples
 *        {"samples": [{t, theta, phi}, ...]} -> {accepted, sample_count}
 *   POST /api/sessions/{session_id}/finalize
 *        {"fps": f} -> {path, frame_count, trajectory}
 *
 * A session document is {session_id, video_id, annotator_id,
 * center_longitude, pass, sample_count, open}. Errors are returned as
 * {"error": {"code": name, "message": text}} with status 400 (bad request),
 * 404 (unknown video or session), 409 (duplicate or closed session),
 * 422 (insufficient coverage) or 500.
 */

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "annotation.hpp"
#include "error.hpp"
#include "json.hpp"

namespace panocam {

struct ServerOptions {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  /// Served at "/" when non-empty (the browser client).
  std::filesystem::path static_dir;
};

int http_status_for(ErrorCode code);
std::string error_code_name(ErrorCode code);

class AnnotationServer {
 public:
  AnnotationServer(AnnotationStore& store, ServerOptions options);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  /// Binds the socket; returns the bound port. Throws kIo on failure.
  int bind();
  /// Serves until stop(); bind() must have succeeded.
  void run();
  /// bind() then run() on a background thread; returns the bound port once
  /// the server accepts connections.
  int start();
  void stop();

  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace panocam
