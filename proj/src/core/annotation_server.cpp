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

#include "annotation_server.hpp"

#include <thread>

#include "httplib.h"
#include "json_io.hpp"
#include "sphere_geom.hpp"

namespace panocam {
namespace {

using Json = nlohmann::ordered_json;

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, {{"error", {{"code", error_code_name(code)}, {"message", message}}}},
            http_status_for(code));
}

nlohmann::json parse_body(const httplib::Request& req) {
  auto j = parse_json(req.body, "request body");
  if (!j.is_object()) fail(ErrorCode::kSchema, "request body must be a JSON object");
  return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::kSchema, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::kSchema, std::string("field '") + key + "' has the wrong type");
  }
}

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(ErrorCode::kSchema, std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

double query_number(const httplib::Request& req, const char* key, std::optional<double> fallback) {
  if (!req.has_param(key)) {
    if (fallback) return *fallback;
    fail(ErrorCode::kInvalidArgument, std::string("missing query parameter '") + key + "'");
  }
  const std::string text = req.get_param_value(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kInvalidArgument, std::string("query parameter '") + key + "' is not a number");
  }
}

int as_int(double v, const char* key) {
  if (v != std::floor(v) || v < -2147483648.0 || v > 2147483647.0) {
    fail(ErrorCode::kInvalidArgument, std::string("'") + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

Json session_json(const SessionInfo& s) {
  return {{"session_id", s.session_id},
          {"video_id", s.video_id},
          {"annotator_id", s.annotator_id},
          {"center_longitude", s.center_longitude},
          {"pass", s.pass},
          {"sample_count", s.sample_count},
          {"open", s.open}};
}

Json video_json(const VideoInfo& v) {
  return {{"video_id", v.video_id},
          {"fps", v.metadata.fps},
          {"frame_count", v.metadata.frame_count},
          {"width", v.metadata.width},
          {"height", v.metadata.height},
          {"duration", v.duration()}};
}

/// Runs `body`, translating library errors into JSON error responses.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, e.code(), e.what());
  } catch (const std::exception& e) {
    send_error(res, ErrorCode::kInternal, e.what());
  }
}

}  // namespace

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kParse:
    case ErrorCode::kSchema:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kState:
      return 409;
    case ErrorCode::kIncomplete:
    case ErrorCode::kDegenerateData:
      return 422;
    default:
      return 500;
  }
}

std::string error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kDegenerateData: return "degenerate_data";
    case ErrorCode::kIncomplete: return "incomplete";
    case ErrorCode::kState: return "state";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

struct AnnotationServer::Impl {
  AnnotationStore& store;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;
  int port = -1;

  Impl(AnnotationStore& s, ServerOptions o) : store(s), options(std::move(o)) { routes(); }

  void routes() {
    server.Get("/api/videos", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        Json list = Json::array();
        for (const auto& v : store.videos()) list.push_back(video_json(v));
        send_json(res, {{"videos", list}});
      });
    });

    server.Get(R"(/api/videos/([^/]+)/frames/(\d+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   const VideoInfo v = store.video(req.matches[1]);
                   const long index = std::stol(req.matches[2]);
                   if (index < 0 || index >= v.metadata.frame_count) {
                     fail(ErrorCode::kNotFound, "frame " + std::string(req.matches[2]) +
                                                    " out of range for video '" + v.video_id + "'");
                   }
                   const std::string bytes = read_text_file(
                       v.dir / frame_file_name(v.metadata, static_cast<int>(index)));
                   res.set_content(bytes, "image/png");
                 });
               });

    server.Get("/api/fov_outline", [](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const Direction principal(query_number(req, "theta", std::nullopt),
                                  query_number(req, "phi", std::nullopt));
        const ImageSize size{as_int(query_number(req, "width", std::nullopt), "width"),
                             as_int(query_number(req, "height", std::nullopt), "height")};
        const int samples = as_int(query_number(req, "samples", 16.0), "samples");
        const CameraModel cam(query_number(req, "hfov", kDefaultHfovDeg),
                              query_number(req, "aspect", kDefaultAspect));
        Json segments = Json::array();
        for (const auto& line : fov_outline(cam, principal, size, samples)) {
          Json points = Json::array();
          for (const auto& p : line) points.push_back({p.x, p.y});
          segments.push_back(std::move(points));
        }
        send_json(res, {{"segments", segments}});
      });
    });

    server.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = parse_body(req);
        const double center = body.contains("center_longitude")
                                  ? number_field(body, "center_longitude")
                                  : 0.0;
        const std::string id = store.create_session(field<std::string>(body, "video_id"),
                                                    field<std::string>(body, "annotator_id"),
                                                    center, field<int>(body, "pass"));
        send_json(res, session_json(store.session(id)), 201);
      });
    });

    server.Get(R"(/api/sessions/([^/]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] { send_json(res, session_json(store.session(req.matches[1]))); });
               });

    server.Post(R"(/api/sessions/([^/]+)/samples)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const auto body = parse_body(req);
                    if (!body.contains("samples") || !body.at("samples").is_array()) {
                      fail(ErrorCode::kSchema, "field 'samples' must be an array");
                    }
                    std::vector<AnnotationSample> batch;
                    for (const auto& s : body.at("samples")) {
                      if (!s.is_object()) fail(ErrorCode::kSchema, "each sample must be an object");
                      batch.push_back({number_field(s, "t"), number_field(s, "theta"),
                                       number_field(s, "phi")});
                    }
                    const std::size_t n = store.record_samples(req.matches[1], batch);
                    send_json(res, {{"accepted", batch.size()}, {"sample_count", n}});
                  });
                });

    server.Post(R"(/api/sessions/([^/]+)/finalize)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const auto body = parse_body(req);
                    const TrajectorySet set =
                        store.finalize(req.matches[1], number_field(body, "fps"));
                    const SessionInfo info = store.session(req.matches[1]);
                    send_json(res, {{"path", info.output.string()},
                                    {"frame_count", set.trajectories.front().size()},
                                    {"trajectory", trajectory_set_to_json(set)}});
                  });
                });

    if (!options.static_dir.empty()) {
      if (!server.set_mount_point("/", options.static_dir.string())) {
        fail(ErrorCode::kIo, "cannot serve static directory '" + options.static_dir.string() + "'");
      }
    }
  }
};

AnnotationServer::AnnotationServer(AnnotationStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::bind() {
  const auto& o = impl_->options;
  const int port = o.port == 0 ? impl_->server.bind_to_any_port(o.host)
                               : (impl_->server.bind_to_port(o.host, o.port) ? o.port : -1);
  if (port < 0) {
    fail(ErrorCode::kIo, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  impl_->port = port;
  return port;
}

void AnnotationServer::run() {
  if (impl_->port < 0) fail(ErrorCode::kState, "server is not bound");
  impl_->server.listen_after_bind();
}

int AnnotationServer::start() {
  const int port = bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void AnnotationServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int AnnotationServer::port() const { return impl_->port; }

}  // namespace panocam
