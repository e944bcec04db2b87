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

// Command-line front end. Uses the C interface only.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "panocam/panocam.h"

namespace {

namespace fs = std::filesystem;

/// A failed C call; carries the status for the exit message.
struct CallError : std::runtime_error {
  pc_status status;
  CallError(pc_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(pc_status s) {
  if (s != PC_OK) throw CallError(s, pc_last_error());
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<pc_config, Deleter<pc_config, pc_config_free>>;
using ScoreMap = std::unique_ptr<pc_score_map, Deleter<pc_score_map, pc_score_map_free>>;
using Features = std::unique_ptr<pc_feature_set, Deleter<pc_feature_set, pc_feature_set_free>>;
using Model = std::unique_ptr<pc_model, Deleter<pc_model, pc_model_free>>;
using Trajectories =
    std::unique_ptr<pc_trajectory_set, Deleter<pc_trajectory_set, pc_trajectory_set_free>>;
using Server = std::unique_ptr<pc_server, Deleter<pc_server, pc_server_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  pc_string_free(s);
  return out;
}

/// Writes to `path` via a temporary and rename; "-" or empty is stdout.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw CallError(PC_ERR_IO, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

Features load_features(const std::string& path) {
  pc_feature_set* f = nullptr;
  check(pc_feature_set_load(path.c_str(), &f));
  return Features(f);
}

Trajectories load_trajectories(const std::string& path) {
  pc_trajectory_set* t = nullptr;
  check(pc_trajectory_set_load(path.c_str(), &t));
  return Trajectories(t);
}

void save_trajectories(const Trajectories& t, const std::string& path) {
  if (path.empty() || path == "-") {
    char* json = nullptr;
    check(pc_trajectory_set_to_json(t.get(), &json));
    std::cout << take(json);
    return;
  }
  check(pc_trajectory_set_save(t.get(), path.c_str()));
}

struct Globals {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

Config make_config(const Globals& g) {
  pc_config* c = nullptr;
  if (g.config_path.empty()) {
    check(pc_config_create(nullptr, &c));
  } else {
    check(pc_config_load(g.config_path.c_str(), &c));
  }
  Config config(c);
  for (const auto& patch : g.overrides) check(pc_config_merge(config.get(), patch.c_str()));
  return config;
}

/// --seed, else the config's seed; randomized commands refuse to run
/// without one.
std::uint64_t require_seed(const Globals& g, const Config& config, const char* command) {
  if (g.seed) return *g.seed;
  std::uint64_t s = 0;
  if (pc_config_seed(config.get(), &s) == PC_OK) return s;
  throw UsageError(std::string(command) + " is randomized and requires --seed (or a config seed)");
}

pc_server* g_running_server = nullptr;

void on_signal(int) {
  if (g_running_server) pc_server_stop(g_running_server);
}

void warning_to_stderr(const char* message, void*) { std::cerr << "warning: " << message << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"panocam: automatic NFOV camera trajectories for 360 video"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(pc_version()));

  Globals g;
  app.add_option("-c,--config", g.config_path, "Pipeline config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--set", g.overrides, "JSON merge patch applied to the config (repeatable)");
  app.add_option("--seed", g.seed, "Seed for randomized commands");

  std::function<void()> action;

  // grid
  auto* grid = app.add_subcommand("grid", "Describe the glimpse lattice for a video duration");
  double grid_duration = 0.0;
  std::string grid_out;
  grid->add_option("--duration", grid_duration, "Video duration in seconds")->required();
  grid->add_option("-o,--out", grid_out, "Output file (default stdout)");
  grid->callback([&] {
    action = [&] {
      auto config = make_config(g);
      char* json = nullptr;
      check(pc_grid_describe(config.get(), grid_duration, &json));
      write_output(grid_out, take(json));
    };
  });

  // score
  auto* score = app.add_subcommand("score", "Produce a capture-worthiness score map");
  score->require_subcommand(1);
  std::string score_out, score_in, score_frames, score_video, score_model, score_features;
  double score_duration = 0.0;

  auto* score_file = score->add_subcommand("file", "Validate and normalize an existing map");
  score_file->add_option("--in", score_in, "Score map file")->required()->check(CLI::ExistingFile);
  score_file->add_option("-o,--out", score_out, "Output score map")->required();
  score_file->callback([&] {
    action = [&] {
      auto config = make_config(g);
      pc_score_map* m = nullptr;
      check(pc_score_map_load(config.get(), score_in.c_str(), &m));
      ScoreMap map(m);
      check(pc_score_map_save(map.get(), score_out.c_str()));
    };
  });

  auto* score_standin = score->add_subcommand("standin", "Image-statistics stand-in scorer");
  score_standin->add_option("--frames", score_frames, "Equirect frame directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  score_standin->add_option("--video-id", score_video, "Video id")->required();
  score_standin->add_option("-o,--out", score_out, "Output score map")->required();
  score_standin->callback([&] {
    action = [&] {
      auto config = make_config(g);
      pc_score_map* m = nullptr;
      check(pc_score_map_standin(config.get(), score_frames.c_str(), score_video.c_str(), &m));
      ScoreMap map(m);
      check(pc_score_map_save(map.get(), score_out.c_str()));
    };
  });

  auto* score_model_cmd = score->add_subcommand("model", "Score glimpse features with a model");
  score_model_cmd->add_option("--model", score_model, "Worthiness model")
      ->required()
      ->check(CLI::ExistingFile);
  score_model_cmd->add_option("--features", score_features, "Per-glimpse feature set")
      ->required()
      ->check(CLI::ExistingFile);
  score_model_cmd->add_option("--duration", score_duration, "Video duration in seconds")
      ->required();
  score_model_cmd->add_option("--video-id", score_video, "Video id")->required();
  score_model_cmd->add_option("-o,--out", score_out, "Output score map")->required();
  score_model_cmd->callback([&] {
    action = [&] {
      auto config = make_config(g);
      pc_model* md = nullptr;
      check(pc_model_load(score_model.c_str(), &md));
      Model model(md);
      auto feats = load_features(score_features);
      pc_score_map* m = nullptr;
      check(pc_score_map_from_model(config.get(), model.get(), feats.get(), score_duration,
                                    score_video.c_str(), &m));
      ScoreMap map(m);
      check(pc_score_map_save(map.get(), score_out.c_str()));
    };
  });

  // train
  auto* train = app.add_subcommand("train", "Train a capture-worthiness classifier");
  std::string train_data, train_humancam, train_glimpses, train_heldout, train_out, train_trace;
  auto* data_opt = train->add_option("--data", train_data, "Pre-assembled labeled feature set")
                       ->check(CLI::ExistingFile);
  auto* hc_opt = train->add_option("--humancam", train_humancam, "HumanCam features (positives)")
                     ->check(CLI::ExistingFile);
  auto* gl_opt = train->add_option("--glimpses", train_glimpses, "Glimpse features (negatives)")
                     ->check(CLI::ExistingFile);
  train->add_option("--heldout", train_heldout, "Video whose glimpses are excluded");
  train->add_option("-o,--out", train_out, "Output model")->required();
  train->add_option("--trace", train_trace, "Write the optimizer trace here");
  data_opt->excludes(hc_opt)->excludes(gl_opt);
  hc_opt->needs(gl_opt);
  gl_opt->needs(hc_opt);
  train->callback([&] {
    action = [&] {
      auto config = make_config(g);
      Features data;
      if (!train_data.empty()) {
        data = load_features(train_data);
      } else if (!train_humancam.empty()) {
        const auto seed = require_seed(g, config, "train");
        auto hc = load_features(train_humancam);
        auto gl = load_features(train_glimpses);
        pc_feature_set* assembled = nullptr;
        check(pc_assemble_training_set(hc.get(), gl.get(), train_heldout.c_str(), seed,
                                       &assembled));
        data.reset(assembled);
      } else {
        throw UsageError("train needs --data or --humancam with --glimpses");
      }
      pc_model* m = nullptr;
      char* trace = nullptr;
      check(pc_train_worthiness(config.get(), data.get(), &m, &trace));
      Model model(m);
      const std::string trace_json = take(trace);
      check(pc_model_save(model.get(), train_out.c_str()));
      if (!train_trace.empty()) write_output(train_trace, trace_json);
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Top-K trajectories from a score map");
  std::string solve_scores, solve_out;
  solve->add_option("--scores", solve_scores, "Score map")->required()->check(CLI::ExistingFile);
  solve->add_option("-o,--out", solve_out, "Output trajectory file (default stdout)");
  solve->callback([&] {
    action = [&] {
      auto config = make_config(g);
      pc_score_map* m = nullptr;
      check(pc_score_map_load(config.get(), solve_scores.c_str(), &m));
      ScoreMap map(m);
      pc_trajectory_set* t = nullptr;
      check(pc_solve(config.get(), map.get(), &t));
      save_trajectories(Trajectories(t), solve_out);
    };
  });

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Reference trajectory generators");
  baseline->require_subcommand(1);
  std::string base_out, base_video, base_scores;
  double base_duration = 0.0;
  int base_count = 20;
  bool base_raw = false;

  auto* center = baseline->add_subcommand("center", "Random walk from the front direction");
  center->add_option("--duration", base_duration, "Video duration in seconds")->required();
  center->add_option("--video-id", base_video, "Video id")->required();
  center->add_option("--count", base_count, "Number of samples")->check(CLI::PositiveNumber);
  center->add_flag("--raw", base_raw, "Emit the walk before lattice snapping");
  center->add_option("-o,--out", base_out, "Output trajectory file (default stdout)");
  center->callback([&] {
    action = [&] {
      auto config = make_config(g);
      const auto seed = require_seed(g, config, "baseline center");
      pc_trajectory_set* t = nullptr;
      check(pc_baseline_center(config.get(), base_duration, base_video.c_str(), base_count, seed,
                               base_raw ? 1 : 0, &t));
      save_trajectories(Trajectories(t), base_out);
    };
  });

  auto* eyelevel = baseline->add_subcommand("eyelevel", "Static trajectories at latitude 0");
  eyelevel->add_option("--duration", base_duration, "Video duration in seconds")->required();
  eyelevel->add_option("--video-id", base_video, "Video id")->required();
  eyelevel->add_option("-o,--out", base_out, "Output trajectory file (default stdout)");
  eyelevel->callback([&] {
    action = [&] {
      auto config = make_config(g);
      pc_trajectory_set* t = nullptr;
      check(pc_baseline_eye_level(config.get(), base_duration, base_video.c_str(), &t));
      save_trajectories(Trajectories(t), base_out);
    };
  });

  auto* nostitch = baseline->add_subcommand("nostitch", "Per-step softmax samples, no smoothing");
  nostitch->add_option("--scores", base_scores, "Score map")->required()->check(CLI::ExistingFile);
  nostitch->add_option("--count", base_count, "Number of samples")->check(CLI::PositiveNumber);
  nostitch->add_option("-o,--out", base_out, "Output trajectory file (default stdout)");
  nostitch->callback([&] {
    action = [&] {
      auto config = make_config(g);
      const auto seed = require_seed(g, config, "baseline nostitch");
      pc_score_map* m = nullptr;
      check(pc_score_map_load(config.get(), base_scores.c_str(), &m));
      ScoreMap map(m);
      pc_trajectory_set* t = nullptr;
      check(pc_baseline_no_stitch(config.get(), map.get(), base_count, seed, &t));
      save_trajectories(Trajectories(t), base_out);
    };
  });

  // interp
  auto* interp = app.add_subcommand("interp", "Per-frame directions from lattice trajectories");
  std::string interp_in, interp_out;
  double interp_fps = 30.0;
  interp->add_option("--in", interp_in, "Discrete trajectory file")
      ->required()
      ->check(CLI::ExistingFile);
  interp->add_option("--fps", interp_fps, "Output frame rate")->check(CLI::PositiveNumber);
  interp->add_option("-o,--out", interp_out, "Output trajectory file (default stdout)");
  interp->callback([&] {
    action = [&] {
      auto in = load_trajectories(interp_in);
      pc_trajectory_set* t = nullptr;
      check(pc_interpolate(in.get(), interp_fps, &t));
      save_trajectories(Trajectories(t), interp_out);
    };
  });

  // render
  auto* render = app.add_subcommand("render", "Render NFOV frames along a trajectory");
  std::string render_frames, render_traj, render_out;
  std::size_t render_index = 0;
  int render_first = 0;
  int render_count = -1;
  render->add_option("--frames", render_frames, "Equirect frame directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  render->add_option("--trajectory", render_traj, "Trajectory file")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--index", render_index, "Trajectory index within the file");
  render->add_option("--first", render_first, "First source frame");
  render->add_option("--count", render_count, "Number of frames (default: all)");
  render->add_option("-o,--out", render_out, "Output frame directory")->required();
  render->callback([&] {
    action = [&] {
      auto config = make_config(g);
      auto traj = load_trajectories(render_traj);
      check(pc_render(config.get(), render_frames.c_str(), traj.get(), render_index,
                      render_out.c_str(), render_first, render_count));
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  std::string eval_out, eval_table, eval_gen, eval_human_fs, eval_source, eval_target;
  std::vector<std::string> eval_generated, eval_humans, eval_methods;

  auto write_report = [&](const std::string& json, const std::string& table) {
    write_output(eval_out, json);
    if (!eval_table.empty()) write_output(eval_table, table);
  };

  auto* humanedit = eval->add_subcommand("humanedit", "Similarity to human-edited trajectories");
  humanedit->add_option("--generated", eval_generated, "Generated trajectory files")
      ->required()
      ->check(CLI::ExistingFile);
  humanedit->add_option("--human", eval_humans, "Human trajectory files")
      ->required()
      ->check(CLI::ExistingFile);
  humanedit->add_option("-o,--out", eval_out, "Report JSON (default stdout)");
  humanedit->add_option("--table", eval_table, "Also write an aligned text table");
  humanedit->callback([&] {
    action = [&] {
      auto config = make_config(g);
      std::vector<Trajectories> gen, hum;
      std::vector<const pc_trajectory_set*> gen_ptrs, hum_ptrs;
      for (const auto& p : eval_generated) gen_ptrs.push_back(gen.emplace_back(load_trajectories(p)).get());
      for (const auto& p : eval_humans) hum_ptrs.push_back(hum.emplace_back(load_trajectories(p)).get());
      char* json = nullptr;
      char* table = nullptr;
      check(pc_eval_humanedit(config.get(), gen_ptrs.data(), gen_ptrs.size(), hum_ptrs.data(),
                              hum_ptrs.size(), &json, &table));
      const std::string j = take(json);
      write_report(j, take(table));
    };
  });

  auto* consistency = eval->add_subcommand("consistency", "Agreement between annotators");
  consistency->add_option("--human", eval_humans, "Human trajectory files")
      ->required()
      ->check(CLI::ExistingFile);
  consistency->add_option("-o,--out", eval_out, "Report JSON (default stdout)");
  consistency->add_option("--table", eval_table, "Also write an aligned text table");
  consistency->callback([&] {
    action = [&] {
      auto config = make_config(g);
      std::vector<Trajectories> hum;
      std::vector<const pc_trajectory_set*> ptrs;
      for (const auto& p : eval_humans) ptrs.push_back(hum.emplace_back(load_trajectories(p)).get());
      char* json = nullptr;
      char* table = nullptr;
      check(pc_eval_consistency(config.get(), ptrs.data(), ptrs.size(), &json, &table));
      const std::string j = take(json);
      write_report(j, take(table));
    };
  });

  auto* distinguish = eval->add_subcommand("distinguish", "Cross-validated classifier error");
  distinguish->add_option("--gen", eval_gen, "Generated clip features")
      ->required()
      ->check(CLI::ExistingFile);
  distinguish->add_option("--human", eval_human_fs, "Human clip features")
      ->required()
      ->check(CLI::ExistingFile);
  distinguish->add_option("-o,--out", eval_out, "Report JSON (default stdout)");
  distinguish->callback([&] {
    action = [&] {
      auto config = make_config(g);
      const auto seed = require_seed(g, config, "eval distinguish");
      auto gen = load_features(eval_gen);
      auto human = load_features(eval_human_fs);
      char* json = nullptr;
      check(pc_eval_distinguishability(config.get(), gen.get(), human.get(), seed, &json));
      write_output(eval_out, take(json));
    };
  });

  auto* likeness = eval->add_subcommand("likeness", "Leave-one-video-out human-likeness ranking");
  likeness->add_option("--method", eval_methods, "NAME=FEATURES for each method")->required();
  likeness->add_option("--human", eval_human_fs, "Human clip features")
      ->required()
      ->check(CLI::ExistingFile);
  likeness->add_option("-o,--out", eval_out, "Report JSON (default stdout)");
  likeness->callback([&] {
    action = [&] {
      auto config = make_config(g);
      std::vector<std::string> names;
      std::vector<Features> sets;
      std::vector<const char*> name_ptrs;
      std::vector<const pc_feature_set*> set_ptrs;
      for (const auto& spec : eval_methods) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
          throw UsageError("--method expects NAME=FEATURES, got '" + spec + "'");
        }
        names.push_back(spec.substr(0, eq));
        sets.push_back(load_features(spec.substr(eq + 1)));
      }
      for (std::size_t i = 0; i < names.size(); ++i) {
        name_ptrs.push_back(names[i].c_str());
        set_ptrs.push_back(sets[i].get());
      }
      auto human = load_features(eval_human_fs);
      char* json = nullptr;
      check(pc_eval_likeness(config.get(), name_ptrs.data(), set_ptrs.data(), names.size(),
                             human.get(), &json));
      write_output(eval_out, take(json));
    };
  });

  auto* transfer = eval->add_subcommand("transfer", "Cross-domain multi-class accuracy");
  transfer->add_option("--source", eval_source, "Training feature set")
      ->required()
      ->check(CLI::ExistingFile);
  transfer->add_option("--target", eval_target, "Test feature set")
      ->required()
      ->check(CLI::ExistingFile);
  transfer->add_option("-o,--out", eval_out, "Report JSON (default stdout)");
  transfer->callback([&] {
    action = [&] {
      auto config = make_config(g);
      auto source = load_features(eval_source);
      auto target = load_features(eval_target);
      double accuracy = 0.0;
      check(pc_eval_transferability(config.get(), source.get(), target.get(), &accuracy));
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", accuracy);
      write_output(eval_out, std::string("{\n  \"metric\": \"transferability\",\n  \"accuracy\": ") +
                                 buf + "\n}\n");
    };
  });

  // analyze-scores
  auto* analyze = app.add_subcommand("analyze-scores", "Score histogram and per-angle fractions");
  std::vector<std::string> analyze_maps;
  std::string analyze_out;
  double analyze_hi = 0.95;
  double analyze_lo = 0.05;
  int analyze_bins = 20;
  analyze->add_option("--scores", analyze_maps, "Score map files")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--hi", analyze_hi, "Capture-worthy threshold");
  analyze->add_option("--lo", analyze_lo, "Non-capture-worthy threshold");
  analyze->add_option("--bins", analyze_bins, "Histogram bins")->check(CLI::PositiveNumber);
  analyze->add_option("-o,--out", analyze_out, "Output JSON (default stdout)");
  analyze->callback([&] {
    action = [&] {
      auto config = make_config(g);
      std::vector<ScoreMap> maps;
      std::vector<const pc_score_map*> ptrs;
      for (const auto& p : analyze_maps) {
        pc_score_map* m = nullptr;
        check(pc_score_map_load(config.get(), p.c_str(), &m));
        ptrs.push_back(maps.emplace_back(m).get());
      }
      char* json = nullptr;
      check(pc_analyze_scores(ptrs.data(), ptrs.size(), analyze_hi, analyze_lo, analyze_bins,
                              &json));
      write_output(analyze_out, take(json));
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "Run the annotation server");
  std::string serve_videos, serve_out, serve_host = "127.0.0.1", serve_static;
  int serve_port = 8080;
  serve->add_option("--videos", serve_videos, "Directory of video frame directories")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve->add_option("-o,--out", serve_out, "Directory for finalized trajectories")->required();
  serve->add_option("--host", serve_host, "Listen address");
  serve->add_option("--port", serve_port, "Listen port (0 picks a free one)");
  serve->add_option("--static", serve_static, "Serve this directory at /")
      ->check(CLI::ExistingDirectory);
  serve->callback([&] {
    action = [&] {
      pc_server* s = nullptr;
      check(pc_server_create(serve_videos.c_str(), serve_out.c_str(), serve_host.c_str(),
                             serve_port, serve_static.empty() ? nullptr : serve_static.c_str(),
                             &s));
      Server server(s);
      int port = 0;
      check(pc_server_bind(server.get(), &port));
      std::cout << "listening on http://" << serve_host << ":" << port << std::endl;
      g_running_server = server.get();
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      check(pc_server_run(server.get()));
      g_running_server = nullptr;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  pc_set_warning_callback(warning_to_stderr, nullptr);
  try {
    if (action) action();
  } catch (const CallError& e) {
    std::cerr << "error (" << pc_status_name(e.status) << "): " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
