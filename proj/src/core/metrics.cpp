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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"

namespace panocam {

SimilarityMeasure SimilarityMeasure::overlap(double fov) {
  if (!(fov > 0.0)) fail(ErrorCode::kInvalidArgument, "overlap fov must be positive");
  return {Kind::kOverlap, fov};
}

std::string SimilarityMeasure::name() const {
  return kind == Kind::kCosine ? "cosine" : "overlap";
}

std::string pooling_name(Pooling p) { return p == Pooling::kTrajectory ? "trajectory" : "frame"; }

double overlap_from_angle(double delta_deg, double fov_deg) {
  return std::max(1.0 - delta_deg / fov_deg, 0.0);
}

double direction_similarity(const Direction& a, const Direction& b, const SimilarityMeasure& m) {
  if (m.kind == SimilarityMeasure::Kind::kCosine) {
    const Vec3 u = a.unit_vector();
    const Vec3 v = b.unit_vector();
    return std::clamp(u[0] * v[0] + u[1] * v[1] + u[2] * v[2], -1.0, 1.0);
  }
  if (!(m.fov > 0.0)) fail(ErrorCode::kInvalidArgument, "overlap fov must be positive");
  return overlap_from_angle(angular_distance(a, b), m.fov);
}

namespace {

/// Nearest-frame resampling of `traj` to `count` frames.
std::vector<Direction> stretch(const ContinuousTrajectory& traj, int count) {
  const int n = traj.size();
  if (n == count) return traj.directions;
  std::vector<Direction> out(count);
  for (int j = 0; j < count; ++j) {
    const int src = std::min(n - 1, static_cast<int>((j + 0.5) * n / count));
    out[j] = traj.directions[src];
  }
  return out;
}

void check_comparable(const ContinuousTrajectory& a, const ContinuousTrajectory& b) {
  if (a.directions.empty() || b.directions.empty()) {
    fail(ErrorCode::kInvalidArgument, "cannot compare empty trajectories");
  }
  if (std::fabs(a.fps - b.fps) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "trajectories have different fps (" +
                                          std::to_string(a.fps) + " vs " +
                                          std::to_string(b.fps) + "); resample first");
  }
  if (std::abs(a.size() - b.size()) > 1) {
    fail(ErrorCode::kInvalidArgument, "trajectory lengths differ by more than one frame (" +
                                          std::to_string(a.size()) + " vs " +
                                          std::to_string(b.size()) + ")");
  }
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> framewise_similarity(const ContinuousTrajectory& a,
                                         const ContinuousTrajectory& b,
                                         const SimilarityMeasure& m) {
  check_comparable(a, b);
  const int count = std::max(a.size(), b.size());
  const auto da = stretch(a, count);
  const auto db = stretch(b, count);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = direction_similarity(da[i], db[i], m);
  return out;
}

double pool(const ContinuousTrajectory& gen, const std::vector<ContinuousTrajectory>& humans,
            const SimilarityMeasure& m, Pooling pooling) {
  if (humans.empty()) fail(ErrorCode::kInvalidArgument, "pooling needs at least one human trajectory");
  // Every human is aligned to the generated trajectory's frames so that
  // frame pooling compares the same instants across humans.
  std::vector<std::vector<double>> per_human;
  per_human.reserve(humans.size());
  for (const auto& h : humans) {
    check_comparable(gen, h);
    const ContinuousTrajectory aligned{h.fps, stretch(h, gen.size())};
    per_human.push_back(framewise_similarity(gen, aligned, m));
  }

  if (pooling == Pooling::kTrajectory) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : per_human) best = std::max(best, mean(s));
    return best;
  }
  std::vector<double> frame_best(gen.size(), -std::numeric_limits<double>::infinity());
  for (const auto& s : per_human) {
    for (int i = 0; i < gen.size(); ++i) frame_best[i] = std::max(frame_best[i], s[i]);
  }
  return mean(frame_best);
}

nlohmann::ordered_json MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title;
  j["columns"] = columns;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) rows_json.push_back({{"name", r.name}, {"values", r.values}});
  j["rows"] = std::move(rows_json);
  j["details"] = details;
  return j;
}

std::string MetricReport::to_table() const {
  std::size_t name_width = 6;
  for (const auto& r : rows) name_width = std::max(name_width, r.name.size());
  std::vector<std::size_t> widths;
  for (const auto& c : columns) widths.push_back(std::max<std::size_t>(c.size(), 7));

  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  out << std::left << std::setw(static_cast<int>(name_width)) << "" << std::right;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << "  " << std::setw(static_cast<int>(widths[c])) << columns[c];
  }
  out << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(name_width)) << r.name << std::right;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << "  " << std::setw(static_cast<int>(widths[c]));
      if (c < r.values.size()) {
        out << r.values[c];
      } else {
        out << "-";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<SimilaritySetting> similarity_settings(double fov) {
  return {{SimilarityMeasure::cosine(), Pooling::kTrajectory},
          {SimilarityMeasure::cosine(), Pooling::kFrame},
          {SimilarityMeasure::overlap(fov), Pooling::kTrajectory},
          {SimilarityMeasure::overlap(fov), Pooling::kFrame}};
}

std::vector<std::string> similarity_columns() {
  return {"cosine/trajectory", "cosine/frame", "overlap/trajectory", "overlap/frame"};
}

MetricReport consistency_report(
    const std::map<std::string, std::vector<AnnotatedTrajectory>>& humans_by_video, double fov) {
  const auto settings = similarity_settings(fov);
  std::vector<double> sums(settings.size(), 0.0);
  std::size_t count = 0;
  MetricReport report;
  report.title = "HumanEdit consistency";
  report.columns = similarity_columns();

  for (const auto& [video, humans] : humans_by_video) {
    std::set<std::string> annotators;
    for (const auto& h : humans) annotators.insert(h.annotator);
    if (annotators.size() < 2) {
      warn("video '" + video + "' has fewer than two annotators; skipped in consistency");
      continue;
    }
    std::vector<double> video_sums(settings.size(), 0.0);
    for (const auto& h : humans) {
      std::vector<ContinuousTrajectory> others;
      for (const auto& o : humans) {
        if (o.annotator != h.annotator) others.push_back(o.trajectory);
      }
      for (std::size_t s = 0; s < settings.size(); ++s) {
        const double v = pool(h.trajectory, others, settings[s].measure, settings[s].pooling);
        sums[s] += v;
        video_sums[s] += v;
      }
      ++count;
    }
    auto& d = report.details[video];
    for (std::size_t s = 0; s < settings.size(); ++s) {
      d[report.columns[s]] = video_sums[s] / static_cast<double>(humans.size());
    }
  }
  if (count == 0) fail(ErrorCode::kInvalidArgument, "consistency needs at least two annotators for some video");
  MetricReport::Row row{"HumanEdit", {}};
  for (double s : sums) row.values.push_back(s / static_cast<double>(count));
  report.rows.push_back(std::move(row));
  return report;
}

MetricReport humanedit_report(
    const std::map<std::string, MethodTrajectories>& generated_by_method,
    const std::map<std::string, std::vector<ContinuousTrajectory>>& humans_by_video, double fov) {
  const auto settings = similarity_settings(fov);
  MetricReport report;
  report.title = "HumanEdit similarity";
  report.columns = similarity_columns();

  for (const auto& [method, by_video] : generated_by_method) {
    std::vector<double> sums(settings.size(), 0.0);
    std::size_t videos = 0;
    for (const auto& [video, trajs] : by_video) {
      const auto it = humans_by_video.find(video);
      if (it == humans_by_video.end() || it->second.empty()) {
        warn("no human trajectories for video '" + video + "'; skipped for method '" + method + "'");
        continue;
      }
      if (trajs.empty()) continue;
      auto& d = report.details[method][video];
      for (std::size_t s = 0; s < settings.size(); ++s) {
        double total = 0.0;
        for (const auto& g : trajs) total += pool(g, it->second, settings[s].measure, settings[s].pooling);
        const double v = total / static_cast<double>(trajs.size());
        d[report.columns[s]] = v;
        sums[s] += v;
      }
      ++videos;
    }
    if (videos == 0) {
      warn("method '" + method + "' has no comparable videos");
      continue;
    }
    MetricReport::Row row{method, {}};
    for (double s : sums) row.values.push_back(s / static_cast<double>(videos));
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

/// Column-wise z-scoring with statistics from a training matrix.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& X, bool enabled) {
    Standardizer s;
    s.mean = Eigen::RowVectorXd::Zero(X.cols());
    s.scale = Eigen::RowVectorXd::Ones(X.cols());
    if (!enabled || X.rows() == 0) return s;
    s.mean = X.colwise().mean();
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      const double var = (X.col(c).array() - s.mean(c)).square().mean();
      if (var > 0.0) s.scale(c) = std::sqrt(var);
    }
    return s;
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
    return (X.rowwise() - mean).array().rowwise() / scale.array();
  }
};

struct LabeledMatrix {
  Eigen::MatrixXd X;
  std::vector<int> y;
};

LabeledMatrix stack(const FeatureSet& pos, const std::vector<std::size_t>& pos_rows,
                    const FeatureSet& neg, const std::vector<std::size_t>& neg_rows) {
  LabeledMatrix m;
  m.X.resize(static_cast<Eigen::Index>(pos_rows.size() + neg_rows.size()), pos.dim());
  Eigen::Index r = 0;
  for (std::size_t i : pos_rows) {
    m.X.row(r++) = Eigen::Map<const Eigen::RowVectorXd>(pos[i].vector.data(), pos.dim());
    m.y.push_back(1);
  }
  for (std::size_t i : neg_rows) {
    m.X.row(r++) = Eigen::Map<const Eigen::RowVectorXd>(neg[i].vector.data(), neg.dim());
    m.y.push_back(0);
  }
  return m;
}

void check_same_dim(const FeatureSet& a, const FeatureSet& b, const std::string& what) {
  if (a.dim() != b.dim()) {
    fail(ErrorCode::kSchema, what + ": feature dimensions differ (" + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()) + ")");
  }
}

/// Average 1-based ranks of `keys` sorted descending.
std::vector<double> descending_ranks(const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  std::vector<double> ranks(keys.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && keys[order[j + 1]] == keys[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

DistinguishabilityResult distinguishability(const FeatureSet& gen, const FeatureSet& human,
                                            int folds, RngSeed seed,
                                            const ClassifierOptions& options) {
  if (gen.empty() || human.empty()) {
    fail(ErrorCode::kInvalidArgument, "distinguishability needs non-empty generated and human sets");
  }
  if (folds < 2) fail(ErrorCode::kInvalidArgument, "distinguishability needs at least 2 folds");
  check_same_dim(gen, human, "distinguishability");

  const auto video_set = gen.video_ids();
  if (video_set.size() < static_cast<std::size_t>(folds)) {
    fail(ErrorCode::kInvalidArgument,
         "generated clips come from " + std::to_string(video_set.size()) +
             " distinct videos, fewer than the " + std::to_string(folds) + " folds");
  }

  Rng rng(seed);
  std::vector<std::string> videos(video_set.begin(), video_set.end());
  rng.shuffle(videos);
  std::map<std::string, int> video_fold;
  for (std::size_t i = 0; i < videos.size(); ++i) video_fold[videos[i]] = static_cast<int>(i % folds);

  std::vector<std::size_t> human_order(human.size());
  std::iota(human_order.begin(), human_order.end(), 0);
  rng.shuffle(human_order);
  std::vector<int> human_fold(human.size());
  for (std::size_t i = 0; i < human_order.size(); ++i) human_fold[human_order[i]] = static_cast<int>(i % folds);

  const auto run_fold = [&](int f) {
    std::vector<std::size_t> pos_train, pos_test, neg_train, neg_test;
    for (std::size_t i = 0; i < human.size(); ++i) (human_fold[i] == f ? pos_test : pos_train).push_back(i);
    for (std::size_t i = 0; i < gen.size(); ++i) {
      (video_fold.at(gen[i].video_id) == f ? neg_test : neg_train).push_back(i);
    }
    const LabeledMatrix train = stack(human, pos_train, gen, neg_train);
    const LabeledMatrix test = stack(human, pos_test, gen, neg_test);
    const Standardizer z = Standardizer::fit(train.X, options.standardize);
    const LogisticModel model = train_logistic(z.apply(train.X), train.y, options.logistic);
    const Eigen::VectorXd d = model.decisions(z.apply(test.X));
    std::size_t wrong = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const int predicted = d(i) > 0.0 ? 1 : 0;
      if (predicted != test.y[static_cast<std::size_t>(i)]) ++wrong;
    }
    return test.y.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(test.y.size());
  };

  std::vector<std::future<double>> pending;
  for (int f = 0; f < folds; ++f) pending.push_back(std::async(std::launch::async, run_fold, f));
  DistinguishabilityResult result;
  for (auto& p : pending) result.fold_errors.push_back(p.get());
  result.error_rate = mean(result.fold_errors);
  return result;
}

LikenessResult humancam_likeness(const std::map<std::string, FeatureSet>& per_method_gen,
                                 const FeatureSet& human, const ClassifierOptions& options) {
  if (per_method_gen.size() < 2) fail(ErrorCode::kInvalidArgument, "likeness needs at least two methods");
  if (human.empty()) fail(ErrorCode::kInvalidArgument, "likeness needs human clips");

  // All generated clips pooled, remembering their method.
  FeatureSet all_gen(human.dim());
  std::vector<std::string> clip_method;
  std::set<std::string> videos;
  for (const auto& [method, set] : per_method_gen) {
    check_same_dim(set, human, "likeness method '" + method + "'");
    for (const auto& r : set.records()) {
      all_gen.add(r);
      clip_method.push_back(method);
      videos.insert(r.video_id);
    }
  }

  std::vector<std::size_t> all_human(human.size());
  std::iota(all_human.begin(), all_human.end(), 0);

  const auto run_video = [&](const std::string& video) {
    std::map<std::string, double> out;
    std::vector<std::size_t> train_neg, test;
    std::set<std::string> present;
    for (std::size_t i = 0; i < all_gen.size(); ++i) {
      if (all_gen[i].video_id == video) {
        test.push_back(i);
        present.insert(clip_method[i]);
      } else {
        train_neg.push_back(i);
      }
    }
    for (const auto& [method, set] : per_method_gen) {
      if (!present.count(method)) warn("method '" + method + "' has no clips for video '" + video + "'; skipped");
    }
    if (present.size() < 2) return out;

    const LabeledMatrix train = stack(human, all_human, all_gen, train_neg);
    const Standardizer z = Standardizer::fit(train.X, options.standardize);
    const LogisticModel model = train_logistic(z.apply(train.X), train.y, options.logistic);
    const Eigen::VectorXd d = model.decisions(z.apply(all_gen.matrix(test)));
    const std::vector<double> ranks = descending_ranks(std::vector<double>(d.data(), d.data() + d.size()));
    const double n = static_cast<double>(test.size());

    std::map<std::string, std::pair<double, int>> acc;
    for (std::size_t k = 0; k < test.size(); ++k) {
      auto& a = acc[clip_method[test[k]]];
      a.first += (ranks[k] - 1.0) / (n - 1.0);
      a.second += 1;
    }
    for (const auto& [method, a] : acc) out[method] = a.first / a.second;
    return out;
  };

  std::vector<std::string> video_list(videos.begin(), videos.end());
  std::vector<std::future<std::map<std::string, double>>> pending;
  for (const auto& v : video_list) pending.push_back(std::async(std::launch::async, run_video, v));

  LikenessResult result;
  std::map<std::string, std::pair<double, int>> totals;
  for (std::size_t i = 0; i < video_list.size(); ++i) {
    auto per = pending[i].get();
    if (per.empty()) continue;
    for (const auto& [method, r] : per) {
      totals[method].first += r;
      totals[method].second += 1;
    }
    result.per_video[video_list[i]] = std::move(per);
  }
  for (const auto& [method, t] : totals) result.mean_rank[method] = t.first / t.second;
  if (result.mean_rank.empty()) {
    fail(ErrorCode::kDegenerateData, "no video has clips from at least two methods");
  }
  return result;
}

double transferability(const FeatureSet& source, const FeatureSet& target,
                       const ClassifierOptions& options) {
  if (source.empty() || target.empty()) {
    fail(ErrorCode::kInvalidArgument, "transferability needs non-empty source and target sets");
  }
  check_same_dim(source, target, "transferability");
  if (source.labels() != target.labels()) {
    fail(ErrorCode::kInvalidArgument, "source and target label alphabets differ");
  }
  std::vector<std::string> labels;
  for (const auto& r : source.records()) labels.push_back(r.label);
  const Eigen::MatrixXd Xs = source.matrix();
  const Standardizer z = Standardizer::fit(Xs, options.standardize);
  const OneVsRestModel model = train_one_vs_rest(z.apply(Xs), labels, options.logistic);
  const Eigen::MatrixXd Xt = z.apply(target.matrix());
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < Xt.rows(); ++i) {
    if (model.predict(Xt.row(i).transpose()) == target[static_cast<std::size_t>(i)].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(target.size());
}

}  // namespace panocam
