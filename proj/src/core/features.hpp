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

#include <Eigen/Dense>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace panocam {

inline constexpr const char* kPositiveLabel = "positive";
inline constexpr const char* kNegativeLabel = "negative";

struct FeatureRecord {
  std::string id;
  std::string video_id;
  std::string label;
  std::vector<double> vector;
};

/// Labeled fixed-length feature vectors. The vectors themselves are opaque
/// (extracted elsewhere); every record carries the video it came from so
/// that splits can be grouped by video.
class FeatureSet {
 public:
  FeatureSet() = default;
  explicit FeatureSet(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  /// Throws kSchema when the vector length differs from dim() or video_id is
  /// empty. The first record fixes dim() of a default-constructed set.
  void add(FeatureRecord record);

  const std::vector<FeatureRecord>& records() const { return records_; }
  const FeatureRecord& operator[](std::size_t i) const { return records_[i]; }

  std::set<std::string> labels() const;
  std::set<std::string> video_ids() const;

  /// Rows are records, in order.
  Eigen::MatrixXd matrix() const;
  Eigen::MatrixXd matrix(const std::vector<std::size_t>& rows) const;

 private:
  int dim_ = 0;
  std::vector<FeatureRecord> records_;
};

/// Text format: a header line `dim=<D>`, then one record per line
/// `id,video_id,label,x1,...,xD`. Blank lines and lines starting with '#'
/// are ignored.
FeatureSet load_feature_set(const std::filesystem::path& path);
FeatureSet parse_feature_set(const std::string& text, const std::string& origin);
std::string format_feature_set(const FeatureSet& set);
void save_feature_set(const std::filesystem::path& path, const FeatureSet& set);

}  // namespace panocam
