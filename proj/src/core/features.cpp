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

#include "features.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "error.hpp"
#include "json_io.hpp"

namespace panocam {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    parts.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

void FeatureSet::add(FeatureRecord record) {
  if (record.video_id.empty()) {
    fail(ErrorCode::kSchema, "feature record '" + record.id + "' has no video_id");
  }
  if (records_.empty() && dim_ == 0) dim_ = static_cast<int>(record.vector.size());
  if (static_cast<int>(record.vector.size()) != dim_) {
    fail(ErrorCode::kSchema, "feature record '" + record.id + "' has length " +
                                 std::to_string(record.vector.size()) + ", expected " +
                                 std::to_string(dim_));
  }
  for (double v : record.vector) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::kSchema, "feature record '" + record.id + "' has a non-finite value");
    }
  }
  records_.push_back(std::move(record));
}

std::set<std::string> FeatureSet::labels() const {
  std::set<std::string> out;
  for (const auto& r : records_) out.insert(r.label);
  return out;
}

std::set<std::string> FeatureSet::video_ids() const {
  std::set<std::string> out;
  for (const auto& r : records_) out.insert(r.video_id);
  return out;
}

Eigen::MatrixXd FeatureSet::matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(records_.size()), dim_);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    for (int d = 0; d < dim_; ++d) m(static_cast<Eigen::Index>(i), d) = records_[i].vector[d];
  }
  return m;
}

Eigen::MatrixXd FeatureSet::matrix(const std::vector<std::size_t>& rows) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dim_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& v = records_.at(rows[i]).vector;
    for (int d = 0; d < dim_; ++d) m(static_cast<Eigen::Index>(i), d) = v[d];
  }
  return m;
}

FeatureSet parse_feature_set(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int dim = -1;
  FeatureSet set;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto where = [&] { return origin + ":" + std::to_string(line_no) + ": "; };
    if (dim < 0) {
      std::string_view header = line;
      if (header.front() == '#') header = trim(header.substr(1));
      if (header.substr(0, 4) != "dim=") {
        fail(ErrorCode::kSchema, where() + "expected header line 'dim=<D>'");
      }
      const auto digits = header.substr(4);
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
      if (res.ec != std::errc() || res.ptr != digits.data() + digits.size() || dim <= 0) {
        fail(ErrorCode::kSchema, where() + "bad feature dimension");
      }
      set = FeatureSet(dim);
      continue;
    }
    if (line.front() == '#') continue;
    const auto parts = split_commas(line);
    if (parts.size() != static_cast<std::size_t>(dim) + 3) {
      fail(ErrorCode::kSchema, where() + "expected " + std::to_string(dim + 3) +
                                   " fields, found " + std::to_string(parts.size()));
    }
    FeatureRecord rec{std::string(parts[0]), std::string(parts[1]), std::string(parts[2]), {}};
    rec.vector.reserve(dim);
    for (int d = 0; d < dim; ++d) {
      const std::string field(parts[3 + d]);
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        fail(ErrorCode::kSchema, where() + "bad number '" + field + "'");
      }
      rec.vector.push_back(v);
    }
    try {
      set.add(std::move(rec));
    } catch (const Error& e) {
      fail(ErrorCode::kSchema, where() + e.what());
    }
  }
  if (dim < 0) fail(ErrorCode::kSchema, origin + ": missing 'dim=<D>' header");
  return set;
}

FeatureSet load_feature_set(const std::filesystem::path& path) {
  return parse_feature_set(read_text_file(path), path.string());
}

std::string format_feature_set(const FeatureSet& set) {
  std::string out = "dim=" + std::to_string(set.dim()) + "\n";
  for (const auto& r : set.records()) {
    out += r.id + "," + r.video_id + "," + r.label;
    for (double v : r.vector) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

void save_feature_set(const std::filesystem::path& path, const FeatureSet& set) {
  write_text_file_atomic(path, format_feature_set(set));
}

}  // namespace panocam
