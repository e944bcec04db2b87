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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sphere_geom.hpp"

namespace panocam {

/// Interleaved float raster; samples are nominally in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  ImageSize size() const { return {width_, height_}; }

  float& at(int x, int y, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  float at(int x, int y, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  const std::vector<float>& data() const { return data_; }
  std::vector<float>& data() { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// An equirectangular frame; full-sphere frames have width == 2 * height.
using EquirectImage = Image;

/// Rec. 601 luma for 3-channel images, the sample itself for 1 channel.
float luminance(const Image& img, int x, int y);

/// PNG I/O. 8- and 16-bit gray/RGB(A) are read; alpha is dropped.
Image read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img, int bit_depth = 8);
std::vector<std::uint8_t> encode_png(const Image& img, int bit_depth = 8);

/// Sidecar describing a directory of numbered frames.
struct FrameMetadata {
  double fps = 30.0;
  int width = 0;
  int height = 0;
  int frame_count = 0;
  /// printf-style file name with one integer conversion.
  std::string pattern = "frame_%06d.png";

  double duration() const { return frame_count / fps; }
};

inline constexpr const char* kFrameMetadataFile = "metadata.json";

FrameMetadata read_frame_metadata(const std::filesystem::path& dir);
void write_frame_metadata(const std::filesystem::path& dir, const FrameMetadata& meta);
std::string frame_file_name(const FrameMetadata& meta, int index);

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual int size() const = 0;
  virtual double fps() const = 0;
  virtual Image frame(int index) const = 0;
};

class InMemoryFrames : public FrameSource {
 public:
  InMemoryFrames(std::vector<Image> frames, double fps);

  int size() const override { return static_cast<int>(frames_.size()); }
  double fps() const override { return fps_; }
  Image frame(int index) const override;

 private:
  std::vector<Image> frames_;
  double fps_;
};

/// Loads frames lazily from a directory written by FrameWriter.
class DirectoryFrames : public FrameSource {
 public:
  explicit DirectoryFrames(std::filesystem::path dir);

  int size() const override { return meta_.frame_count; }
  double fps() const override { return meta_.fps; }
  Image frame(int index) const override;
  const FrameMetadata& metadata() const { return meta_; }
  std::filesystem::path frame_path(int index) const;

 private:
  std::filesystem::path dir_;
  FrameMetadata meta_;
};

/// Writes numbered PNG frames and, on finish(), the metadata sidecar.
class FrameWriter {
 public:
  FrameWriter(std::filesystem::path dir, double fps, int bit_depth = 8);

  void write(int index, const Image& img);
  void finish();

 private:
  std::filesystem::path dir_;
  FrameMetadata meta_;
  int bit_depth_;
  int max_index_ = -1;
};

}  // namespace panocam
