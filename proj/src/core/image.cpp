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

#include "image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "error.hpp"
#include "json.hpp"
#include "json_io.hpp"

namespace panocam {
namespace fs = std::filesystem;

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 0 || height < 0 || channels < 0) {
    fail(ErrorCode::kInvalidArgument, "negative image dimensions");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

float luminance(const Image& img, int x, int y) {
  if (img.channels() >= 3) {
    return 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) +
           0.114f * img.at(x, y, 2);
  }
  return img.at(x, y, 0);
}

namespace {

struct PngBuffer {
  std::vector<std::uint8_t> bytes;
};

void png_write_to_buffer(png_structp png, png_bytep data, png_size_t length) {
  auto* buf = static_cast<PngBuffer*>(png_get_io_ptr(png));
  buf->bytes.insert(buf->bytes.end(), data, data + length);
}

void png_flush_noop(png_structp) {}

[[noreturn]] void png_error_throw(png_structp, png_const_charp msg) {
  throw Error(ErrorCode::kIo, std::string("png: ") + msg);
}

void png_warning_ignore(png_structp, png_const_charp) {}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& img, int bit_depth) {
  if (img.empty()) fail(ErrorCode::kInvalidArgument, "cannot encode empty image");
  if (bit_depth != 8 && bit_depth != 16) {
    fail(ErrorCode::kInvalidArgument, "png bit depth must be 8 or 16");
  }
  int color_type = 0;
  switch (img.channels()) {
    case 1: color_type = PNG_COLOR_TYPE_GRAY; break;
    case 3: color_type = PNG_COLOR_TYPE_RGB; break;
    case 4: color_type = PNG_COLOR_TYPE_RGBA; break;
    default: fail(ErrorCode::kInvalidArgument, "png supports 1, 3 or 4 channels");
  }

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_error_throw, png_warning_ignore);
  png_infop info = png_create_info_struct(png);
  PngBuffer buffer;
  try {
    png_set_write_fn(png, &buffer, png_write_to_buffer, png_flush_noop);
    png_set_IHDR(png, info, img.width(), img.height(), bit_depth, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int bytes_per_sample = bit_depth / 8;
    const double max_value = bit_depth == 8 ? 255.0 : 65535.0;
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width()) *
                                  img.channels() * bytes_per_sample);
    for (int y = 0; y < img.height(); ++y) {
      std::size_t k = 0;
      for (int x = 0; x < img.width(); ++x) {
        for (int c = 0; c < img.channels(); ++c) {
          const double v = std::clamp(static_cast<double>(img.at(x, y, c)), 0.0, 1.0);
          const auto q = static_cast<unsigned>(std::lround(v * max_value));
          if (bytes_per_sample == 1) {
            row[k++] = static_cast<std::uint8_t>(q);
          } else {
            row[k++] = static_cast<std::uint8_t>(q >> 8);  // big endian
            row[k++] = static_cast<std::uint8_t>(q & 0xFF);
          }
        }
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return std::move(buffer.bytes);
}

void write_png(const fs::path& path, const Image& img, int bit_depth) {
  const auto bytes = encode_png(img, bit_depth);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
}

Image read_png(const fs::path& path) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(ErrorCode::kIo, "cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           png_error_throw, png_warning_ignore);
  png_infop info = png_create_info_struct(png);
  Image img;
  try {
    png_init_io(png, file.get());
    png_read_info(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const double max_value = depth == 16 ? 65535.0 : 255.0;

    img = Image(width, height, channels);
    std::vector<std::uint8_t> row(png_get_rowbytes(png, info));
    for (int y = 0; y < height; ++y) {
      png_read_row(png, row.data(), nullptr);
      for (int x = 0; x < width; ++x) {
        for (int c = 0; c < channels; ++c) {
          const std::size_t i = static_cast<std::size_t>(x) * channels + c;
          const unsigned q = depth == 16 ? (row[2 * i] << 8) | row[2 * i + 1] : row[i];
          img.at(x, y, c) = static_cast<float>(q / max_value);
        }
      }
    }
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

FrameMetadata read_frame_metadata(const fs::path& dir) {
  const nlohmann::json j = read_json_file(dir / kFrameMetadataFile);
  FrameMetadata meta;
  try {
    meta.fps = j.at("fps").get<double>();
    meta.width = j.at("width").get<int>();
    meta.height = j.at("height").get<int>();
    meta.frame_count = j.at("frame_count").get<int>();
    meta.pattern = j.value("pattern", meta.pattern);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, "frame metadata in " + dir.string() + ": " + e.what());
  }
  if (!(meta.fps > 0.0) || meta.width <= 0 || meta.height <= 0 || meta.frame_count < 0) {
    fail(ErrorCode::kSchema, "frame metadata in " + dir.string() + " has invalid values");
  }
  return meta;
}

void write_frame_metadata(const fs::path& dir, const FrameMetadata& meta) {
  nlohmann::ordered_json j;
  j["fps"] = meta.fps;
  j["width"] = meta.width;
  j["height"] = meta.height;
  j["frame_count"] = meta.frame_count;
  j["pattern"] = meta.pattern;
  write_json_file_atomic(dir / kFrameMetadataFile, j);
}

std::string frame_file_name(const FrameMetadata& meta, int index) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof(buf), meta.pattern.c_str(), index);
  if (n < 0 || n >= static_cast<int>(sizeof(buf))) {
    fail(ErrorCode::kSchema, "bad frame file pattern '" + meta.pattern + "'");
  }
  return buf;
}

InMemoryFrames::InMemoryFrames(std::vector<Image> frames, double fps)
    : frames_(std::move(frames)), fps_(fps) {
  if (!(fps > 0.0)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
}

Image InMemoryFrames::frame(int index) const {
  if (index < 0 || index >= size()) {
    fail(ErrorCode::kOutOfRange, "frame index " + std::to_string(index) + " out of range");
  }
  return frames_[index];
}

DirectoryFrames::DirectoryFrames(fs::path dir)
    : dir_(std::move(dir)), meta_(read_frame_metadata(dir_)) {}

fs::path DirectoryFrames::frame_path(int index) const {
  if (index < 0 || index >= size()) {
    fail(ErrorCode::kOutOfRange, "frame index " + std::to_string(index) + " out of range");
  }
  return dir_ / frame_file_name(meta_, index);
}

Image DirectoryFrames::frame(int index) const {
  Image img = read_png(frame_path(index));
  if (img.width() != meta_.width || img.height() != meta_.height) {
    fail(ErrorCode::kSchema, "frame " + std::to_string(index) + " size differs from metadata");
  }
  return img;
}

FrameWriter::FrameWriter(fs::path dir, double fps, int bit_depth)
    : dir_(std::move(dir)), bit_depth_(bit_depth) {
  if (!(fps > 0.0)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
  meta_.fps = fps;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir_.string() + ": " + ec.message());
}

void FrameWriter::write(int index, const Image& img) {
  if (meta_.width == 0) {
    meta_.width = img.width();
    meta_.height = img.height();
  } else if (img.width() != meta_.width || img.height() != meta_.height) {
    fail(ErrorCode::kInvalidArgument, "frame size changed within a sequence");
  }
  write_png(dir_ / frame_file_name(meta_, index), img, bit_depth_);
  max_index_ = std::max(max_index_, index);
}

void FrameWriter::finish() {
  meta_.frame_count = max_index_ + 1;
  write_frame_metadata(dir_, meta_);
}

}  // namespace panocam
