// Copyright 2026 The Origami Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "origami/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

#include "origami/error.hpp"

namespace origami {
namespace {

std::string lower_ext(const std::filesystem::path& p) {
  auto e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

FloatTensor read_png(const std::filesystem::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    fail(ErrorCode::kIo, "cannot read PNG " + path.string() + ": " + img.message);
  }
  const bool color = img.format & PNG_FORMAT_FLAG_COLOR;
  img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::size_t channels = color ? 3 : 1;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    fail(ErrorCode::kIo, "cannot decode PNG " + path.string() + ": " + msg);
  }
  std::vector<double> v(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) v[i] = buf[i] / 255.0;
  return FloatTensor({img.height, img.width, channels}, std::move(v));
}

void write_png(const std::filesystem::path& path, const FloatTensor& t) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.height = static_cast<png_uint_32>(t.shape()[0]);
  img.width = static_cast<png_uint_32>(t.shape()[1]);
  img.format = t.shape()[2] == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(t.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] = static_cast<png_byte>(std::lround(std::clamp(t[i], 0.0, 1.0) * 255.0));
  }
  if (!png_image_write_to_file(&img, path.c_str(), 0, buf.data(), 0, nullptr)) {
    fail(ErrorCode::kIo, "cannot write PNG " + path.string() + ": " + img.message);
  }
}

std::size_t netpbm_int(const std::string& data, std::size_t& pos, const std::string& name) {
  for (;;) {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (pos < data.size() && data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::size_t v = 0, digits = 0;
  while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
    v = v * 10 + static_cast<std::size_t>(data[pos++] - '0');
    if (++digits > 9) fail(ErrorCode::kCorrupt, name + ": header value too large");
  }
  if (digits == 0) fail(ErrorCode::kCorrupt, name + ": malformed header");
  return v;
}

FloatTensor read_netpbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '6')) {
    fail(ErrorCode::kCorrupt, name + ": not a binary PGM/PPM");
  }
  const std::size_t channels = data[1] == '6' ? 3 : 1;
  std::size_t pos = 2;
  const auto w = netpbm_int(data, pos, name);
  const auto h = netpbm_int(data, pos, name);
  const auto maxval = netpbm_int(data, pos, name);
  if (w == 0 || h == 0 || maxval == 0 || maxval > 65535) fail(ErrorCode::kCorrupt, name + ": bad header");
  ++pos;  // single whitespace before raster
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t n = w * h * channels;
  if (pos + n * bps > data.size()) fail(ErrorCode::kCorrupt, name + ": truncated raster");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos + i * bps);
    const unsigned raw = bps == 2 ? (p[0] << 8 | p[1]) : p[0];
    v[i] = static_cast<double>(raw) / static_cast<double>(maxval);
  }
  return FloatTensor({h, w, channels}, std::move(v));
}

void write_netpbm(const std::filesystem::path& path, const FloatTensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << (t.shape()[2] == 3 ? "P6" : "P5") << "\n" << t.shape()[1] << " " << t.shape()[0] << "\n255\n";
  for (double v : t.values()) {
    out.put(static_cast<char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  }
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
}

bool is_image_ext(const std::string& e) {
  return e == ".png" || e == ".ppm" || e == ".pgm";
}

}  // namespace

FloatTensor read_image(const std::filesystem::path& path) {
  const auto e = lower_ext(path);
  if (e == ".png") return read_png(path);
  if (e == ".ppm" || e == ".pgm") return read_netpbm(path);
  fail(ErrorCode::kIo, "unsupported image type: " + path.string());
}

void write_image(const std::filesystem::path& path, const FloatTensor& image) {
  const auto& s = image.shape();
  if (s.size() != 3 || (s[2] != 1 && s[2] != 3) || s[0] == 0 || s[1] == 0) {
    fail(ErrorCode::kShapeMismatch, "image must be [H, W, 1|3], got " + shape_string(s));
  }
  const auto e = lower_ext(path);
  if (e == ".png") return write_png(path, image);
  if (e == ".ppm" || e == ".pgm") {
    if ((e == ".ppm") != (s[2] == 3)) {
      fail(ErrorCode::kShapeMismatch, "channel count does not match " + path.string());
    }
    return write_netpbm(path, image);
  }
  fail(ErrorCode::kIo, "unsupported image type: " + path.string());
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    fail(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_ext(lower_ext(entry.path()))) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return out;
}

}  // namespace origami
