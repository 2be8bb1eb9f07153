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

#pragma once

#include <filesystem>
#include <vector>

#include "origami/tensor.hpp"

namespace origami {

// Images are [H, W, C] float tensors with values in [0, 1], C in {1, 3}.
// Reads PNG (8/16-bit gray or color, alpha dropped) and binary PGM/PPM.
FloatTensor read_image(const std::filesystem::path& path);

// 8-bit output; values are clamped to [0, 1]. Format follows the extension
// (.png, .ppm, .pgm).
void write_image(const std::filesystem::path& path, const FloatTensor& image);

// Regular files with an image extension, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

}  // namespace origami
