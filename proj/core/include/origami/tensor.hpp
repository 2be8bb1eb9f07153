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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "origami/field.hpp"

namespace origami {

using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::string shape_string(const Shape& shape);

// Real-valued tensor. Used for images, dequantized feature maps and
// probabilities.
class FloatTensor {
 public:
  FloatTensor() = default;
  FloatTensor(Shape shape, std::vector<double> data);

  static FloatTensor zeros(Shape shape);

  const Shape& shape() const { return shape_; }
  std::span<const double> values() const { return data_; }
  std::size_t size() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(const FloatTensor&, const FloatTensor&) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Fixed-point tensor over the prime field Z_p. Elements are residues in
// [0, p); the real value is signed(x) / scale.
class QuantizedTensor {
 public:
  QuantizedTensor() = default;
  QuantizedTensor(Shape shape, std::vector<std::uint32_t> data,
                  std::int64_t scale, std::uint32_t modulus);

  static QuantizedTensor zeros(Shape shape, std::int64_t scale,
                               std::uint32_t modulus);

  const Shape& shape() const { return shape_; }
  std::span<const std::uint32_t> values() const { return data_; }
  std::size_t size() const { return data_.size(); }
  std::uint32_t operator[](std::size_t i) const { return data_[i]; }
  std::int64_t scale() const { return scale_; }
  std::uint32_t modulus() const { return modulus_; }

  std::int64_t signed_value(std::size_t i) const {
    return to_signed(data_[i], modulus_);
  }

  // Same data, new shape with the same element count.
  QuantizedTensor reshaped(Shape shape) const;

  std::size_t byte_size() const { return data_.size() * 4; }

  friend bool operator==(const QuantizedTensor&, const QuantizedTensor&) =
      default;

 private:
  Shape shape_;
  std::vector<std::uint32_t> data_;
  std::int64_t scale_ = 1;
  std::uint32_t modulus_ = kDefaultModulus;
};

QuantizedTensor quantize(const FloatTensor& t, std::int64_t scale,
                         std::uint32_t modulus);
inline QuantizedTensor quantize(const FloatTensor& t, const FieldParams& f) {
  return quantize(t, f.scale, f.modulus);
}
FloatTensor dequantize(const QuantizedTensor& t);

}  // namespace origami
