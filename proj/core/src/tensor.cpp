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

#include "origami/tensor.hpp"

#include <cmath>
#include <sstream>

#include "origami/error.hpp"

namespace origami {

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return shape.empty() ? 0 : n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

FloatTensor::FloatTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (element_count(shape_) != data_.size()) {
    fail(ErrorCode::kShapeMismatch,
         "float tensor shape " + shape_string(shape_) + " does not match " +
             std::to_string(data_.size()) + " elements");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      fail(ErrorCode::kInvalidArgument,
           "float tensor element " + std::to_string(i) + " is not finite");
    }
  }
}

FloatTensor FloatTensor::zeros(Shape shape) {
  const auto n = element_count(shape);
  return FloatTensor(std::move(shape), std::vector<double>(n, 0.0));
}

QuantizedTensor::QuantizedTensor(Shape shape, std::vector<std::uint32_t> data,
                                 std::int64_t scale, std::uint32_t modulus)
    : shape_(std::move(shape)),
      data_(std::move(data)),
      scale_(scale),
      modulus_(modulus) {
  if (element_count(shape_) != data_.size()) {
    fail(ErrorCode::kShapeMismatch,
         "quantized tensor shape " + shape_string(shape_) +
             " does not match " + std::to_string(data_.size()) + " elements");
  }
  if (scale_ <= 0) {
    fail(ErrorCode::kInvalidArgument, "quantized tensor scale must be > 0");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] >= modulus_) {
      fail(ErrorCode::kRangeOverflow,
           "element " + std::to_string(i) + " = " + std::to_string(data_[i]) +
               " is outside [0, " + std::to_string(modulus_) + ")");
    }
  }
}

QuantizedTensor QuantizedTensor::zeros(Shape shape, std::int64_t scale,
                                       std::uint32_t modulus) {
  const auto n = element_count(shape);
  return QuantizedTensor(std::move(shape), std::vector<std::uint32_t>(n, 0),
                         scale, modulus);
}

QuantizedTensor QuantizedTensor::reshaped(Shape shape) const {
  return QuantizedTensor(std::move(shape), data_, scale_, modulus_);
}

QuantizedTensor quantize(const FloatTensor& t, std::int64_t scale,
                         std::uint32_t modulus) {
  if (scale <= 0) {
    fail(ErrorCode::kInvalidArgument, "quantize: scale must be > 0");
  }
  const double limit =
      static_cast<double>(modulus) / (2.0 * static_cast<double>(scale));
  std::vector<std::uint32_t> out(t.size());
  const auto values = t.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std::fabs(values[i]) < limit)) {
      fail(ErrorCode::kRangeOverflow,
           "quantize: element " + std::to_string(i) + " = " +
               std::to_string(values[i]) + " exceeds |x| < " +
               std::to_string(limit));
    }
    const auto q = std::llround(values[i] * static_cast<double>(scale));
    out[i] = to_field(q, modulus);
  }
  return QuantizedTensor(t.shape(), std::move(out), scale, modulus);
}

FloatTensor dequantize(const QuantizedTensor& t) {
  std::vector<double> out(t.size());
  const double s = static_cast<double>(t.scale());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(t.signed_value(i)) / s;
  }
  return FloatTensor(t.shape(), std::move(out));
}

}  // namespace origami
