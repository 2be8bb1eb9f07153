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

#include "origami/blinding.hpp"

#include <sodium.h>

#include "bytes.hpp"
#include "origami/error.hpp"
#include "origami/layer_ops.hpp"

namespace origami {
namespace {

void same_layout(const QuantizedTensor& a, const QuantizedTensor& b,
                 const char* op) {
  if (a.shape() != b.shape()) {
    fail(ErrorCode::kShapeMismatch, std::string(op) + ": shapes " +
                                        shape_string(a.shape()) + " and " +
                                        shape_string(b.shape()) + " differ");
  }
  if (a.modulus() != b.modulus() || a.scale() != b.scale()) {
    fail(ErrorCode::kInvalidArgument, std::string(op) + ": field or scale mismatch");
  }
}

std::array<std::uint8_t, crypto_aead_xchacha20poly1305_ietf_NPUBBYTES> record_nonce(
    std::uint64_t request_id, int layer_index) {
  std::array<std::uint8_t, crypto_aead_xchacha20poly1305_ietf_NPUBBYTES> n{};
  for (int i = 0; i < 8; ++i) n[i] = static_cast<std::uint8_t>(request_id >> (8 * i));
  for (int i = 0; i < 4; ++i) {
    n[8 + i] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(layer_index) >> (8 * i));
  }
  return n;
}

std::vector<std::uint8_t> record_header(std::uint64_t request_id, const SealedRecord& r) {
  ByteWriter w;
  w.u64(request_id);
  w.u32(static_cast<std::uint32_t>(r.layer_index));
  w.u8(static_cast<std::uint8_t>(r.shape.size()));
  for (auto d : r.shape) w.u32(static_cast<std::uint32_t>(d));
  w.u64(static_cast<std::uint64_t>(r.scale));
  w.u32(r.modulus);
  w.u32(r.bias_count);
  return w.take();
}

}  // namespace

QuantizedTensor blind(const QuantizedTensor& x, const QuantizedTensor& r) {
  same_layout(x, r, "blind");
  const auto p = x.modulus();
  std::vector<std::uint32_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_mod(x[i], r[i], p);
  return QuantizedTensor(x.shape(), std::move(out), x.scale(), p);
}

UnblindingRecord precompute_unblinding(const LayerSpec& layer,
                                       const LayerWeights& weights,
                                       const QuantizedTensor& r) {
  if (r.shape() != batched(layer.input_shape)) {
    fail(ErrorCode::kShapeMismatch,
         "blinding factors " + shape_string(r.shape()) + " do not match layer " +
             std::to_string(layer.index) + " input " +
             shape_string(batched(layer.input_shape)));
  }
  UnblindingRecord rec;
  rec.layer_index = layer.index;
  rec.u = linear_part(layer, weights, r);
  if (layer.bias) rec.bias = weights.bias;
  return rec;
}

QuantizedTensor unblind(const QuantizedTensor& z, const UnblindingRecord& u) {
  same_layout(z, u.u, "unblind");
  const auto p = z.modulus();
  std::vector<std::uint32_t> out(z.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_mod(z[i], u.u[i], p);
  return QuantizedTensor(z.shape(), std::move(out), z.scale(), p);
}

StorageKey storage_key_from_u64(std::uint64_t value) {
  StorageKey k{};
  for (int i = 0; i < 8; ++i) k[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return k;
}

const SealedRecord& UnblindingBlob::find(int layer_index) const {
  for (const auto& r : records) {
    if (r.layer_index == layer_index) return r;
  }
  fail(ErrorCode::kIndexOutOfRange,
       "no unblinding record for layer " + std::to_string(layer_index));
}

UnblindingBlob seal_unblinding(std::uint64_t request_id,
                               std::span<const UnblindingRecord> records,
                               const StorageKey& key) {
  if (sodium_init() < 0) fail(ErrorCode::kInvalidArgument, "libsodium unavailable");
  UnblindingBlob blob;
  blob.request_id = request_id;
  for (const auto& rec : records) {
    SealedRecord s;
    s.layer_index = rec.layer_index;
    s.shape = rec.u.shape();
    s.scale = rec.u.scale();
    s.modulus = rec.u.modulus();
    s.bias_count = static_cast<std::uint32_t>(rec.bias.size());
    ByteWriter plain;
    for (auto v : rec.u.values()) plain.u32(v);
    for (auto v : rec.bias) plain.u32(v);
    const auto pt = plain.take();
    const auto ad = record_header(request_id, s);
    const auto nonce = record_nonce(request_id, rec.layer_index);
    s.ciphertext.resize(pt.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
    unsigned long long clen = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt(s.ciphertext.data(), &clen, pt.data(),
                                               pt.size(), ad.data(), ad.size(),
                                               nullptr, nonce.data(), key.data());
    s.ciphertext.resize(clen);
    blob.records.push_back(std::move(s));
  }
  return blob;
}

UnblindingRecord open_unblinding(const UnblindingBlob& blob, int layer_index,
                                 const StorageKey& key) {
  const SealedRecord& s = blob.find(layer_index);
  const auto ad = record_header(blob.request_id, s);
  const auto nonce = record_nonce(blob.request_id, layer_index);
  if (s.ciphertext.size() < crypto_aead_xchacha20poly1305_ietf_ABYTES) {
    fail(ErrorCode::kAuthFailure, "unblinding record truncated");
  }
  std::vector<std::uint8_t> pt(s.ciphertext.size() - crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long plen = 0;
  if (crypto_aead_xchacha20poly1305_ietf_decrypt(pt.data(), &plen, nullptr,
                                                 s.ciphertext.data(), s.ciphertext.size(),
                                                 ad.data(), ad.size(), nonce.data(),
                                                 key.data()) != 0) {
    fail(ErrorCode::kAuthFailure,
         "unblinding record for layer " + std::to_string(layer_index) + " failed authentication");
  }
  const std::size_t n = element_count(s.shape);
  if (plen != (n + s.bias_count) * 4) {
    fail(ErrorCode::kCorrupt, "unblinding record length mismatch");
  }
  ByteReader r(pt, "unblinding record");
  std::vector<std::uint32_t> u(n);
  for (auto& v : u) v = r.u32();
  UnblindingRecord rec;
  rec.layer_index = layer_index;
  rec.u = QuantizedTensor(s.shape, std::move(u), s.scale, s.modulus);
  rec.bias.resize(s.bias_count);
  for (auto& v : rec.bias) v = r.u32();
  rec.encrypted_at_rest = true;
  return rec;
}

std::vector<std::uint8_t> encode_blob(const UnblindingBlob& blob) {
  ByteWriter w;
  w.magic("ORGU");
  w.u32(kBlobVersion);
  w.u64(blob.request_id);
  w.u32(static_cast<std::uint32_t>(blob.records.size()));
  for (const auto& s : blob.records) {
    w.u32(static_cast<std::uint32_t>(s.layer_index));
    w.u8(static_cast<std::uint8_t>(s.shape.size()));
    for (auto d : s.shape) w.u32(static_cast<std::uint32_t>(d));
    w.u64(static_cast<std::uint64_t>(s.scale));
    w.u32(s.modulus);
    w.u32(s.bias_count);
    w.u32(static_cast<std::uint32_t>(s.ciphertext.size()));
    w.bytes(s.ciphertext);
  }
  return w.take();
}

UnblindingBlob decode_blob(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "unblinding blob");
  r.expect_magic("ORGU");
  if (r.u32() != kBlobVersion) fail(ErrorCode::kCorrupt, "unblinding blob: unsupported version");
  UnblindingBlob blob;
  blob.request_id = r.u64();
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    SealedRecord s;
    s.layer_index = static_cast<int>(r.u32());
    const std::uint8_t rank = r.u8();
    for (std::uint8_t d = 0; d < rank; ++d) s.shape.push_back(r.u32());
    s.scale = static_cast<std::int64_t>(r.u64());
    s.modulus = r.u32();
    s.bias_count = r.u32();
    const auto len = r.u32();
    const auto ct = r.bytes(len);
    s.ciphertext.assign(ct.begin(), ct.end());
    blob.records.push_back(std::move(s));
  }
  r.done();
  return blob;
}

BlindedBytes blinded_bytes_accounting(const InferenceTrace& trace) {
  BlindedBytes b;
  for (const auto& l : trace.layers) {
    b.blinded += l.bytes_blinded;
    b.unblinded += l.bytes_unblinded;
  }
  return b;
}

}  // namespace origami
