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

#include "origami/worker.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "bytes.hpp"
#include "origami/layer_ops.hpp"

namespace origami {
namespace {

constexpr std::uint32_t kMaxFrame = 1u << 30;
constexpr std::uint8_t kBlindedFlag = 1;

void put_shape(ByteWriter& w, const Shape& s) {
  w.u8(static_cast<std::uint8_t>(s.size()));
  for (auto d : s) w.u32(static_cast<std::uint32_t>(d));
}

Shape get_shape(ByteReader& r) {
  Shape s(r.u8());
  for (auto& d : s) d = r.u32();
  return s;
}

void put_tensor(ByteWriter& w, const QuantizedTensor& t) {
  put_shape(w, t.shape());
  w.u64(static_cast<std::uint64_t>(t.scale()));
  w.u32(t.modulus());
  for (auto v : t.values()) w.u32(v);
}

QuantizedTensor get_tensor(ByteReader& r) {
  Shape s = get_shape(r);
  const auto scale = static_cast<std::int64_t>(r.u64());
  const auto modulus = r.u32();
  const auto n = element_count(s);
  if (n * 4 > r.remaining()) fail(ErrorCode::kCorrupt, "worker frame: tensor exceeds frame");
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = r.u32();
  return QuantizedTensor(std::move(s), std::move(v), scale, modulus);
}

std::vector<std::uint8_t> frame(ByteWriter& body) {
  auto b = body.take();
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(b.size()));
  w.bytes(b);
  return w.take();
}

std::span<const std::uint8_t> unframe(std::span<const std::uint8_t> f) {
  ByteReader r(f, "worker frame");
  const auto len = r.u32();
  if (len != r.remaining()) fail(ErrorCode::kCorrupt, "worker frame: length prefix mismatch");
  return f.subspan(4);
}

std::uint64_t request_frame_bytes(const WorkerRequest& r) {
  return 4 + 8 + 4 + 1 + 1 + 1 + 4 * r.tensor.shape().size() + 8 + 4 + 4 * r.tensor.size();
}

std::uint64_t response_frame_bytes(const WorkerResponse& r) {
  const auto& shape = r.tensor.size() ? r.tensor.shape() : r.probabilities.shape();
  const auto body = r.tensor.size() ? 8 + 4 + 4 * r.tensor.size() : 8 * r.probabilities.size();
  return 4 + 8 + 4 + 1 + 1 + 4 * shape.size() + body;
}

void write_all(int fd, const std::vector<std::uint8_t>& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const auto n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) fail(ErrorCode::kWorker, std::string("worker socket write: ") + std::strerror(errno));
    off += static_cast<std::size_t>(n);
  }
}

// False on clean EOF before any byte.
bool read_exact(int fd, std::uint8_t* out, std::size_t len) {
  std::size_t off = 0;
  while (off < len) {
    const auto n = ::recv(fd, out + off, len - off, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n == 0 && off == 0) return false;
    if (n <= 0) fail(ErrorCode::kWorker, "worker socket closed mid-frame");
    off += static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::vector<std::uint8_t>> read_frame(int fd) {
  std::vector<std::uint8_t> f(4);
  if (!read_exact(fd, f.data(), 4)) return std::nullopt;
  const std::uint32_t len = f[0] | f[1] << 8 | f[2] << 16 | static_cast<std::uint32_t>(f[3]) << 24;
  if (len > kMaxFrame) fail(ErrorCode::kCorrupt, "worker frame too large");
  f.resize(4 + len);
  if (len && !read_exact(fd, f.data() + 4, len)) fail(ErrorCode::kWorker, "worker socket closed");
  return f;
}

}  // namespace

std::vector<std::uint8_t> encode_request(const WorkerRequest& r) {
  ByteWriter w;
  w.u64(r.request_id);
  w.u32(static_cast<std::uint32_t>(r.layer_index));
  w.u8(static_cast<std::uint8_t>(r.op));
  w.u8(r.blinded ? kBlindedFlag : 0);
  put_tensor(w, r.tensor);
  return frame(w);
}

WorkerRequest decode_request(std::span<const std::uint8_t> f) {
  ByteReader r(unframe(f), "worker request");
  WorkerRequest q;
  q.request_id = r.u64();
  q.layer_index = static_cast<int>(r.u32());
  const auto op = r.u8();
  if (op != 1 && op != 2) fail(ErrorCode::kCorrupt, "worker request: unknown op tag " + std::to_string(op));
  q.op = static_cast<WorkerOp>(op);
  const auto flags = r.u8();
  if (flags & ~kBlindedFlag) fail(ErrorCode::kCorrupt, "worker request: unknown flags");
  q.blinded = flags & kBlindedFlag;
  q.tensor = get_tensor(r);
  r.done();
  return q;
}

std::vector<std::uint8_t> encode_response(const WorkerResponse& resp) {
  ByteWriter w;
  w.u64(resp.request_id);
  w.u32(static_cast<std::uint32_t>(resp.layer_index));
  if (resp.tensor.size()) {
    w.u8(0);
    put_tensor(w, resp.tensor);
  } else {
    w.u8(1);
    put_shape(w, resp.probabilities.shape());
    for (double v : resp.probabilities.values()) w.f64(v);
  }
  return frame(w);
}

std::vector<std::uint8_t> encode_error(std::uint64_t request_id, int layer_index,
                                       const Error& error) {
  ByteWriter w;
  w.u64(request_id);
  w.u32(static_cast<std::uint32_t>(layer_index));
  w.u8(2);
  w.u32(static_cast<std::uint32_t>(error.code()));
  w.str(error.what());
  return frame(w);
}

WorkerResponse decode_response(std::span<const std::uint8_t> f) {
  ByteReader r(unframe(f), "worker response");
  WorkerResponse resp;
  resp.request_id = r.u64();
  resp.layer_index = static_cast<int>(r.u32());
  const auto kind = r.u8();
  if (kind == 0) {
    resp.tensor = get_tensor(r);
  } else if (kind == 1) {
    Shape s = get_shape(r);
    const auto n = element_count(s);
    if (n * 8 > r.remaining()) fail(ErrorCode::kCorrupt, "worker response: probabilities exceed frame");
    std::vector<double> v(n);
    for (auto& x : v) x = r.f64();
    resp.probabilities = FloatTensor(std::move(s), std::move(v));
  } else if (kind == 2) {
    const auto code = r.u32();
    const auto msg = r.str();
    if (code > static_cast<std::uint32_t>(ErrorCode::kCorrupt)) fail(ErrorCode::kWorker, msg);
    throw Error(static_cast<ErrorCode>(code), msg);
  } else {
    fail(ErrorCode::kCorrupt, "worker response: unknown kind " + std::to_string(kind));
  }
  r.done();
  return resp;
}

WorkerResponse UntrustedWorker::handle(const WorkerRequest& q) {
  const auto& g = model_.graph;
  const std::string where = "worker request " + std::to_string(q.request_id) + " layer " +
                            std::to_string(q.layer_index) + ": ";
  if (q.layer_index < 1 || q.layer_index > g.size()) {
    fail(ErrorCode::kWorker, where + "no such layer");
  }
  if (guard_) {
    const auto placement = guard_->route(g, q.layer_index);
    if (q.op == WorkerOp::kLinear && (!q.blinded || placement != Placement::kBlinded)) {
      fail(ErrorCode::kPrivacyViolation, where + "linear offload of a tensor the plan does not blind");
    }
    if (q.op == WorkerOp::kRunFrom &&
        (q.blinded || q.layer_index != guard_->partition + 1)) {
      fail(ErrorCode::kPrivacyViolation, where + "clear execution requested inside tier 1");
    }
  }
  {
    std::lock_guard lock(mu_);
    ++served_;
    if (logging_) {
      log_.push_back({q.request_id, q.layer_index, q.op, q.blinded,
                      std::vector<std::uint32_t>(q.tensor.values().begin(), q.tensor.values().end())});
    }
  }
  WorkerResponse resp;
  resp.request_id = q.request_id;
  resp.layer_index = q.layer_index;
  try {
    if (q.op == WorkerOp::kLinear) {
      const auto& l = g.layer(q.layer_index);
      if (!is_linear(l.kind)) fail(ErrorCode::kWorker, where + "layer is not linear");
      resp.tensor = linear_part(l, model_.weights_for(q.layer_index), q.tensor);
    } else {
      resp.probabilities = forward_to_output(model_, q.tensor, q.layer_index);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kWorker) throw;
    fail(ErrorCode::kWorker, where + e.what());
  }
  return resp;
}

std::vector<WorkerLogEntry> UntrustedWorker::log() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::uint64_t UntrustedWorker::requests_served() const {
  std::lock_guard lock(mu_);
  return served_;
}

WorkerResponse InProcessTransport::call(const WorkerRequest& request) {
  sent_ += request_frame_bytes(request);
  auto resp = worker_.handle(request);
  received_ += response_frame_bytes(resp);
  return resp;
}

LoopbackServer::LoopbackServer(UntrustedWorker& worker) : worker_(worker) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail(ErrorCode::kWorker, "cannot create worker socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 4) != 0) {
    ::close(listen_fd_);
    fail(ErrorCode::kWorker, std::string("cannot listen on loopback: ") + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  thread_ = std::thread([this] { serve(); });
}

LoopbackServer::~LoopbackServer() {
  ::shutdown(listen_fd_, SHUT_RDWR);
  const int c = conn_fd_.load();
  if (c >= 0) ::shutdown(c, SHUT_RDWR);
  thread_.join();
  ::close(listen_fd_);
}

void LoopbackServer::serve() {
  for (;;) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    conn_fd_.store(fd);
    try {
      while (auto f = read_frame(fd)) {
        WorkerRequest q;
        try {
          q = decode_request(*f);
          write_all(fd, encode_response(worker_.handle(q)));
        } catch (const Error& e) {
          write_all(fd, encode_error(q.request_id, q.layer_index, e));
        }
      }
    } catch (const Error&) {
      // connection dropped
    }
    conn_fd_.store(-1);
    ::close(fd);
  }
}

SocketTransport::SocketTransport(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) fail(ErrorCode::kWorker, "cannot create worker socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd_);
    fd_ = -1;
    fail(ErrorCode::kWorker, "worker unreachable on port " + std::to_string(port));
  }
}

SocketTransport::~SocketTransport() {
  if (fd_ >= 0) ::close(fd_);
}

WorkerResponse SocketTransport::call(const WorkerRequest& request) {
  const auto out = encode_request(request);
  write_all(fd_, out);
  sent_ += out.size();
  auto in = read_frame(fd_);
  if (!in) fail(ErrorCode::kWorker, "worker closed the connection");
  received_ += in->size();
  return decode_response(*in);
}

}  // namespace origami
