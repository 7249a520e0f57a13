// Copyright 2026 The eqcom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqcom/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "eqcom/error.hpp"
#include "eqcom/message.hpp"

namespace eqcom {

namespace {

struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> buf;
  bool closed = false;
};

class LoopbackStream final : public ByteStream {
 public:
  LoopbackStream(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~LoopbackStream() override { close_write(); }

  void write_all(ByteView data) override {
    {
      std::lock_guard lock(out_->mu);
      if (out_->closed) fail(Errc::kIo, "write after close");
      out_->buf.insert(out_->buf.end(), data.begin(), data.end());
    }
    out_->cv.notify_all();
  }

  std::size_t read_some(std::span<std::uint8_t> out) override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->buf.empty() || in_->closed; });
    std::size_t n = std::min(out.size(), in_->buf.size());
    std::copy_n(in_->buf.begin(), n, out.begin());
    in_->buf.erase(in_->buf.begin(), in_->buf.begin() + static_cast<std::ptrdiff_t>(n));
    return n;
  }

  void close_write() override {
    {
      std::lock_guard lock(out_->mu);
      out_->closed = true;
    }
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<Pipe> in_;
  std::shared_ptr<Pipe> out_;
};

[[noreturn]] void sys_fail(const std::string& what) {
  fail(Errc::kIo, what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (int rc = getaddrinfo(host.c_str(), nullptr, &hints, &res); rc != 0) {
    fail(Errc::kIo, "cannot resolve " + host + ": " + gai_strerror(rc));
  }
  sockaddr_in addr = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  freeaddrinfo(res);
  addr.sin_port = htons(port);
  return addr;
}

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_loopback_pair() {
  auto a_to_b = std::make_shared<Pipe>();
  auto b_to_a = std::make_shared<Pipe>();
  return {std::make_unique<LoopbackStream>(b_to_a, a_to_b),
          std::make_unique<LoopbackStream>(a_to_b, b_to_a)};
}

SocketStream::~SocketStream() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<SocketStream> SocketStream::connect(const std::string& host, std::uint16_t port) {
  sockaddr_in addr = resolve(host, port);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) sys_fail("socket");
  auto stream = std::make_unique<SocketStream>(fd);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) sys_fail("connect");
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return stream;
}

void SocketStream::write_all(ByteView data) {
  while (!data.empty()) {
    ssize_t n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      sys_fail("send");
    }
    data = data.subspan(static_cast<std::size_t>(n));
  }
}

std::size_t SocketStream::read_some(std::span<std::uint8_t> out) {
  while (true) {
    ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno != EINTR) sys_fail("recv");
  }
}

void SocketStream::close_write() { ::shutdown(fd_, SHUT_WR); }

SocketListener::SocketListener(const std::string& host, std::uint16_t port) {
  sockaddr_in addr = resolve(host, port);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) sys_fail("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd_);
    sys_fail("bind");
  }
  if (::listen(fd_, 4) != 0) {
    ::close(fd_);
    sys_fail("listen");
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

SocketListener::~SocketListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<SocketStream> SocketListener::accept() {
  while (true) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<SocketStream>(fd);
    if (errno != EINTR) sys_fail("accept");
  }
}

void write_frame(ByteStream& stream, ByteView frame) { stream.write_all(frame); }

namespace {

// Returns the number of bytes read; short only at end of stream.
std::size_t read_exact(ByteStream& stream, std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    std::size_t n = stream.read_some(out.subspan(done));
    if (n == 0) break;
    done += n;
  }
  return done;
}

}  // namespace

std::optional<Bytes> read_frame(ByteStream& stream) {
  Bytes frame(4);
  std::size_t got = read_exact(stream, frame);
  if (got == 0) return std::nullopt;
  if (got < 4) fail(Errc::kTruncatedFrame, "stream ended inside a length field");
  std::size_t len = read_u32_be(frame);
  if (len < kFrameHeaderSize || len > kMaxFrameSize) {
    fail(Errc::kFrameLength, "frame length field out of bounds");
  }
  frame.resize(len);
  if (read_exact(stream, std::span(frame).subspan(4)) != len - 4) {
    fail(Errc::kTruncatedFrame, "stream ended inside a frame");
  }
  return frame;
}

}  // namespace eqcom
