#include "gainsched/comms/client.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>

#include "gainsched/comms/wire.hpp"
#include "gainsched/core/errors.hpp"

namespace gainsched::comms {

bool PayloadBox::offer(const ImpedancePayload& payload, std::uint64_t sequence,
                       double received_at) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (latest_ && sequence <= latest_->sequence) return false;
  latest_ = TimedPayload{payload, sequence, received_at};
  return true;
}

std::optional<TimedPayload> PayloadBox::latest() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return latest_;
}

void PayloadBox::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  latest_.reset();
}

OnboardScheduler::OnboardScheduler(FreshnessPolicy policy, double slew_duration)
    : policy_(policy),
      sched_(impedance::fallback_payload(), slew_duration) {}

ImpedancePayload OnboardScheduler::tick(const PayloadBox& box, double now,
                                        double dt) {
  const auto latest = box.latest();
  const bool fresh =
      latest && (now - latest->received_at) < policy_.staleness_timeout_s;
  if (fresh) {
    sched_.set_target(latest->payload);
    using_fallback_ = false;
  } else {
    sched_.set_target(impedance::fallback_payload());
    using_fallback_ = true;
  }
  return sched_.step(dt);
}

namespace {

double steady_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

TcpLink::TcpLink(std::string host, int port)
    : host_(std::move(host)), port_(port), clock_(&steady_seconds) {}

TcpLink::~TcpLink() { close(); }

void TcpLink::connect() {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port_));
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    fd_ = -1;
    throw TransportError("bad server address: " + host_);
  }
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    ::close(fd_);
    fd_ = -1;
    throw TransportError("cannot connect to " + host_ + ":" +
                         std::to_string(port_));
  }
  int yes = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &yes, sizeof(yes));
  connected_.store(true);
  receiver_ = std::thread([this] { receive_loop(); });
}

void TcpLink::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
  connected_.store(false);
  if (receiver_.joinable()) receiver_.join();
}

std::uint64_t TcpLink::send_frame(const std::string& bytes, std::uint64_t seq) {
  std::lock_guard<std::mutex> lock(send_mutex_);
  if (!connected_.load()) throw TransportError("link is not connected");
  std::size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n =
        ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n <= 0) {
      connected_.store(false);
      throw TransportError("send failed");
    }
    off += static_cast<std::size_t>(n);
  }
  return seq;
}

std::uint64_t TcpLink::send_query_stub(const std::string& stub) {
  WireMessage msg;
  msg.type = MessageType::scene_query;
  msg.sequence = next_sequence_.fetch_add(1);
  msg.timestamp_ms = static_cast<std::int64_t>(clock_() * 1000.0);
  msg.body = {{"stub", stub}};
  return send_frame(encode(msg), msg.sequence);
}

std::uint64_t TcpLink::send_heartbeat() {
  WireMessage msg;
  msg.type = MessageType::heartbeat;
  msg.sequence = next_sequence_.fetch_add(1);
  msg.timestamp_ms = static_cast<std::int64_t>(clock_() * 1000.0);
  return send_frame(encode(msg), msg.sequence);
}

void TcpLink::receive_loop() {
  FrameReader reader;
  char buf[4096];
  while (connected_.load()) {
    const ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
    if (n <= 0) break;
    reader.feed(buf, static_cast<std::size_t>(n));
    while (true) {
      std::string body;
      try {
        auto next = reader.next_body();
        if (!next) break;
        body = std::move(*next);
      } catch (const FramingError&) {
        continue;  // skip unusable frame, stream stays aligned
      }
      try {
        const WireMessage msg = decode_body(body);
        if (msg.type == MessageType::payload_reply)
          box_.offer(payload_from_body(msg.body), msg.sequence, clock_());
      } catch (const Error&) {
        // Undecodable reply: ignore; freshness logic handles the gap.
      }
    }
  }
  connected_.store(false);
}

}  // namespace gainsched::comms
