#include "gainsched/comms/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include "gainsched/comms/wire.hpp"
#include "gainsched/core/errors.hpp"

namespace gainsched::comms {

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

bool send_all(int fd, const std::string& bytes) {
  std::size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + off, bytes.size() - off,
                             MSG_NOSIGNAL);
    if (n <= 0) return false;
    off += static_cast<std::size_t>(n);
  }
  return true;
}

}  // namespace

TcpServer::TcpServer(std::shared_ptr<const Pipeline> pipeline,
                     std::string host, int port)
    : pipeline_(std::move(pipeline)), host_(std::move(host)), port_(port) {}

TcpServer::~TcpServer() { stop(); }

void TcpServer::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError("socket() failed");
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port_));
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1)
    throw TransportError("bad listen address: " + host_);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("cannot bind " + host_ + ":" + std::to_string(port_));
  }
  if (port_ == 0) {
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);
  }
  if (::listen(listen_fd_, 8) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw TransportError("listen() failed");
  }
  running_.store(true);
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void TcpServer::stop() {
  if (!running_.exchange(false)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  std::lock_guard<std::mutex> lock(handlers_mutex_);
  for (auto& t : handlers_)
    if (t.joinable()) t.join();
  handlers_.clear();
}

void TcpServer::accept_loop() {
  while (running_.load()) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (!running_.load()) break;
      continue;
    }
    int yes = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &yes, sizeof(yes));
    std::lock_guard<std::mutex> lock(handlers_mutex_);
    handlers_.emplace_back([this, fd] { handle_connection(fd); });
  }
}

void TcpServer::handle_connection(int fd) {
  FrameReader reader;
  char buf[4096];
  while (running_.load()) {
    const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) break;
    reader.feed(buf, static_cast<std::size_t>(n));

    while (true) {
      std::string body;
      try {
        auto next = reader.next_body();
        if (!next) break;
        body = std::move(*next);
      } catch (const FramingError& e) {
        WireMessage err{MessageType::error, 0, now_ms(),
                        {{"message", e.what()}}};
        if (!send_all(fd, encode(err))) goto done;
        continue;  // zero-length frames are skipped, the stream resyncs
      }

      WireMessage reply;
      reply.timestamp_ms = now_ms();
      std::uint64_t query_seq = 0;
      try {
        const WireMessage msg = decode_body(body);
        query_seq = msg.sequence;
        switch (msg.type) {
          case MessageType::scene_query: {
            const double delay = delay_s_.load();
            if (delay > 0.0)
              std::this_thread::sleep_for(
                  std::chrono::duration<double>(delay));
            Pipeline::Answer ans;
            if (msg.body.contains("stub"))
              ans = pipeline_->answer_stub(
                  msg.body["stub"].get<std::string>());
            else if (msg.body.contains("descriptor"))
              ans = pipeline_->answer_descriptor(
                  percept::parse_descriptor(msg.body["descriptor"].dump()));
            else
              throw WireParseError("scene_query needs 'stub' or 'descriptor'");
            reply.type = MessageType::payload_reply;
            reply.sequence = msg.sequence;
            reply.body = payload_to_body(ans.payload);
            queries_served_.fetch_add(1);
            break;
          }
          case MessageType::heartbeat:
            reply.type = MessageType::heartbeat;
            reply.sequence = msg.sequence;
            break;
          default:
            throw WireParseError(std::string("unexpected message type '") +
                                 to_string(msg.type) + "'");
        }
      } catch (const Error& e) {
        // Pipeline or parse failure: error reply with the conservative
        // profile attached so the client still has something safe to run.
        reply.type = MessageType::error;
        reply.sequence = query_seq;
        reply.body = {{"message", e.what()},
                      {"payload", payload_to_body(impedance::fallback_payload())}};
      }
      if (!send_all(fd, encode(reply))) goto done;
    }
  }
done:
  ::close(fd);
}

}  // namespace gainsched::comms
