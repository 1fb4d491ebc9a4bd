#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gainsched/pipeline.hpp"

namespace gainsched::comms {

/// TCP payload server: answers each scene_query with exactly one
/// payload_reply echoing the query's sequence number. Malformed bodies get
/// an error reply (with a fallback payload attached) and the connection
/// stays open. One handler thread per connection; the pipeline is shared
/// read-only state.
class TcpServer {
 public:
  TcpServer(std::shared_ptr<const Pipeline> pipeline, std::string host,
            int port);
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  void start();  // throws TransportError if the port cannot be bound
  void stop();

  int port() const { return port_; }  // actual port after bind (for port 0)

  /// Artificial per-query processing delay, for latency-injection tests.
  void set_processing_delay(double seconds) { delay_s_.store(seconds); }

  std::uint64_t queries_served() const { return queries_served_.load(); }

 private:
  void accept_loop();
  void handle_connection(int fd);

  std::shared_ptr<const Pipeline> pipeline_;
  std::string host_;
  int port_;
  int listen_fd_ = -1;
  std::atomic<double> delay_s_{0.0};
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> queries_served_{0};
  std::thread accept_thread_;
  std::mutex handlers_mutex_;
  std::vector<std::thread> handlers_;
};

}  // namespace gainsched::comms
