#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "gainsched/core/types.hpp"
#include "gainsched/impedance/impedance.hpp"

namespace gainsched::comms {

struct FreshnessPolicy {
  double staleness_timeout_s = 3.0;
  double stream_rate_hz = 1.0;  // scene queries per second, 1-2 Hz
  double control_rate_hz = 50.0;
  double heartbeat_period_s = 1.0;
};

struct TimedPayload {
  ImpedancePayload payload;
  std::uint64_t sequence = 0;
  double received_at = 0.0;  // seconds, caller's clock
};

/// Freshest-payload mailbox shared between the network side and the control
/// loop. Replies older (by sequence) than the newest applied one are
/// discarded. The lock is held only to copy the payload, never across any
/// network operation, so the control loop cannot block on the network.
class PayloadBox {
 public:
  /// Returns false when the reply is stale (sequence not newer).
  bool offer(const ImpedancePayload& payload, std::uint64_t sequence,
             double received_at);
  std::optional<TimedPayload> latest() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::optional<TimedPayload> latest_;
};

/// Control-side freshness logic, transport agnostic: returns the most recent
/// valid payload while it is younger than the staleness timeout, otherwise
/// the conservative fallback; every change runs through the gain scheduler
/// in both directions.
class OnboardScheduler {
 public:
  OnboardScheduler(FreshnessPolicy policy, double slew_duration);

  /// One control tick at time `now` (seconds), advancing the scheduler by dt.
  ImpedancePayload tick(const PayloadBox& box, double now, double dt);

  /// Payload the scheduler is currently ramping toward.
  const ImpedancePayload& target() const { return sched_.target(); }
  bool using_fallback() const { return using_fallback_; }
  const FreshnessPolicy& policy() const { return policy_; }

 private:
  FreshnessPolicy policy_;
  impedance::GainScheduler sched_;
  bool using_fallback_ = true;
};

/// Blocking TCP link to the payload server. A receiver thread parses replies
/// into the PayloadBox; send_query/send_heartbeat write frames out. All
/// socket errors surface as TransportError on send and silently stop the
/// receiver (the control loop then ages out and falls back).
class TcpLink {
 public:
  TcpLink(std::string host, int port);
  ~TcpLink();

  TcpLink(const TcpLink&) = delete;
  TcpLink& operator=(const TcpLink&) = delete;

  void connect();  // throws TransportError
  void close();
  bool connected() const { return connected_.load(); }

  std::uint64_t send_query_stub(const std::string& stub);
  std::uint64_t send_heartbeat();

  PayloadBox& box() { return box_; }

  /// Clock used to stamp received payloads; defaults to a steady wall clock.
  /// Must be set before connect() when a custom time base is needed.
  void set_clock(std::function<double()> clock) { clock_ = std::move(clock); }

 private:
  void receive_loop();
  std::uint64_t send_frame(const std::string& bytes, std::uint64_t seq);

  std::string host_;
  int port_;
  int fd_ = -1;
  std::atomic<bool> connected_{false};
  std::atomic<std::uint64_t> next_sequence_{1};
  std::thread receiver_;
  PayloadBox box_;
  std::function<double()> clock_;
  std::mutex send_mutex_;
};

}  // namespace gainsched::comms
