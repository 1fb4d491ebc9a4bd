#include "gainsched/sim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <thread>

#include "gainsched/core/errors.hpp"
#include "gainsched/impedance/impedance.hpp"
#include "gainsched/sim/trajectory.hpp"

namespace gainsched::sim {

namespace {

struct PendingReply {
  double deliver_at;
  ImpedancePayload payload;
  std::uint64_t sequence;
};

struct EventMarker {
  std::string text;
  void add(const std::string& s) {
    if (!text.empty()) text += '|';
    text += s;
  }
};

}  // namespace

RunLog run_scenario(const ScenarioScript& script, const Pipeline& pipeline,
                    const kin::ArmModel& model, const SimParams& params,
                    const RunOptions& options) {
  // Every referenced stub must resolve before the run starts.
  for (const auto& ev : script.timeline) {
    if (ev.type == ScriptEvent::Type::set_scene &&
        !pipeline.vlm().has_stub(ev.stub))
      throw ConfigError("script '" + script.name +
                        "' references unknown scene stub '" + ev.stub + "'");
  }

  const double dt = kControlDt;
  const auto total_ticks =
      static_cast<std::size_t>(std::llround(script.duration / dt)) + 1;
  const bool paced =
      options.realtime || options.transport == RunOptions::Transport::tcp;

  RunLog log;
  log.script_name = script.name;
  log.ticks.reserve(total_ticks);

  Plant plant(model, params.friction);
  PlantState state;
  state.q = model.home;

  TrajectoryGenerator traj(model, model.home, params.ik_weights);
  comms::OnboardScheduler onboard(params.policy, params.slew_duration);
  comms::PayloadBox box;

  const bool tcp = options.transport == RunOptions::Transport::tcp;
  const auto wall_start = std::chrono::steady_clock::now();
  std::unique_ptr<comms::TcpLink> link;
  if (tcp) {
    link = std::make_unique<comms::TcpLink>(options.server_host,
                                            options.server_port);
    // Stamp received payloads on the same time base as the simulated clock.
    link->set_clock([wall_start] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           wall_start)
          .count();
    });
    link->connect();
  }

  std::deque<PendingReply> pending;            // in-process transport
  double latency = 0.0;
  double drop_until = -1.0;
  double next_stream_t = 0.0;
  double next_heartbeat_t = 0.0;
  std::uint64_t sequence = 0;
  std::string current_stub;
  percept::NormalizedDescriptor current_scene;  // valid once a stub is set
  std::size_t next_event = 0;

  for (std::size_t tick = 0; tick < total_ticks; ++tick) {
    const double t = static_cast<double>(tick) * dt;
    EventMarker marker;

    if (paced) {
      const auto deadline =
          wall_start + std::chrono::duration_cast<
                           std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(t));
      const auto now = std::chrono::steady_clock::now();
      if (now < deadline)
        std::this_thread::sleep_until(deadline);
      else if (now - deadline > std::chrono::duration<double>(dt))
        ++log.missed_ticks;
    }

    // Apply due script events.
    while (next_event < script.timeline.size() &&
           script.timeline[next_event].t <= t + 1e-9) {
      const auto& ev = script.timeline[next_event++];
      switch (ev.type) {
        case ScriptEvent::Type::set_scene:
          current_stub = ev.stub;
          current_scene = percept::normalize(
              pipeline.normalization(), pipeline.vlm().describe({ev.stub, {}}));
          marker.add("scene:" + ev.stub);
          break;
        case ScriptEvent::Type::set_target: {
          const double v_mps = speed_to_mps(onboard.target().nominal_v);
          traj.set_target(*ev.targets, v_mps, t);
          marker.add("target");
          break;
        }
        case ScriptEvent::Type::inject_latency:
          latency = ev.seconds;
          if (tcp) marker.add("latency_event_ignored_over_tcp");
          else marker.add("latency:" + std::to_string(ev.seconds));
          break;
        case ScriptEvent::Type::drop_connection:
          drop_until = t + ev.duration;
          pending.clear();  // in-flight replies are lost with the connection
          if (tcp && link->connected()) link->close();
          marker.add("drop:" + std::to_string(ev.duration));
          break;
      }
    }

    const bool dropped = t < drop_until;
    if (tcp && !dropped && !link->connected()) {
      try {
        link->connect();
        marker.add("reconnected");
      } catch (const TransportError&) {
        // Server still unreachable; retry next tick.
      }
    }

    // Stream scene queries at the configured rate.
    if (!current_stub.empty() && t + 1e-9 >= next_stream_t) {
      next_stream_t = t + 1.0 / params.policy.stream_rate_hz;
      if (!dropped) {
        if (tcp) {
          if (link->connected()) {
            try {
              link->send_query_stub(current_stub);
            } catch (const TransportError&) {
            }
          }
        } else {
          ++sequence;
          const auto answer = pipeline.answer_stub(current_stub);
          pending.push_back({t + latency, answer.payload, sequence});
        }
      }
    }

    if (tcp && t + 1e-9 >= next_heartbeat_t) {
      next_heartbeat_t = t + params.policy.heartbeat_period_s;
      if (!dropped && link->connected()) {
        try {
          link->send_heartbeat();
        } catch (const TransportError&) {
        }
      }
    }

    // Deliver due replies (in-process transport).
    while (!pending.empty() && pending.front().deliver_at <= t + 1e-9) {
      const auto& r = pending.front();
      box.offer(r.payload, r.sequence, r.deliver_at);
      pending.pop_front();
    }

    // Control tick: freshness -> scheduler -> onboard guards -> torque.
    comms::PayloadBox& active_box = tcp ? link->box() : box;
    ImpedancePayload payload = onboard.tick(active_box, t, dt);
    if (!current_stub.empty())
      payload = safety::apply_guards(payload, current_scene, std::nullopt,
                                     pipeline.limits());

    traj.set_speed(speed_to_mps(payload.nominal_v), t);
    const auto ref = traj.sample(t);

    impedance::JointCommandSet cmd;
    cmd.q_ref = ref.q;
    cmd.qd_ref = ref.qd;
    cmd.tau_ff = kin::gravity_torques(model, ref.q);
    cmd.kp = payload.kp;
    cmd.kd = payload.kd;
    const JointVector tau =
        impedance::impedance_torque(cmd, {state.q, state.qd});

    TickRecord rec;
    rec.t = t;
    rec.scene_stub = current_stub;
    rec.reason = payload.reason;
    rec.v_code = static_cast<int>(payload.nominal_v);
    rec.kp = payload.kp;
    rec.kd = payload.kd;
    rec.q = state.q;
    rec.q_ref = ref.q;
    rec.tau = tau;
    rec.event = marker.text;
    log.ticks.push_back(std::move(rec));

    state = plant.step(state, tau, dt);
  }

  if (link) link->close();
  return log;
}

}  // namespace gainsched::sim
