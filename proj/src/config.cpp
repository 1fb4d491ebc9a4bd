#include "gainsched/config.hpp"

#include <filesystem>

#include <json.hpp>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched {

using nlohmann::json;

RunConfig RunConfig::parse(const std::string& json_text,
                           const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }

  RunConfig cfg;
  const std::filesystem::path base =
      std::filesystem::path(source).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (base / path).string();
  };

  if (j.contains("paths")) {
    const auto& p = j["paths"];
    if (p.contains("db")) cfg.db_path = resolve(p["db"].get<std::string>());
    if (p.contains("model"))
      cfg.model_path = resolve(p["model"].get<std::string>());
    if (p.contains("normalization"))
      cfg.normalization_path = resolve(p["normalization"].get<std::string>());
    if (p.contains("mock_vlm"))
      cfg.mock_vlm_path = resolve(p["mock_vlm"].get<std::string>());
  }
  if (j.contains("retrieval")) {
    const auto& r = j["retrieval"];
    cfg.retrieval.distance_threshold =
        r.value("distance_threshold", cfg.retrieval.distance_threshold);
    cfg.retrieval.tie_margin = r.value("tie_margin", cfg.retrieval.tie_margin);
  }
  if (j.contains("safety")) {
    const auto& s = j["safety"];
    cfg.safety.fragile_kp_cap =
        s.value("fragile_kp_cap", cfg.safety.fragile_kp_cap);
    if (s.contains("human_present_max_v")) {
      if (!speed_from_string(s["human_present_max_v"].get<std::string>(),
                             cfg.safety.human_present_max_v))
        throw ConfigError(source + ": bad human_present_max_v");
    }
    cfg.safety.min_separation_for_normal_v_mm =
        s.value("min_separation_for_normal_v_mm",
                cfg.safety.min_separation_for_normal_v_mm);
    if (s.contains("ssm")) {
      const auto& m = s["ssm"];
      cfg.safety.ssm.approach_speed_mm_s =
          m.value("approach_speed_mm_s", cfg.safety.ssm.approach_speed_mm_s);
      cfg.safety.ssm.stop_time_s =
          m.value("stop_time_s", cfg.safety.ssm.stop_time_s);
      cfg.safety.ssm.intrusion_mm =
          m.value("intrusion_mm", cfg.safety.ssm.intrusion_mm);
    }
  }
  if (j.contains("comms")) {
    const auto& c = j["comms"];
    cfg.comms.staleness_timeout_s =
        c.value("staleness_timeout_s", cfg.comms.staleness_timeout_s);
    cfg.comms.stream_rate_hz = c.value("stream_rate_hz", cfg.comms.stream_rate_hz);
    cfg.comms.control_rate_hz =
        c.value("control_rate_hz", cfg.comms.control_rate_hz);
    cfg.comms.heartbeat_period_s =
        c.value("heartbeat_period_s", cfg.comms.heartbeat_period_s);
    cfg.host = c.value("host", cfg.host);
    cfg.port = c.value("port", cfg.port);
  }
  if (j.contains("impedance"))
    cfg.slew_duration_s =
        j["impedance"].value("slew_duration_s", cfg.slew_duration_s);
  if (j.contains("sim")) cfg.friction = j["sim"].value("friction", cfg.friction);
  cfg.embedder = j.value("embedder", cfg.embedder);
  cfg.seed = j.value("seed", cfg.seed);

  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  return parse(str::read_file(path), path);
}

void RunConfig::validate() const {
  if (!(retrieval.distance_threshold > 0.0))
    throw ConfigError("retrieval.distance_threshold must be > 0");
  if (!(retrieval.tie_margin > 0.0 && retrieval.tie_margin < 1.0))
    throw ConfigError("retrieval.tie_margin must be in (0, 1)");
  if (safety.fragile_kp_cap < kKpMin || safety.fragile_kp_cap > kKpMax)
    throw ConfigError("safety.fragile_kp_cap must stay within [10, 60]");
  if (!(safety.ssm.approach_speed_mm_s > 0.0) ||
      !(safety.ssm.stop_time_s > 0.0) || !(safety.ssm.intrusion_mm > 0.0))
    throw ConfigError("ssm parameters must be positive");
  if (!(comms.stream_rate_hz >= 1.0 && comms.stream_rate_hz <= 2.0))
    throw ConfigError("comms.stream_rate_hz must be within [1, 2]");
  // Must exceed the worst-case end-to-end latency budget (1.4 s).
  if (!(comms.staleness_timeout_s > 1.4))
    throw ConfigError("comms.staleness_timeout_s must be > 1.4");
  if (!(comms.control_rate_hz > 0.0))
    throw ConfigError("comms.control_rate_hz must be positive");
  if (slew_duration_s < 0.0)
    throw ConfigError("impedance.slew_duration_s must be >= 0");
  if (friction < 0.0) throw ConfigError("sim.friction must be >= 0");
  if (port < 0 || port > 65535) throw ConfigError("bad port");
}

sim::SimParams RunConfig::sim_params() const {
  sim::SimParams p;
  p.policy = comms;
  p.slew_duration = slew_duration_s;
  p.friction = friction;
  return p;
}

std::shared_ptr<Pipeline> build_pipeline(const RunConfig& cfg) {
  return std::make_shared<Pipeline>(
      db::load_database(cfg.db_path),
      percept::NormalizationTable::load(cfg.normalization_path),
      percept::MockVlmClient::load(cfg.mock_vlm_path),
      embedding::make_embedder(cfg.embedder), cfg.retrieval, cfg.safety);
}

}  // namespace gainsched
