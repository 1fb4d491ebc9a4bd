#include "gainsched/sim/log.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"

namespace gainsched::sim {

namespace {

std::vector<std::string> log_columns() {
  std::vector<std::string> cols = {"t", "scene_stub", "reason", "v"};
  auto block = [&](const std::string& prefix, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      cols.push_back(prefix + std::to_string(i));
  };
  block("kp", kNumJoints);
  block("kd", kNumJoints);
  block("q", kNumJoints);
  block("q_ref", kNumJoints);
  block("tau", kNumJoints);
  cols.push_back("event");
  return cols;
}

}  // namespace

std::string RunLog::to_csv() const {
  std::ostringstream out;
  out << "# script=" << script_name << " missed_ticks=" << missed_ticks
      << '\n';
  const auto cols = log_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ',';
    out << cols[i];
  }
  out << '\n';
  for (const auto& rec : ticks) {
    out << str::format_double(rec.t) << ',' << str::csv_escape(rec.scene_stub)
        << ',' << to_string(rec.reason) << ',' << rec.v_code;
    auto block = [&](const auto& arr) {
      for (double v : arr) out << ',' << str::format_double(v);
    };
    block(rec.kp);
    block(rec.kd);
    block(rec.q);
    block(rec.q_ref);
    block(rec.tau);
    out << ',' << str::csv_escape(rec.event) << '\n';
  }
  return out.str();
}

RunLog RunLog::from_csv(const std::string& text, const std::string& source) {
  RunLog log;
  std::string body = text;
  if (body.rfind("# ", 0) == 0) {
    const auto eol = body.find('\n');
    const std::string header = body.substr(2, eol - 2);
    body = body.substr(eol + 1);
    const auto script_pos = header.find("script=");
    const auto missed_pos = header.find("missed_ticks=");
    if (script_pos != std::string::npos && missed_pos != std::string::npos) {
      log.script_name = header.substr(script_pos + 7,
                                      header.find(' ', script_pos) - 7);
      long long missed = 0;
      str::parse_int(header.substr(missed_pos + 13), missed);
      log.missed_ticks = static_cast<int>(missed);
    }
  }
  const auto rows = str::parse_csv(body);
  const auto cols = log_columns();
  if (rows.empty())
    throw ValidationError(source + ": log has no header row");
  if (rows[0].size() != cols.size())
    throw ValidationError(source + ": log header has " +
                          std::to_string(rows[0].size()) + " columns, expected " +
                          std::to_string(cols.size()));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != cols.size())
      throw ValidationError(source + ": row " + std::to_string(r) +
                            " has wrong column count");
    TickRecord rec;
    std::size_t c = 0;
    if (!str::parse_double(row[c++], rec.t))
      throw ValidationError(source + ": bad t in row " + std::to_string(r));
    rec.scene_stub = row[c++];
    if (!payload_reason_from_string(row[c++], rec.reason))
      throw ValidationError(source + ": bad reason in row " + std::to_string(r));
    long long v = 0;
    if (!str::parse_int(row[c++], v))
      throw ValidationError(source + ": bad v in row " + std::to_string(r));
    rec.v_code = static_cast<int>(v);
    auto block = [&](auto& arr) {
      for (double& x : arr)
        if (!str::parse_double(row[c++], x))
          throw ValidationError(source + ": bad numeric in row " +
                                std::to_string(r));
    };
    block(rec.kp);
    block(rec.kd);
    block(rec.q);
    block(rec.q_ref);
    block(rec.tau);
    rec.event = row[c++];
    log.ticks.push_back(std::move(rec));
  }
  return log;
}

void RunLog::save(const std::string& path) const {
  str::write_file(path, to_csv());
}

RunLog RunLog::load(const std::string& path) {
  return from_csv(str::read_file(path), path);
}

Metrics analyze(const RunLog& log) {
  if (log.ticks.empty())
    throw ContractError("analyze: log contains no ticks");

  Metrics m;
  m.missed_ticks = log.missed_ticks;

  // Split into phases at scene-change boundaries.
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [first, last]
  std::size_t phase_start = 0;
  for (std::size_t i = 1; i < log.ticks.size(); ++i) {
    if (log.ticks[i].scene_stub != log.ticks[phase_start].scene_stub) {
      spans.emplace_back(phase_start, i - 1);
      phase_start = i;
    }
  }
  spans.emplace_back(phase_start, log.ticks.size() - 1);

  for (std::size_t s = 0; s < spans.size(); ++s) {
    const auto [first, last] = spans[s];
    PhaseMetrics pm;
    pm.stub = log.ticks[first].scene_stub;
    pm.t_start = log.ticks[first].t;
    pm.t_end = log.ticks[last].t;
    const std::size_t count = last - first + 1;
    for (std::size_t i = first; i <= last; ++i) {
      const auto& rec = log.ticks[i];
      for (std::size_t j = 0; j < kNumJoints; ++j) {
        pm.mean_kp[j] += rec.kp[j];
        pm.mean_kd[j] += rec.kd[j];
        pm.max_tracking_error = std::max(
            pm.max_tracking_error, std::abs(rec.q[j] - rec.q_ref[j]));
      }
    }
    for (std::size_t j = 0; j < kNumJoints; ++j) {
      pm.mean_kp[j] /= static_cast<double>(count);
      pm.mean_kd[j] /= static_cast<double>(count);
    }
    pm.last_kp = log.ticks[last].kp;
    pm.last_kd = log.ticks[last].kd;
    pm.last_v = log.ticks[last].v_code;
    m.max_tracking_error =
        std::max(m.max_tracking_error, pm.max_tracking_error);

    if (s > 0) {
      const auto& prev = log.ticks[spans[s - 1].second];
      double denom = 0.0;
      for (std::size_t j = 0; j < kNumJoints; ++j) {
        denom = std::max(denom, std::abs(prev.kp[j] - pm.last_kp[j]));
        denom = std::max(denom, std::abs(prev.kd[j] - pm.last_kd[j]));
      }
      if (denom > 1e-12) {
        for (std::size_t i = first; i <= last; ++i) {
          double gap = 0.0;
          for (std::size_t j = 0; j < kNumJoints; ++j) {
            gap = std::max(gap, std::abs(log.ticks[i].kp[j] - pm.last_kp[j]));
            gap = std::max(gap, std::abs(log.ticks[i].kd[j] - pm.last_kd[j]));
          }
          if (gap <= 0.1 * denom) {
            pm.time_to_modulate = log.ticks[i].t - pm.t_start;
            break;
          }
        }
      }
    }
    m.phases.push_back(std::move(pm));
  }

  for (const auto& rec : log.ticks) ++m.reason_histogram[to_string(rec.reason)];
  return m;
}

std::string Metrics::to_text() const {
  std::ostringstream out;
  out << "phases:\n";
  for (const auto& p : phases) {
    double mean_kp = 0.0, mean_kd = 0.0;
    for (std::size_t j = 0; j < kNumJoints; ++j) {
      mean_kp += p.mean_kp[j];
      mean_kd += p.mean_kd[j];
    }
    mean_kp /= kNumJoints;
    mean_kd /= kNumJoints;
    out << "  [" << str::format_double(p.t_start) << ", "
        << str::format_double(p.t_end) << "] stub=" << p.stub
        << " mean_kp=" << str::format_double(mean_kp)
        << " mean_kd=" << str::format_double(mean_kd) << " last_v=" << p.last_v
        << " max_err=" << str::format_double(p.max_tracking_error)
        << " time_to_modulate=";
    if (p.time_to_modulate)
      out << str::format_double(*p.time_to_modulate);
    else
      out << "none";
    out << '\n';
  }
  out << "reason histogram:";
  for (const auto& [k, v] : reason_histogram) out << ' ' << k << '=' << v;
  out << "\nmissed_ticks=" << missed_ticks
      << "\nmax_tracking_error=" << str::format_double(max_tracking_error)
      << '\n';
  return out.str();
}

}  // namespace gainsched::sim
