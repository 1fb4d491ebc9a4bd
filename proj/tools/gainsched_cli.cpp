#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "gainsched/comms/server.hpp"
#include "gainsched/config.hpp"
#include "gainsched/core/errors.hpp"
#include "gainsched/core/strings.hpp"
#include "gainsched/db/scenario_db.hpp"
#include "gainsched/kernels/kernels.hpp"
#include "gainsched/sim/log.hpp"
#include "gainsched/sim/runner.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;
void on_signal(int) { g_stop = 1; }

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitIo = 2;

using namespace gainsched;

int cmd_validate_db(const std::string& path) {
  std::string text;
  try {
    text = str::read_file(path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  try {
    const auto database = db::parse_database_csv(text, path);
    const auto counts = db::category_counts(database);
    std::cout << "ok: " << database.records.size() << " records\n";
    auto print = [](const char* field, const auto& m) {
      std::cout << "  " << field << ":";
      for (const auto& [k, v] : m) std::cout << ' ' << k << '=' << v;
      std::cout << '\n';
    };
    print("task", counts.task);
    print("main_object", counts.main_object);
    print("object_fragility", counts.object_fragility);
    print("human_presence", counts.human_presence);
    print("nominal_v", counts.nominal_v);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitFindings;
  }
}

int cmd_describe(const RunConfig& cfg, const std::string& stub) {
  auto vlm = percept::MockVlmClient::load(cfg.mock_vlm_path);
  const auto descriptor = vlm.describe({stub, {}});
  std::cout << percept::descriptor_to_json(descriptor) << "\n";
  return kExitOk;
}

int cmd_query(const RunConfig& cfg, const std::string& stub,
              const std::string& descriptor_file, bool explain) {
  const auto pipeline = build_pipeline(cfg);
  Pipeline::Answer ans;
  if (!stub.empty()) {
    ans = pipeline->answer_stub(stub);
  } else {
    const auto text = str::read_file(descriptor_file);
    ans = pipeline->answer_descriptor(percept::parse_descriptor(text));
  }

  std::cout << "query: " << ans.query_text << "\n";
  std::cout << "reason: " << to_string(ans.payload.reason)
            << "  scenario: " << ans.payload.scenario_id
            << "  distance: " << str::format_double(ans.retrieval.distance)
            << "\n";
  std::cout << "v: " << to_string(ans.payload.nominal_v) << "\nkp:";
  for (double v : ans.payload.kp) std::cout << ' ' << str::format_double(v);
  std::cout << "\nkd:";
  for (double v : ans.payload.kd) std::cout << ' ' << str::format_double(v);
  std::cout << "\n";

  if (explain) {
    // Top-3 candidates by full scan.
    const auto query = pipeline->embedder().embed(ans.query_text);
    std::vector<std::pair<double, std::size_t>> dist;
    const auto& index = pipeline->index();
    for (std::size_t i = 0; i < index.vectors.size(); ++i) {
      double sq = 0.0;
      for (std::size_t k = 0; k < query.size(); ++k) {
        const double d = index.vectors[i][k] - query[k];
        sq += d * d;
      }
      dist.emplace_back(std::sqrt(sq), i);
    }
    std::sort(dist.begin(), dist.end());
    const std::size_t top = std::min<std::size_t>(3, dist.size());
    for (std::size_t i = 0; i < top; ++i) {
      std::cout << "candidate " << i + 1 << ": "
                << pipeline->database().records[dist[i].second].scenario_id
                << " distance=" << str::format_double(dist[i].first) << "\n";
    }
  }
  return kExitOk;
}

int cmd_serve(const RunConfig& cfg) {
  auto pipeline = build_pipeline(cfg);
  comms::TcpServer server(pipeline, cfg.host, cfg.port);
  server.start();
  std::cout << "listening on " << cfg.host << ":" << server.port() << "\n";
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  std::cout << "served " << server.queries_served() << " queries\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& script_path,
                 const std::string& out_path, const std::string& transport,
                 const std::string& server) {
  const auto script = sim::ScenarioScript::load(script_path);
  const auto pipeline = build_pipeline(cfg);
  const auto model = kin::ArmModel::load(cfg.model_path);

  sim::RunOptions options;
  if (transport == "tcp") {
    options.transport = sim::RunOptions::Transport::tcp;
    const auto colon = server.rfind(':');
    if (colon == std::string::npos)
      throw ConfigError("--server needs host:port");
    options.server_host = server.substr(0, colon);
    long long port = 0;
    if (!str::parse_int(server.substr(colon + 1), port))
      throw ConfigError("--server needs host:port");
    options.server_port = static_cast<int>(port);
  } else if (transport != "inproc") {
    throw ConfigError("--transport must be inproc or tcp");
  }

  const auto log =
      sim::run_scenario(script, *pipeline, model, cfg.sim_params(), options);
  log.save(out_path);
  std::cout << "wrote " << log.ticks.size() << " ticks to " << out_path
            << " (missed " << log.missed_ticks << ")\n";
  return kExitOk;
}

int cmd_report(const std::string& log_path, const std::string& out_path) {
  const auto log = sim::RunLog::load(log_path);
  const auto metrics = sim::analyze(log);
  std::cout << metrics.to_text();
  if (!out_path.empty()) str::write_file(out_path, metrics.to_text());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scene-driven impedance gain scheduling for a dual-arm robot"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Run configuration file");
  app.add_option("--seed", seed, "Random seed override");

  std::string db_path;
  auto* validate = app.add_subcommand("validate-db", "Validate a scenario database");
  validate->add_option("path", db_path, "CSV database")->required();

  std::string stub;
  auto* describe = app.add_subcommand("describe", "Print a mock scene descriptor");
  describe->add_option("--stub", stub, "Scene stub name")->required();

  std::string query_stub, descriptor_file;
  bool explain = false;
  auto* query = app.add_subcommand("query", "Run the retrieval pipeline once");
  query->add_option("--stub", query_stub, "Scene stub name");
  query->add_option("--descriptor", descriptor_file, "Scene descriptor JSON file");
  query->add_flag("--explain", explain, "Print top-3 candidates");

  auto* serve = app.add_subcommand("serve", "Run the payload server");

  std::string script_path, out_path = "run_log.csv";
  std::string transport = "inproc", server_addr = "127.0.0.1:17430";
  auto* simulate = app.add_subcommand("simulate", "Run a scripted scenario");
  simulate->add_option("script", script_path, "Scenario script JSON")->required();
  simulate->add_option("--out", out_path, "Output log CSV");
  simulate->add_option("--transport", transport, "inproc (default) or tcp");
  simulate->add_option("--server", server_addr, "host:port for tcp transport");

  std::string log_path, report_out;
  auto* report = app.add_subcommand("report", "Metrics from a run log");
  report->add_option("log", log_path, "Run log CSV")->required();
  report->add_option("--out", report_out, "Also write the report here");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
    if (app.count("--seed")) cfg.seed = seed;

    if (validate->parsed()) return cmd_validate_db(db_path);
    if (describe->parsed()) return cmd_describe(cfg, stub);
    if (query->parsed()) {
      if (query_stub.empty() == descriptor_file.empty()) {
        std::cerr << "query needs exactly one of --stub / --descriptor\n";
        return kExitIo;
      }
      return cmd_query(cfg, query_stub, descriptor_file, explain);
    }
    if (serve->parsed()) return cmd_serve(cfg);
    if (simulate->parsed())
      return cmd_simulate(cfg, script_path, out_path, transport, server_addr);
    if (report->parsed()) return cmd_report(log_path, report_out);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitFindings;
  } catch (const gainsched::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
