#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mempix/harness.hpp"
#include "mempix/log_stats.hpp"
#include "mempix/scenario.hpp"
#include "mempix/snapshot.hpp"

namespace mempix {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading file: " + path);
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("error writing file: " + path);
}

inline std::string format_inspection(const Engine& engine) {
  const EngineConfig& cfg = engine.config();
  std::string out;
  out += "tick " + std::to_string(engine.current_tick()) + "\n";
  out += "config: capacity=" + std::to_string(cfg.capacity) +
         " i_max=" + format_intensity(cfg.max_intensity) +
         " i_known=" + format_intensity(cfg.known_intensity) +
         " r=" + format_intensity(cfg.reinforcement) +
         " w=" + std::to_string(cfg.decay_period) +
         " p=" + std::to_string(cfg.ingest_period) + "\n";
  out += "pool: " + std::to_string(engine.pixel_pool().free_count()) + "/" +
         std::to_string(engine.pixel_pool().capacity()) + " pixels free\n";

  const auto& entries = engine.color_table().entries();
  out += "color table (" + std::to_string(entries.size()) + " entries):\n";
  for (std::size_t i = 0; i < entries.size(); ++i)
    out += "  [" + std::to_string(i) + "] color " + std::to_string(entries[i].color) +
           " -> screen " + std::to_string(entries[i].screen) + " datum " +
           datum_display(entries[i].datum) + "\n";

  const auto& screens = engine.screen_pool().screens();
  std::size_t roots = 0;
  for (const auto& [seq, s] : screens) roots += s.is_root ? 1 : 0;
  out += "screens (" + std::to_string(screens.size()) + ", roots " +
         std::to_string(roots) + "):\n";
  for (const auto& [seq, s] : screens) {
    out += "  screen " + std::to_string(s.seq) + (s.is_root ? " root" : "") +
           " tick=" + std::to_string(s.tick) + " color=" + std::to_string(s.color) +
           " datum=" + datum_display(s.datum) +
           " pixels=" + std::to_string(s.pixels.size()) + "\n";
    for (const auto& px : s.pixels)
      out += "    device=" + std::to_string(px.device) +
             " color=" + std::to_string(px.color) +
             " intensity=" + format_intensity(px.intensity) +
             " datum=" + datum_display(px.datum) + "\n";
  }
  return out;
}

}  // namespace cli_detail

// Entry point behind the `mempix` binary. Exit codes: 0 success, 1 usage or
// validation error, 2 I/O error.
inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"mempix - deterministic associative memory engine"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
  std::string scenario_path;
  std::string log_path;
  std::string snapshot_path;
  std::optional<Tick> ticks_override;
  run_cmd->add_option("--scenario", scenario_path, "scenario file to execute")
      ->required();
  run_cmd->add_option("--log", log_path, "write the event log here");
  run_cmd->add_option("--snapshot-out", snapshot_path, "write the final state here");
  run_cmd->add_option("--ticks", ticks_override, "override the scenario's tick count");

  auto* inspect_cmd = app.add_subcommand("inspect", "dump a snapshot in readable form");
  std::string inspect_path;
  inspect_cmd->add_option("--snapshot", inspect_path, "snapshot file to inspect")
      ->required();

  auto* stats_cmd = app.add_subcommand("stats", "summarize an event log");
  std::string stats_path;
  stats_cmd->add_option("--log", stats_path, "event log file to summarize")
      ->required();

  try {
    app.parse(argc, argv);

    if (run_cmd->parsed()) {
      ScenarioSpec spec = load_scenario(scenario_path);
      if (ticks_override) {
        if (*ticks_override == 0) throw ConfigError("ticks override must be >= 1");
        spec.run_ticks = *ticks_override;
      }
      RunResult result = run(spec);
      if (!log_path.empty())
        cli_detail::write_file(log_path, format_event_log(result.events));
      if (!snapshot_path.empty())
        cli_detail::write_file(snapshot_path, write_snapshot(result.engine));
      std::cout << "ran " << spec.run_ticks << " ticks: "
                << result.events.size() << " events, "
                << result.engine.screen_pool().size() << " screens live, "
                << result.engine.pixel_pool().free_count() << "/"
                << result.engine.pixel_pool().capacity() << " pixels free\n";
      return 0;
    }
    if (inspect_cmd->parsed()) {
      const std::string blob = cli_detail::read_file(inspect_path);
      Engine engine = restore_snapshot(blob);
      std::cout << cli_detail::format_inspection(engine);
      return 0;
    }
    if (stats_cmd->parsed()) {
      const std::string text = cli_detail::read_file(stats_path);
      const LogStats stats = compute_stats(parse_event_log(text));
      std::cout << format_stats(stats);
      return 0;
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mempix
