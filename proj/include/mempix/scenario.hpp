#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mempix/config.hpp"
#include "mempix/types.hpp"

namespace mempix {

struct DeviceSchedule {
  DeviceId device = 0;
  std::map<Tick, Datum> schedule;  // ingest tick -> reading
};

// A fully-specified deterministic run: engine parameters, scripted device
// emissions, and the number of ticks to execute.
struct ScenarioSpec {
  EngineConfig config{};
  std::vector<DeviceSchedule> devices{};
  Tick run_ticks = 0;
};

// Scenario text format: one directive per line, '#' starts a comment.
//
//   ticks <n>                  run length (required)
//   capacity <n>               pixel pool capacity
//   i_max <decimal>            first-occurrence intensity, e.g. 5.000
//   i_known <decimal>          re-occurrence intensity
//   r <decimal>                reinforcement credit, 0 < r < 1
//   w <n>                      ticks between decay sweeps
//   p <n>                      ticks between device polls
//   root <datum>               start a root screen with this header datum
//   pixel <device> <datum>     add a pixel to the last declared root
//   device <id>                declare a scripted device
//   emit <device> <tick> <datum>   schedule a reading (tick must be < ticks)
//
// A <datum> is either a bare run of printable non-space characters or
// hex:<lowercase hex> for arbitrary bytes. Intensities are decimals with at
// most three fractional digits, parsed exactly (never through binary
// floating point).
ScenarioSpec parse_scenario(std::string_view text);

// Reads and parses a scenario file; unreadable file -> IoError.
ScenarioSpec load_scenario(const std::string& path);

namespace scenario_detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

template <typename T>
T parse_number(const Token& tok, std::size_t line_no, const char* what) {
  T value{};
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ScenarioError(std::string(what) + " must be a non-negative integer, got '" +
                            tok.text + "'",
                        line_no, tok.column);
  return value;
}

inline Datum parse_datum(const Token& tok, std::size_t line_no) {
  Datum d;
  if (tok.text.rfind("hex:", 0) == 0) {
    try {
      d = datum_from_hex(tok.text.substr(4));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("bad hex datum: ") + e.what(), line_no,
                          tok.column);
    }
  } else {
    d = tok.text;
  }
  if (!datum_valid(d))
    throw ScenarioError("datum must be 1..4096 bytes", line_no, tok.column);
  return d;
}

inline Intensity parse_intensity_token(const Token& tok, std::size_t line_no,
                                       const char* what) {
  try {
    return Intensity{parse_intensity_millis(tok.text)};
  } catch (const std::invalid_argument&) {
    throw ScenarioError(std::string(what) +
                            " must be a decimal with at most 3 fractional digits",
                        line_no, tok.column);
  }
}

}  // namespace scenario_detail

inline ScenarioSpec parse_scenario(std::string_view text) {
  using namespace scenario_detail;
  ScenarioSpec spec;
  bool saw_ticks = false;
  std::map<DeviceId, std::size_t> device_index;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = nl + 1;

    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const Token& head = tokens[0];
    auto want_args = [&](std::size_t n) {
      if (tokens.size() != n + 1)
        throw ScenarioError("'" + head.text + "' takes " + std::to_string(n) +
                                " argument(s)",
                            line_no, head.column);
    };

    if (head.text == "ticks") {
      want_args(1);
      spec.run_ticks = parse_number<Tick>(tokens[1], line_no, "ticks");
      saw_ticks = true;
    } else if (head.text == "capacity") {
      want_args(1);
      spec.config.capacity = parse_number<std::uint32_t>(tokens[1], line_no, "capacity");
    } else if (head.text == "i_max") {
      want_args(1);
      spec.config.max_intensity = parse_intensity_token(tokens[1], line_no, "i_max");
    } else if (head.text == "i_known") {
      want_args(1);
      spec.config.known_intensity = parse_intensity_token(tokens[1], line_no, "i_known");
    } else if (head.text == "r") {
      want_args(1);
      spec.config.reinforcement = parse_intensity_token(tokens[1], line_no, "r");
    } else if (head.text == "w") {
      want_args(1);
      spec.config.decay_period = parse_number<std::uint32_t>(tokens[1], line_no, "w");
    } else if (head.text == "p") {
      want_args(1);
      spec.config.ingest_period = parse_number<std::uint32_t>(tokens[1], line_no, "p");
    } else if (head.text == "root") {
      want_args(1);
      RootScreenDef def;
      def.datum = parse_datum(tokens[1], line_no);
      spec.config.roots.push_back(std::move(def));
    } else if (head.text == "pixel") {
      want_args(2);
      if (spec.config.roots.empty())
        throw ScenarioError("'pixel' before any 'root'", line_no, head.column);
      RootPixelDef px;
      px.device = parse_number<DeviceId>(tokens[1], line_no, "device id");
      px.datum = parse_datum(tokens[2], line_no);
      spec.config.roots.back().pixels.push_back(std::move(px));
    } else if (head.text == "device") {
      want_args(1);
      const auto id = parse_number<DeviceId>(tokens[1], line_no, "device id");
      if (device_index.count(id))
        throw ScenarioError("duplicate device id " + std::to_string(id), line_no,
                            tokens[1].column);
      device_index[id] = spec.devices.size();
      spec.devices.push_back({id, {}});
    } else if (head.text == "emit") {
      want_args(3);
      const auto id = parse_number<DeviceId>(tokens[1], line_no, "device id");
      const auto at = parse_number<Tick>(tokens[2], line_no, "tick");
      auto it = device_index.find(id);
      if (it == device_index.end())
        throw ScenarioError("emit for undeclared device " + std::to_string(id),
                            line_no, tokens[1].column);
      auto& schedule = spec.devices[it->second].schedule;
      if (schedule.count(at))
        throw ScenarioError("device " + std::to_string(id) +
                                " already emits at tick " + std::to_string(at),
                            line_no, tokens[2].column);
      schedule[at] = parse_datum(tokens[3], line_no);
    } else {
      throw ScenarioError("unknown directive '" + head.text + "'", line_no,
                          head.column);
    }
    if (nl == text.size()) break;
  }

  if (!saw_ticks)
    throw ScenarioError("missing required 'ticks' directive", line_no, 1);
  if (spec.run_ticks == 0)
    throw ScenarioError("ticks must be >= 1", line_no, 1);

  spec.config.validate();  // ConfigError names the violated bound

  for (const auto& dev : spec.devices)
    for (const auto& [at, datum] : dev.schedule)
      if (at >= spec.run_ticks)
        throw ScenarioError("device " + std::to_string(dev.device) +
                                " emits at tick " + std::to_string(at) +
                                " but the run is only " +
                                std::to_string(spec.run_ticks) + " ticks",
                            line_no, 1);
  return spec;
}

inline ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading scenario file: " + path);
  return parse_scenario(buf.str());
}

}  // namespace mempix
