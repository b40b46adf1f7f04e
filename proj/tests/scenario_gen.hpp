// Seeded random scenario generation and engine-vs-reference comparison
// helpers shared by the fuzz and oracle suites.

#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mempix/engine.hpp"
#include "reference_model.hpp"

namespace testgen {

struct GenLimits {
  std::uint32_t max_devices = 8;
  std::uint32_t max_capacity = 64;
  std::uint64_t max_ticks = 300;
};

struct GenScenario {
  mempix::EngineConfig config;
  std::vector<std::vector<mempix::DeviceInput>> inputs_per_tick;
  std::uint64_t ticks = 0;
};

// Small datum alphabet so re-occurrence, decay reinforcement and full
// matches all fire often; capacities small enough that eviction and input
// dropping are routinely exercised.
inline GenScenario generate_scenario(std::mt19937& rng, const GenLimits& limits) {
  auto pick = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
  };

  static const std::vector<std::string> alphabet = {"A",   "B",   "C",  "D",
                                                    "HOT", "COLD", "EE", "FF"};

  GenScenario out;
  // Floor of 2 keeps capacities that are smaller than the device count in
  // play, so input dropping is exercised, not just eviction.
  out.config.capacity = static_cast<std::uint32_t>(pick(2, limits.max_capacity));
  out.config.max_intensity.millis = static_cast<std::int64_t>(pick(2, 6)) * 1000;
  out.config.known_intensity.millis =
      static_cast<std::int64_t>(pick(1, out.config.max_intensity.millis / 1000 - 1)) * 1000 +
      static_cast<std::int64_t>(pick(0, 1)) * 500;
  if (out.config.known_intensity >= out.config.max_intensity)
    out.config.known_intensity.millis = out.config.max_intensity.millis - 500;
  out.config.reinforcement.millis = static_cast<std::int64_t>(pick(1, 999));
  out.config.decay_period = static_cast<std::uint32_t>(pick(1, 5));
  out.config.ingest_period = static_cast<std::uint32_t>(pick(1, 3));

  const auto root_count = pick(0, 2);
  for (std::uint64_t i = 0; i < root_count; ++i) {
    mempix::RootScreenDef def;
    def.datum = alphabet[pick(0, alphabet.size() - 1)];
    const auto pixel_count = pick(1, 2);
    for (std::uint64_t j = 0; j < pixel_count; ++j)
      def.pixels.push_back({static_cast<mempix::DeviceId>(pick(20, 24)),
                            alphabet[pick(0, alphabet.size() - 1)]});
    out.config.roots.push_back(std::move(def));
  }

  const auto device_count = pick(1, limits.max_devices);
  out.ticks = pick(10, limits.max_ticks);
  out.inputs_per_tick.resize(out.ticks);
  for (std::uint64_t t = 0; t < out.ticks; ++t) {
    if (t % out.config.ingest_period != 0) continue;
    auto& inputs = out.inputs_per_tick[t];
    for (std::uint32_t d = 1; d <= device_count; ++d)
      if (pick(0, 99) < 55)
        inputs.push_back({d, alphabet[pick(0, alphabet.size() - 1)]});
  }
  return out;
}

// Renders the engine's observable state in the reference model's terms.
inline refmodel::Model to_reference_view(const mempix::Engine& engine) {
  refmodel::Model view{mempix::EngineConfig{}};
  view.table.clear();
  view.screens.clear();
  view.tick = engine.current_tick();
  view.next_seq = engine.next_seq();
  view.next_color = engine.next_color();
  view.free_ = engine.pixel_pool().free_count();
  for (const auto& e : engine.color_table().entries())
    view.table.push_back({e.color, e.screen, e.datum});
  for (const auto& [seq, s] : engine.screen_pool().screens()) {
    refmodel::Screen rs;
    rs.seq = s.seq;
    rs.tick = s.tick;
    rs.root = s.is_root;
    rs.color = s.color;
    rs.datum = s.datum;
    for (const auto& px : s.pixels)
      rs.pixels.push_back({px.color, px.intensity.millis, px.device, px.datum});
    view.screens.push_back(std::move(rs));
  }
  return view;
}

// Empty string when equal, otherwise a description of the first divergence.
inline std::string diff_states(const refmodel::Model& expected,
                               const mempix::Engine& engine) {
  const refmodel::Model actual = to_reference_view(engine);
  std::ostringstream out;
  auto fail = [&out](const std::string& what) {
    out << what;
    return out.str();
  };

  if (actual.tick != expected.tick)
    return fail("tick: engine=" + std::to_string(actual.tick) +
                " reference=" + std::to_string(expected.tick));
  if (actual.next_seq != expected.next_seq)
    return fail("next_seq: engine=" + std::to_string(actual.next_seq) +
                " reference=" + std::to_string(expected.next_seq));
  if (actual.next_color != expected.next_color)
    return fail("next_color: engine=" + std::to_string(actual.next_color) +
                " reference=" + std::to_string(expected.next_color));
  if (actual.free_ != expected.free_)
    return fail("free pixels: engine=" + std::to_string(actual.free_) +
                " reference=" + std::to_string(expected.free_));
  if (actual.table != expected.table) {
    out << "color table diverged; engine has " << actual.table.size()
        << " entries, reference has " << expected.table.size();
    return out.str();
  }
  if (actual.screens.size() != expected.screens.size()) {
    out << "screen count: engine=" << actual.screens.size()
        << " reference=" << expected.screens.size();
    return out.str();
  }
  for (std::size_t i = 0; i < actual.screens.size(); ++i)
    if (!(actual.screens[i] == expected.screens[i])) {
      out << "screen seq=" << expected.screens[i].seq << " diverged";
      if (actual.screens[i].pixels != expected.screens[i].pixels)
        out << " (pixels differ: engine has " << actual.screens[i].pixels.size()
            << ", reference has " << expected.screens[i].pixels.size() << ")";
      return out.str();
    }
  return "";
}

}  // namespace testgen
