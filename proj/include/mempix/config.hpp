#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mempix/types.hpp"

namespace mempix {

struct RootPixelDef {
  DeviceId device = 0;
  Datum datum{};
};

// A built-in stimulus -> response mapping, installed at engine start and
// never decayed or overwritten. `datum` is the screen-level datum announced
// in the color table; when omitted it is derived from the pixels the same
// way a committed screen's header is.
struct RootScreenDef {
  std::optional<Datum> datum{};
  std::vector<RootPixelDef> pixels{};
};

// All engine parameters. Defaults are arbitrary but documented; every value
// can be overridden per scenario.
struct EngineConfig {
  std::uint32_t capacity = 64;        // dynamic pixel budget
  Intensity max_intensity{5000};      // intensity of first-occurrence pixels
  Intensity known_intensity{3000};    // intensity of re-occurring pixels
  Intensity reinforcement{500};       // per-sweep credit r, 0 < r < 1
  std::uint32_t decay_period = 4;     // w: ticks between decay sweeps
  std::uint32_t ingest_period = 1;    // p: ticks between device polls
  std::vector<RootScreenDef> roots{};

  // Throws ConfigError naming the violated bound.
  void validate() const {
    if (capacity == 0)
      throw ConfigError("invalid config: require capacity > 0");
    if (max_intensity.millis <= 0)
      throw ConfigError("invalid config: require i_max > 0");
    if (known_intensity.millis <= 0)
      throw ConfigError("invalid config: require i_known > 0");
    if (known_intensity >= max_intensity)
      throw ConfigError("invalid config: require i_known < i_max");
    if (reinforcement.millis <= 0 || reinforcement.millis >= kIntensityUnit)
      throw ConfigError("invalid config: require 0 < r < 1");
    if (decay_period == 0)
      throw ConfigError("invalid config: require w > 0");
    if (ingest_period == 0)
      throw ConfigError("invalid config: require p > 0");
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& root = roots[i];
      if (root.pixels.empty())
        throw ConfigError("invalid config: root " + std::to_string(i) +
                          " has no pixels");
      if (root.datum && !datum_valid(*root.datum))
        throw ConfigError("invalid config: root " + std::to_string(i) +
                          " datum must be 1..4096 bytes");
      for (const auto& px : root.pixels)
        if (!datum_valid(px.datum))
          throw ConfigError("invalid config: root " + std::to_string(i) +
                            " pixel datum must be 1..4096 bytes");
    }
  }
};

// One polled sensor reading: at most one per device per ingest tick.
struct DeviceInput {
  DeviceId device = 0;
  Datum datum{};

  friend bool operator==(const DeviceInput&, const DeviceInput&) = default;
};

}  // namespace mempix
