#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mempix/decision.hpp"
#include "mempix/engine.hpp"
#include "mempix/events.hpp"
#include "mempix/scenario.hpp"
#include "mempix/types.hpp"

namespace mempix {

// An artificial sense organ / actuator. poll() must be deterministic in the
// tick; actuate() must not block the tick loop.
class PeripheralDevice {
 public:
  virtual ~PeripheralDevice() = default;
  virtual DeviceId device_id() const = 0;
  virtual std::optional<Datum> poll(Tick tick) = 0;
  virtual void actuate(const ActionCommand& command) = 0;
};

// Replays a fixed tick -> datum schedule; ignores actuation.
class ScriptedDevice final : public PeripheralDevice {
 public:
  ScriptedDevice(DeviceId id, std::map<Tick, Datum> schedule)
      : id_(id), schedule_(std::move(schedule)) {}

  DeviceId device_id() const override { return id_; }

  std::optional<Datum> poll(Tick tick) override {
    auto it = schedule_.find(tick);
    if (it == schedule_.end()) return std::nullopt;
    return it->second;
  }

  void actuate(const ActionCommand&) override {}

 private:
  DeviceId id_;
  std::map<Tick, Datum> schedule_;
};

// Records every command it is asked to perform.
class RecordingActuator final : public PeripheralDevice {
 public:
  explicit RecordingActuator(DeviceId id) : id_(id) {}

  DeviceId device_id() const override { return id_; }
  std::optional<Datum> poll(Tick) override { return std::nullopt; }

  void actuate(const ActionCommand& command) override {
    received_.emplace_back(issued_at_, command.payload);
  }

  // The harness stamps the tick before routing, so transcripts carry it.
  void set_clock(Tick tick) { issued_at_ = tick; }

  const std::vector<std::pair<Tick, Datum>>& received() const { return received_; }

 private:
  DeviceId id_;
  Tick issued_at_ = 0;
  std::vector<std::pair<Tick, Datum>> received_;
};

// Per-device actuation transcript: (tick, payload) in issue order.
using Transcripts = std::map<DeviceId, std::vector<std::pair<Tick, Datum>>>;

struct RunResult {
  Engine engine;
  std::vector<Event> events;
  Transcripts transcripts;
};

// Executes a scenario start to finish: polls scripted devices each ingest
// tick (ascending device id), steps the engine, routes every action command
// to its device's transcript.
inline RunResult run(const ScenarioSpec& spec, EntryMatcher matcher = exact_datum_match) {
  std::vector<ScriptedDevice> devices;
  devices.reserve(spec.devices.size());
  for (const auto& d : spec.devices) devices.emplace_back(d.device, d.schedule);
  std::sort(devices.begin(), devices.end(),
            [](const ScriptedDevice& a, const ScriptedDevice& b) {
              return a.device_id() < b.device_id();
            });

  Engine engine(spec.config, std::move(matcher));
  std::vector<Event> log;
  std::map<DeviceId, RecordingActuator> actuators;

  const auto poll_all = [&devices](Tick tick) {
    std::vector<DeviceInput> inputs;
    for (auto& dev : devices)
      if (auto datum = dev.poll(tick))
        inputs.push_back({dev.device_id(), std::move(*datum)});
    return inputs;
  };

  for (Tick t = 0; t < spec.run_ticks; ++t) {
    TickReport report = engine.step(poll_all);
    log.insert(log.end(), report.events.begin(), report.events.end());
    for (const auto& cmd : report.commands) {
      auto& actuator =
          actuators.try_emplace(cmd.device, cmd.device).first->second;
      actuator.set_clock(report.tick);
      actuator.actuate(cmd);
    }
  }

  Transcripts transcripts;
  for (auto& [id, actuator] : actuators) transcripts[id] = actuator.received();
  return RunResult{std::move(engine), std::move(log), std::move(transcripts)};
}

}  // namespace mempix
