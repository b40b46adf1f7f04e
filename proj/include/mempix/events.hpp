#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mempix/types.hpp"

namespace mempix {

// Why a screen left the pool.
enum class RemovalReason { Decay, Eviction };

enum class DecisionKind { Action, Associated, NoAction };

inline const char* to_string(RemovalReason r) {
  return r == RemovalReason::Decay ? "decay" : "eviction";
}

inline const char* to_string(DecisionKind k) {
  switch (k) {
    case DecisionKind::Action: return "action";
    case DecisionKind::Associated: return "associated";
    default: return "no_action";
  }
}

// ---------------------------------------------------------------------------
// Event payloads. One struct per event kind; field order below is the
// normative field order of the log line.
// ---------------------------------------------------------------------------

struct ScreenCommittedEvent {
  SeqNo seq;
  ColorId color;
  Datum datum;
  std::size_t pixel_count;
};

struct PixelColorizedEvent {
  SeqNo seq;  // the in-progress screen
  DeviceId device;
  Datum datum;
  ColorId color;
  Intensity intensity;
  bool novel;
};

struct EntryAddedEvent {
  ColorId color;
  SeqNo screen;
  Datum datum;
};

struct DecaySweepEvent {
  std::size_t decayed;     // non-root pixels decremented this sweep
  std::size_t reinforced;  // subset that also received +r
};

struct PixelRemovedEvent {
  SeqNo seq;
  DeviceId device;
  Datum datum;
  Intensity intensity;  // value that crossed the removal threshold
};

struct ScreenRemovedEvent {
  SeqNo seq;
  RemovalReason reason;
};

struct EntryRemovedEvent {
  ColorId color;
  SeqNo screen;
  Datum datum;
};

struct EvictedEvent {
  SeqNo seq;
  DeviceId device;
  Datum datum;
  Intensity intensity;
};

struct DroppedInputEvent {
  DeviceId device;
  Datum datum;
};

struct DecisionEvent {
  SeqNo seq;  // the screen decided on
  DecisionKind kind;
  std::optional<ColorId> color;   // matched color, if any
  std::optional<SeqNo> target;    // matched screen, if any
  std::size_t commands;           // action commands issued
  std::size_t copied;             // pixels copied on association
  std::vector<ColorId> tried;     // candidate colors in cascade order
  std::optional<Datum> label;     // target screen's header datum (actions)
};

struct ActionIssuedEvent {
  DeviceId device;
  Datum payload;
  SeqNo source;
};

struct CopySkippedEvent {
  SeqNo seq;     // destination screen
  SeqNo source;  // screen copied from
  ColorId color;
  std::size_t requested;
  std::size_t copied;
};

using EventData =
    std::variant<ScreenCommittedEvent, PixelColorizedEvent, EntryAddedEvent,
                 DecaySweepEvent, PixelRemovedEvent, ScreenRemovedEvent,
                 EntryRemovedEvent, EvictedEvent, DroppedInputEvent,
                 DecisionEvent, ActionIssuedEvent, CopySkippedEvent>;

struct Event {
  Tick tick;
  EventData data;
};

inline const char* event_kind_name(const EventData& data) {
  struct Visitor {
    const char* operator()(const ScreenCommittedEvent&) { return "ScreenCommitted"; }
    const char* operator()(const PixelColorizedEvent&) { return "PixelColorized"; }
    const char* operator()(const EntryAddedEvent&) { return "EntryAdded"; }
    const char* operator()(const DecaySweepEvent&) { return "DecaySweep"; }
    const char* operator()(const PixelRemovedEvent&) { return "PixelRemoved"; }
    const char* operator()(const ScreenRemovedEvent&) { return "ScreenRemoved"; }
    const char* operator()(const EntryRemovedEvent&) { return "EntryRemoved"; }
    const char* operator()(const EvictedEvent&) { return "Evicted"; }
    const char* operator()(const DroppedInputEvent&) { return "DroppedInput"; }
    const char* operator()(const DecisionEvent&) { return "Decision"; }
    const char* operator()(const ActionIssuedEvent&) { return "ActionIssued"; }
    const char* operator()(const CopySkippedEvent&) { return "CopySkipped"; }
  };
  return std::visit(Visitor{}, data);
}

// Canonical single-line rendering. Equal runs must produce byte-identical
// logs, so the format is fixed: space-separated fields in declaration order,
// data as lowercase hex, intensities as integer milli-units.
inline std::string format_event(const Event& ev) {
  std::string out = std::to_string(ev.tick);
  out.push_back(' ');
  out += event_kind_name(ev.data);

  auto field = [&out](const char* key, const std::string& value) {
    out.push_back(' ');
    out += key;
    out.push_back('=');
    out += value;
  };
  auto num = [&field](const char* key, auto v) { field(key, std::to_string(v)); };

  struct Visitor {
    decltype(field)& f;
    decltype(num)& n;

    void operator()(const ScreenCommittedEvent& e) {
      n("seq", e.seq);
      n("color", e.color);
      f("datum", datum_hex(e.datum));
      n("pixels", e.pixel_count);
    }
    void operator()(const PixelColorizedEvent& e) {
      n("seq", e.seq);
      n("device", e.device);
      f("datum", datum_hex(e.datum));
      n("color", e.color);
      n("intensity", e.intensity.millis);
      n("novel", e.novel ? 1 : 0);
    }
    void operator()(const EntryAddedEvent& e) {
      n("color", e.color);
      n("screen", e.screen);
      f("datum", datum_hex(e.datum));
    }
    void operator()(const DecaySweepEvent& e) {
      n("decayed", e.decayed);
      n("reinforced", e.reinforced);
    }
    void operator()(const PixelRemovedEvent& e) {
      n("seq", e.seq);
      n("device", e.device);
      f("datum", datum_hex(e.datum));
      n("intensity", e.intensity.millis);
    }
    void operator()(const ScreenRemovedEvent& e) {
      n("seq", e.seq);
      f("reason", to_string(e.reason));
    }
    void operator()(const EntryRemovedEvent& e) {
      n("color", e.color);
      n("screen", e.screen);
      f("datum", datum_hex(e.datum));
    }
    void operator()(const EvictedEvent& e) {
      n("seq", e.seq);
      n("device", e.device);
      f("datum", datum_hex(e.datum));
      n("intensity", e.intensity.millis);
    }
    void operator()(const DroppedInputEvent& e) {
      n("device", e.device);
      f("datum", datum_hex(e.datum));
    }
    void operator()(const DecisionEvent& e) {
      n("seq", e.seq);
      f("kind", to_string(e.kind));
      f("color", e.color ? std::to_string(*e.color) : "-");
      f("target", e.target ? std::to_string(*e.target) : "-");
      n("commands", e.commands);
      n("copied", e.copied);
      std::string tried;
      for (std::size_t i = 0; i < e.tried.size(); ++i) {
        if (i) tried.push_back(',');
        tried += std::to_string(e.tried[i]);
      }
      f("tried", tried.empty() ? "-" : tried);
      f("label", e.label ? datum_hex(*e.label) : "-");
    }
    void operator()(const ActionIssuedEvent& e) {
      n("device", e.device);
      f("payload", datum_hex(e.payload));
      n("source", e.source);
    }
    void operator()(const CopySkippedEvent& e) {
      n("seq", e.seq);
      n("source", e.source);
      n("color", e.color);
      n("requested", e.requested);
      n("copied", e.copied);
    }
  };
  std::visit(Visitor{field, num}, ev.data);
  return out;
}

// Whole log as text, one line per event, each line newline-terminated.
inline std::string format_event_log(const std::vector<Event>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += format_event(ev);
    out.push_back('\n');
  }
  return out;
}

}  // namespace mempix
