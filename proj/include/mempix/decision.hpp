#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "mempix/color_table.hpp"
#include "mempix/events.hpp"
#include "mempix/pools.hpp"
#include "mempix/screen.hpp"
#include "mempix/types.hpp"

namespace mempix {

// What the decision cascade emits toward a peripheral device.
struct ActionCommand {
  DeviceId device = 0;
  Datum payload{};
  SeqNo source = 0;  // screen whose pixel generated the command

  friend bool operator==(const ActionCommand&, const ActionCommand&) = default;
};

struct DecisionOutcome {
  DecisionKind kind = DecisionKind::NoAction;
  std::optional<ColorId> matched_color{};
  std::optional<SeqNo> target{};
  std::vector<ActionCommand> commands{};  // Action only
  std::size_t copied_count = 0;           // Associated only
  std::vector<ColorId> colors_tried{};
};

struct ColorCandidate {
  ColorId color = 0;
  Datum datum{};

  friend bool operator==(const ColorCandidate&, const ColorCandidate&) = default;
};

// The screen's distinct colors by descending pixel count (ties toward the
// smaller ColorId), each paired with the mode datum of that color's pixels.
// The first candidate is exactly the screen's own header.
inline std::vector<ColorCandidate> candidate_colors(const MemoryScreen& screen) {
  if (screen.pixels.empty())
    throw ContractViolation("candidate_colors: empty screen");
  std::map<ColorId, std::size_t> counts;
  for (const auto& px : screen.pixels) ++counts[px.color];

  std::vector<std::pair<ColorId, std::size_t>> order(counts.begin(), counts.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<ColorCandidate> out;
  out.reserve(order.size());
  for (const auto& [color, n] : order)
    out.push_back({color, mode_datum(screen.pixels, color)});
  return out;
}

// One command per pixel of the target screen, in the screen's pixel order.
// The pixel's device id routes the command; its datum is the payload.
inline std::vector<ActionCommand> perform_action(const ScreenPool& screens,
                                                 SeqNo target) {
  const MemoryScreen* s = screens.find(target);
  if (s == nullptr)
    throw InternalCorruptionError("perform_action: target screen " +
                                  std::to_string(target) + " missing");
  std::vector<ActionCommand> out;
  out.reserve(s->pixels.size());
  for (const auto& px : s->pixels)
    out.push_back({px.device, px.datum, target});
  return out;
}

struct CopyResult {
  std::size_t requested = 0;
  std::size_t copied = 0;
};

// Copies every pixel of `color` in screen `from` into screen `into`
// (appended, intensity kept as-is). Copies never trigger eviction: when the
// pixel pool runs dry the rest are skipped.
inline CopyResult copy_pixels(ScreenPool& screens, PixelPool& pool,
                              SeqNo from, ColorId color, SeqNo into) {
  const MemoryScreen* src = screens.find(from);
  if (src == nullptr)
    throw InternalCorruptionError("copy_pixels: source screen " +
                                  std::to_string(from) + " missing");
  // Snapshot first: the source may be the destination itself.
  std::vector<MemoryPixel> wanted;
  for (const auto& px : src->pixels)
    if (px.color == color) wanted.push_back(px);

  CopyResult result;
  result.requested = wanted.size();
  MemoryScreen* dst = screens.find(into);
  if (dst == nullptr)
    throw InternalCorruptionError("copy_pixels: destination screen " +
                                  std::to_string(into) + " missing");
  for (auto& px : wanted) {
    auto acquired = pool.acquire(1);
    if (acquired.shortfall > 0) break;
    MemoryPixel& blank = acquired.pixels.front();
    blank = px;
    dst->pixels.push_back(std::move(blank));
    ++result.copied;
  }
  return result;
}

// The decision cascade over a just-committed screen. Candidates are tried in
// order; for each color c with candidate datum d:
//   full match  (entry with color c and datum d)  -> perform that screen's
//     actions and stop;
//   color match (some entry has color c)          -> copy that screen's
//     c-colored pixels into the new screen (associative consolidation);
//   otherwise try the next candidate. No candidate left -> no action.
// Never mutates the table; its only mutations are pixel copies into `fresh`.
inline DecisionOutcome decide(ScreenPool& screens, PixelPool& pool,
                              const ColorTable& table, SeqNo fresh,
                              Tick tick, std::vector<Event>& events) {
  const MemoryScreen* screen = screens.find(fresh);
  if (screen == nullptr)
    throw InternalCorruptionError("decide: screen " + std::to_string(fresh) +
                                  " not committed");
  const auto candidates = candidate_colors(*screen);

  DecisionOutcome outcome;
  for (const auto& cand : candidates) {
    outcome.colors_tried.push_back(cand.color);

    const ColorTableEntry* by_datum = table.lookup_by_datum(cand.datum);
    if (by_datum != nullptr && by_datum->color == cand.color) {
      outcome.kind = DecisionKind::Action;
      outcome.matched_color = cand.color;
      outcome.target = by_datum->screen;
      outcome.commands = perform_action(screens, by_datum->screen);
      break;
    }

    const auto same_color = table.lookup_by_color(cand.color);
    if (!same_color.empty()) {
      const SeqNo target = same_color.front().screen;
      outcome.kind = DecisionKind::Associated;
      outcome.matched_color = cand.color;
      outcome.target = target;
      const CopyResult copy = copy_pixels(screens, pool, target, cand.color, fresh);
      outcome.copied_count = copy.copied;
      if (copy.copied < copy.requested)
        events.push_back({tick, CopySkippedEvent{fresh, target, cand.color,
                                                 copy.requested, copy.copied}});
      break;
    }
  }

  std::optional<Datum> label;
  if (outcome.kind == DecisionKind::Action)
    label = screens.find(*outcome.target)->datum;
  events.push_back({tick, DecisionEvent{fresh, outcome.kind, outcome.matched_color,
                                        outcome.target, outcome.commands.size(),
                                        outcome.copied_count, outcome.colors_tried,
                                        label}});
  for (const auto& cmd : outcome.commands)
    events.push_back({tick, ActionIssuedEvent{cmd.device, cmd.payload, cmd.source}});
  return outcome;
}

}  // namespace mempix
