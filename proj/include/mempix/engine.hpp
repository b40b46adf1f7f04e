#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mempix/color_table.hpp"
#include "mempix/config.hpp"
#include "mempix/decision.hpp"
#include "mempix/events.hpp"
#include "mempix/pools.hpp"
#include "mempix/screen.hpp"
#include "mempix/types.hpp"

namespace mempix {

struct ColorizeResult {
  ColorId color = 0;
  Intensity intensity{};
  bool novel = false;
};

// The colorization rule applied to every datum entering memory. A matched
// datum takes the entry's color at the known-data intensity; a novel datum
// takes a fresh color at maximum intensity and is recorded in the table
// against the screen being formed. The table mutates immediately, so a
// second identical datum in the same tick matches.
inline ColorizeResult colorize(ColorTable& table, ColorId& next_color,
                               SeqNo in_progress, const Datum& datum,
                               const EngineConfig& cfg,
                               const EntryMatcher& matcher) {
  if (const ColorTableEntry* hit = matcher(table, datum); hit != nullptr)
    return {hit->color, cfg.known_intensity, false};
  const ColorId fresh = next_color++;
  table.insert({fresh, in_progress, datum});
  return {fresh, cfg.max_intensity, true};
}

// Everything one tick produced, in emission order.
struct TickReport {
  Tick tick = 0;
  std::vector<Event> events{};
  std::optional<SeqNo> committed{};
  std::optional<DecisionOutcome> decision{};
  std::vector<ActionCommand> commands{};
};

// Serialized engine state, as read back from a snapshot.
struct EngineParts {
  Tick tick = 0;
  SeqNo next_seq = 0;
  ColorId next_color = 0;
  std::uint32_t pool_free = 0;
  std::vector<ColorTableEntry> entries{};
  std::vector<MemoryScreen> screens{};
};

// The memory engine: a virtual-tick loop over three phases. Each tick, in
// order: (1) on decay ticks, sweep intensities down and garbage-collect;
// (2) on ingest ticks, poll devices, form and commit a screen, and run the
// decision cascade on it; (3) advance the clock. Single-threaded; all
// mutation happens inside step().
class Engine {
 public:
  using PollFn = std::function<std::vector<DeviceInput>(Tick)>;

  explicit Engine(EngineConfig cfg, EntryMatcher matcher = exact_datum_match)
      : cfg_(std::move(cfg)),
        matcher_(std::move(matcher)),
        pool_(validated(cfg_).capacity) {
    install_roots();
    next_seq_ = cfg_.roots.size();
  }

  // Rebuilds an engine mid-run from snapshot parts. The parts must satisfy
  // the same invariants a live run maintains; violations throw
  // InternalCorruptionError.
  Engine(EngineConfig cfg, EngineParts parts, EntryMatcher matcher = exact_datum_match)
      : cfg_(std::move(cfg)),
        matcher_(std::move(matcher)),
        pool_(validated(cfg_).capacity) {
    tick_ = parts.tick;
    next_seq_ = parts.next_seq;
    next_color_ = parts.next_color;
    for (auto& s : parts.screens) screens_.commit(std::move(s));
    for (auto& e : parts.entries) table_.insert(std::move(e));
    // Drain the fresh pool down to the recorded free count, then check that
    // the books balance.
    const std::size_t in_use = screens_.non_root_pixel_count();
    if (in_use > cfg_.capacity || cfg_.capacity - in_use != parts.pool_free)
      throw InternalCorruptionError("restored state breaks pixel conservation");
    if (in_use > 0) pool_.acquire(static_cast<std::uint32_t>(in_use));
    for (const auto& e : table_.entries())
      if (!screens_.contains(e.screen))
        throw InternalCorruptionError("restored entry references missing screen");
  }

  const EngineConfig& config() const { return cfg_; }
  Tick current_tick() const { return tick_; }
  SeqNo next_seq() const { return next_seq_; }
  ColorId next_color() const { return next_color_; }
  const PixelPool& pixel_pool() const { return pool_; }
  const ScreenPool& screen_pool() const { return screens_; }
  const ColorTable& color_table() const { return table_; }

  bool state_equals(const Engine& other) const {
    return tick_ == other.tick_ && next_seq_ == other.next_seq_ &&
           next_color_ == other.next_color_ && pool_ == other.pool_ &&
           screens_ == other.screens_ && table_ == other.table_;
  }

  // Runs one tick. `poll` is consulted only on ingest ticks and must return
  // inputs sorted by strictly ascending device id (one reading per device).
  TickReport step(const PollFn& poll) {
    TickReport report;
    report.tick = tick_;
    if (tick_ > 0 && tick_ % cfg_.decay_period == 0) decay_sweep(report.events);
    if (tick_ % cfg_.ingest_period == 0) {
      std::vector<DeviceInput> inputs = poll ? poll(tick_) : std::vector<DeviceInput>{};
      validate_inputs(inputs);
      report.committed = ingest(std::move(inputs), report.events);
      if (report.committed) {
        report.decision = decide(screens_, pool_, table_, *report.committed,
                                 tick_, report.events);
        report.commands = report.decision->commands;
      }
    }
    ++tick_;
    return report;
  }

  // Convenience for scripted loops and tests: the inputs are used on ingest
  // ticks and must be empty otherwise.
  TickReport step_with(std::vector<DeviceInput> inputs) {
    if (tick_ % cfg_.ingest_period != 0 && !inputs.empty())
      throw ContractViolation("step_with: inputs supplied on a non-ingest tick");
    return step([inputs = std::move(inputs)](Tick) mutable { return std::move(inputs); });
  }

 private:
  static const EngineConfig& validated(const EngineConfig& cfg) {
    cfg.validate();
    return cfg;
  }

  void install_roots() {
    for (SeqNo seq = 0; seq < cfg_.roots.size(); ++seq) {
      const RootScreenDef& def = cfg_.roots[seq];
      MemoryScreen screen;
      screen.seq = seq;
      screen.tick = 0;
      screen.is_root = true;
      screen.pixels.reserve(def.pixels.size());
      for (const auto& pdef : def.pixels)
        screen.pixels.push_back({0, Intensity{}, pdef.device, pdef.datum});
      std::stable_sort(screen.pixels.begin(), screen.pixels.end(),
                       [](const MemoryPixel& a, const MemoryPixel& b) {
                         return a.device < b.device;
                       });
      for (auto& px : screen.pixels) {
        const auto res = colorize(table_, next_color_, seq, px.datum, cfg_, matcher_);
        px.color = res.color;
        px.intensity = res.intensity;
      }
      // The screen-level datum is announced in the table too: that is what
      // lets a later stimulus match straight onto a built-in response.
      const Datum screen_datum =
          def.datum ? *def.datum
                    : mode_datum(screen.pixels, majority_color(screen.pixels));
      const auto header = colorize(table_, next_color_, seq, screen_datum, cfg_, matcher_);
      screen.color = header.color;
      screen.datum = screen_datum;
      screens_.commit(std::move(screen));
    }
  }

  static void validate_inputs(const std::vector<DeviceInput>& inputs) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (!datum_valid(inputs[i].datum))
        throw ContractViolation("device input datum must be 1..4096 bytes");
      if (i > 0 && inputs[i - 1].device >= inputs[i].device)
        throw ContractViolation(
            "device inputs must be sorted by strictly ascending device id");
    }
  }

  // Memory formation: acquire pixels (evicting the least important data if
  // the pool is short, dropping trailing inputs if it still is), colorize in
  // device order, derive the header, and commit under the next seq.
  std::optional<SeqNo> ingest(std::vector<DeviceInput> inputs,
                              std::vector<Event>& events) {
    if (inputs.empty()) return std::nullopt;
    const auto wanted = static_cast<std::uint32_t>(inputs.size());
    if (pool_.free_count() < wanted)
      evict_for(screens_, pool_, table_, wanted, tick_, events);
    const std::uint32_t usable = std::min(wanted, pool_.free_count());
    for (std::uint32_t i = usable; i < wanted; ++i)
      events.push_back({tick_, DroppedInputEvent{inputs[i].device, inputs[i].datum}});
    if (usable == 0) return std::nullopt;

    auto acquired = pool_.acquire(usable);
    MemoryScreen screen;
    screen.seq = next_seq_;
    screen.tick = tick_;
    screen.is_root = false;
    screen.pixels = std::move(acquired.pixels);
    for (std::uint32_t i = 0; i < usable; ++i) {
      MemoryPixel& px = screen.pixels[i];
      px.device = inputs[i].device;
      px.datum = std::move(inputs[i].datum);
      const auto res = colorize(table_, next_color_, screen.seq, px.datum, cfg_, matcher_);
      px.color = res.color;
      px.intensity = res.intensity;
      events.push_back({tick_, PixelColorizedEvent{screen.seq, px.device, px.datum,
                                                   px.color, px.intensity, res.novel}});
      if (res.novel)
        events.push_back({tick_, EntryAddedEvent{px.color, screen.seq, px.datum}});
    }
    screen.color = majority_color(screen.pixels);
    screen.datum = mode_datum(screen.pixels, screen.color);
    const SeqNo seq = screen.seq;
    events.push_back({tick_, ScreenCommittedEvent{seq, screen.color, screen.datum,
                                                  screen.pixels.size()}});
    screens_.commit(std::move(screen));
    ++next_seq_;
    return seq;
  }

  // The forgetting pass: every non-root pixel loses one unit; pixels of
  // screens referenced by the table earn +r back. Whatever reaches the
  // removal threshold goes back to the pixel pool, and screens left empty
  // vanish together with their table entries.
  void decay_sweep(std::vector<Event>& events) {
    const std::set<SeqNo> referenced = table_.referenced_screens();

    std::size_t decayed = 0;
    std::size_t reinforced = 0;
    std::vector<SeqNo> order;
    for (const auto& [seq, s] : screens_.screens()) {
      if (s.is_root) continue;
      order.push_back(seq);
      decayed += s.pixels.size();
      if (referenced.count(seq)) reinforced += s.pixels.size();
    }
    events.push_back({tick_, DecaySweepEvent{decayed, reinforced}});

    for (const SeqNo seq : order) {
      MemoryScreen* s = screens_.find(seq);
      const bool credit = referenced.count(seq) != 0;
      std::vector<MemoryPixel> survivors;
      survivors.reserve(s->pixels.size());
      for (auto& px : s->pixels) {
        px.intensity.millis -= kIntensityUnit;
        if (credit) px.intensity.millis += cfg_.reinforcement.millis;
        if (px.intensity.millis <= kRemovalMillis) {
          events.push_back({tick_, PixelRemovedEvent{seq, px.device, px.datum,
                                                     px.intensity}});
          pool_.release(std::move(px));
        } else {
          survivors.push_back(std::move(px));
        }
      }
      s->pixels = std::move(survivors);
      if (s->pixels.empty())
        remove_screen(screens_, pool_, table_, seq, RemovalReason::Decay, tick_,
                      events);
    }
  }

  EngineConfig cfg_;
  EntryMatcher matcher_;
  PixelPool pool_;
  ScreenPool screens_;
  ColorTable table_;
  Tick tick_ = 0;
  SeqNo next_seq_ = 0;
  ColorId next_color_ = 0;
};

}  // namespace mempix
