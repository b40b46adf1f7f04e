#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mempix/color_table.hpp"
#include "mempix/events.hpp"
#include "mempix/screen.hpp"
#include "mempix/types.hpp"

namespace mempix {

// Fixed-capacity budget of dynamic pixels. Pixels handed out are always
// blank; releasing blanks them again, so no payload ever leaks across reuse.
// Root-screen pixels live outside this budget (they are permanent).
class PixelPool {
 public:
  explicit PixelPool(std::uint32_t capacity)
      : capacity_(capacity), free_(capacity) {}

  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t free_count() const { return free_; }

  struct AcquireResult {
    std::vector<MemoryPixel> pixels;  // empty when short
    std::uint32_t shortfall = 0;      // k - free_count when short, else 0
  };

  // All-or-nothing: hands out k blank pixels, or reports the shortfall so
  // the caller can evict. A shortfall is a normal outcome, not an error.
  AcquireResult acquire(std::uint32_t k) {
    if (k == 0) throw ContractViolation("acquire: k must be >= 1");
    AcquireResult r;
    if (k > free_) {
      r.shortfall = k - free_;
      return r;
    }
    free_ -= k;
    r.pixels.resize(k);  // value-initialized == blank
    return r;
  }

  void release(MemoryPixel&& px) {
    if (free_ >= capacity_)
      throw InternalCorruptionError("pixel pool over-release");
    px = MemoryPixel{};
    ++free_;
  }

  void release(std::vector<MemoryPixel>&& pixels) {
    for (auto& px : pixels) release(std::move(px));
    pixels.clear();
  }

  friend bool operator==(const PixelPool&, const PixelPool&) = default;

 private:
  std::uint32_t capacity_;
  std::uint32_t free_;
};

// The set of live memory screens, keyed by sequence number. Root screens are
// present from initialization and never leave.
class ScreenPool {
 public:
  bool contains(SeqNo seq) const { return screens_.count(seq) != 0; }

  const MemoryScreen* find(SeqNo seq) const {
    auto it = screens_.find(seq);
    return it == screens_.end() ? nullptr : &it->second;
  }

  MemoryScreen* find(SeqNo seq) {
    auto it = screens_.find(seq);
    return it == screens_.end() ? nullptr : &it->second;
  }

  // Accepts a fully-formed screen (header populated, pixels non-empty).
  void commit(MemoryScreen screen) {
    if (screen.pixels.empty())
      throw ContractViolation("commit: screen has no pixels");
    if (contains(screen.seq))
      throw InternalCorruptionError("commit: duplicate screen seq " +
                                    std::to_string(screen.seq));
    screens_.emplace(screen.seq, std::move(screen));
  }

  // Removes and returns a screen; absence here is always a logic bug.
  MemoryScreen extract(SeqNo seq) {
    auto it = screens_.find(seq);
    if (it == screens_.end())
      throw InternalCorruptionError("extract: screen " + std::to_string(seq) +
                                    " not in pool");
    MemoryScreen s = std::move(it->second);
    screens_.erase(it);
    return s;
  }

  const std::map<SeqNo, MemoryScreen>& screens() const { return screens_; }

  // Mutable view for the engine's sweep and eviction passes. Pixel edits
  // through this view must keep the pool's conservation budget intact.
  std::map<SeqNo, MemoryScreen>& screens_mut() { return screens_; }

  std::size_t size() const { return screens_.size(); }

  std::size_t non_root_pixel_count() const {
    std::size_t n = 0;
    for (const auto& [seq, s] : screens_)
      if (!s.is_root) n += s.pixels.size();
    return n;
  }

  friend bool operator==(const ScreenPool&, const ScreenPool&) = default;

 private:
  std::map<SeqNo, MemoryScreen> screens_;
};

enum class RemoveStatus { Removed, NotFound };

struct RemovalRecord {
  RemoveStatus status = RemoveStatus::NotFound;
  std::size_t pixels_released = 0;
  std::size_t entries_removed = 0;
};

// Takes a screen out of the pool: remaining pixels go back to the pixel
// pool, and every color-table entry referring to the screen is purged.
// Emits ScreenRemoved followed by EntryRemoved records. Removing a root is
// forbidden; removing an absent seq is a no-op (reported in the record).
inline RemovalRecord remove_screen(ScreenPool& screens, PixelPool& pixels,
                                   ColorTable& table, SeqNo seq,
                                   RemovalReason reason, Tick tick,
                                   std::vector<Event>& events) {
  RemovalRecord rec;
  const MemoryScreen* found = screens.find(seq);
  if (found == nullptr) return rec;
  if (found->is_root)
    throw RootImmutableError("remove_screen: screen " + std::to_string(seq) +
                             " is a root screen");
  MemoryScreen victim = screens.extract(seq);
  rec.status = RemoveStatus::Removed;
  rec.pixels_released = victim.pixels.size();
  pixels.release(std::move(victim.pixels));
  events.push_back({tick, ScreenRemovedEvent{seq, reason}});
  rec.entries_removed = table.remove_screen(seq, [&](const ColorTableEntry& e) {
    events.push_back({tick, EntryRemovedEvent{e.color, e.screen, e.datum}});
  });
  return rec;
}

// Frees pixels until at least k are available, by repeatedly dropping the
// globally lowest-intensity pixel among non-root screens. Ties go to the
// lower screen seq, then the stored pixel order (ascending device id, then
// arrival). Screens emptied on the way are removed, table entries included.
// Root pixels are never touched; if everything evictable is gone and the
// pool is still short, the caller drops inputs instead.
inline std::vector<std::pair<SeqNo, MemoryPixel>> evict_for(
    ScreenPool& screens, PixelPool& pixels, ColorTable& table, std::uint32_t k,
    Tick tick, std::vector<Event>& events) {
  std::vector<std::pair<SeqNo, MemoryPixel>> evicted;
  while (pixels.free_count() < k) {
    MemoryScreen* best_screen = nullptr;
    std::size_t best_index = 0;
    for (auto& [seq, s] : screens.screens_mut()) {
      if (s.is_root) continue;
      for (std::size_t i = 0; i < s.pixels.size(); ++i) {
        if (best_screen == nullptr ||
            s.pixels[i].intensity < best_screen->pixels[best_index].intensity) {
          best_screen = &s;
          best_index = i;
        }
      }
    }
    if (best_screen == nullptr) break;  // only roots (or nothing) left

    MemoryPixel px = std::move(best_screen->pixels[best_index]);
    best_screen->pixels.erase(best_screen->pixels.begin() +
                              static_cast<std::ptrdiff_t>(best_index));
    const SeqNo victim_seq = best_screen->seq;
    events.push_back({tick, EvictedEvent{victim_seq, px.device, px.datum, px.intensity}});
    evicted.emplace_back(victim_seq, px);
    pixels.release(std::move(px));
    if (best_screen->pixels.empty())
      remove_screen(screens, pixels, table, victim_seq, RemovalReason::Eviction,
                    tick, events);
  }
  return evicted;
}

}  // namespace mempix
