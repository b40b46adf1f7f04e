#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include "mempix/types.hpp"

namespace mempix {

// One associative index record: the screen where a datum first occurred,
// under the color assigned at that moment.
struct ColorTableEntry {
  ColorId color = 0;
  SeqNo screen = 0;
  Datum datum{};

  friend bool operator==(const ColorTableEntry&, const ColorTableEntry&) = default;
};

// Insertion-ordered entry list keyed by datum: at most one entry per distinct
// datum. Every entry's screen must exist in the screen pool (the engine keeps
// that referentially tight by purging entries when a screen is removed).
class ColorTable {
 public:
  const ColorTableEntry* lookup_by_datum(const Datum& d) const {
    for (const auto& e : entries_)
      if (e.datum == d) return &e;
    return nullptr;
  }

  // All entries of one color, in insertion order. Length <= 1 under the
  // default exact matcher; alternative matchers can yield more.
  std::vector<ColorTableEntry> lookup_by_color(ColorId c) const {
    std::vector<ColorTableEntry> out;
    for (const auto& e : entries_)
      if (e.color == c) out.push_back(e);
    return out;
  }

  void insert(ColorTableEntry e) {
    if (lookup_by_datum(e.datum) != nullptr)
      throw DuplicateDatumError("color table already has datum " +
                                datum_display(e.datum));
    entries_.push_back(std::move(e));
  }

  // Purges every entry referring to `seq`; returns how many were removed.
  std::size_t remove_screen(SeqNo seq) {
    std::size_t removed = 0;
    std::vector<ColorTableEntry> kept;
    kept.reserve(entries_.size());
    for (auto& e : entries_) {
      if (e.screen == seq)
        ++removed;
      else
        kept.push_back(std::move(e));
    }
    entries_ = std::move(kept);
    return removed;
  }

  // Like remove_screen, but hands each purged entry to `on_removed` in
  // insertion order before dropping it.
  std::size_t remove_screen(SeqNo seq,
                            const std::function<void(const ColorTableEntry&)>& on_removed) {
    std::size_t removed = 0;
    std::vector<ColorTableEntry> kept;
    kept.reserve(entries_.size());
    for (auto& e : entries_) {
      if (e.screen == seq) {
        ++removed;
        on_removed(e);
      } else {
        kept.push_back(std::move(e));
      }
    }
    entries_ = std::move(kept);
    return removed;
  }

  // Distinct screen numbers referenced by any entry; the decay sweep
  // snapshots this as its reinforcement set.
  std::set<SeqNo> referenced_screens() const {
    std::set<SeqNo> out;
    for (const auto& e : entries_) out.insert(e.screen);
    return out;
  }

  const std::vector<ColorTableEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const ColorTable&, const ColorTable&) = default;

 private:
  std::vector<ColorTableEntry> entries_;
};

// How a datum is matched against the table during colorization. The default
// is exact byte equality; experiments can plug in similarity matchers. A
// matcher must be deterministic and must return either nullptr or a pointer
// to an entry of the given table.
using EntryMatcher = std::function<const ColorTableEntry*(const ColorTable&, const Datum&)>;

inline const ColorTableEntry* exact_datum_match(const ColorTable& table, const Datum& d) {
  return table.lookup_by_datum(d);
}

}  // namespace mempix
