#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mempix/types.hpp"

namespace mempix {

// A batch of pixels captured at one ingest tick, plus a derived header.
// The header (color, datum) is frozen at commit time; later pixel copies or
// removals do not recompute it. Root screens are immutable and decay-exempt.
//
// Pixel order: ingest inserts in ascending device id (inputs arrive sorted);
// associative copies append afterwards in source order. Stored order is the
// arrival order used by eviction tie-breaks.
struct MemoryScreen {
  SeqNo seq = 0;
  Tick tick = 0;
  ColorId color = 0;
  Datum datum{};
  bool is_root = false;
  std::vector<MemoryPixel> pixels{};

  friend bool operator==(const MemoryScreen&, const MemoryScreen&) = default;
};

// Color held by the greatest number of pixels; ties break toward the smaller
// ColorId, so the result is invariant under pixel permutation.
inline ColorId majority_color(std::span<const MemoryPixel> pixels) {
  if (pixels.empty())
    throw ContractViolation("majority_color: empty pixel list");
  std::map<ColorId, std::size_t> counts;
  for (const auto& px : pixels) ++counts[px.color];
  ColorId best = counts.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [color, n] : counts) {
    if (n > best_count) {
      best = color;
      best_count = n;
    }
  }
  return best;
}

// Most frequent datum, optionally restricted to pixels of one color; ties
// break toward the lexicographically smallest byte sequence.
inline Datum mode_datum(std::span<const MemoryPixel> pixels,
                        std::optional<ColorId> restrict_color = std::nullopt) {
  if (pixels.empty()) throw ContractViolation("mode_datum: empty pixel list");
  std::map<Datum, std::size_t> counts;
  for (const auto& px : pixels) {
    if (restrict_color && px.color != *restrict_color) continue;
    ++counts[px.datum];
  }
  if (counts.empty())
    throw ContractViolation("mode_datum: restrict color matches no pixel");
  const Datum* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [datum, n] : counts) {
    if (n > best_count) {
      best = &datum;
      best_count = n;
    }
  }
  return *best;
}

}  // namespace mempix
