#pragma once

#include <charconv>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mempix/engine.hpp"
#include "mempix/types.hpp"

namespace mempix {

inline constexpr std::string_view kSnapshotHeader = "MEMPIX-SNAPSHOT v1";

// Canonical state serialization. Fixed line order, fixed field order per
// line, intensities as integer milli-units, data as lowercase hex: equal
// states always produce byte-identical blobs.
//
//   MEMPIX-SNAPSHOT v1
//   config capacity=<n> i_max=<millis> i_known=<millis> r=<millis> w=<n> p=<n>
//   state tick=<n> next_seq=<n> next_color=<n>
//   pool capacity=<n> free=<n>
//   table count=<n>
//   entry <index> color=<n> screen=<n> datum=<hex>        (count times)
//   screens count=<n>
//   screen seq=<n> tick=<n> root=<0|1> color=<n> datum=<hex> pixels=<n>
//   pixel device=<n> color=<n> intensity=<millis> datum=<hex>
//   end
//
// Entries appear in table insertion order; screens ascend by seq; pixels
// keep screen order. Root definitions are not serialized separately: root
// screens carry root=1.
inline std::string write_snapshot(const Engine& engine) {
  std::string out{kSnapshotHeader};
  out.push_back('\n');
  const EngineConfig& cfg = engine.config();
  out += "config capacity=" + std::to_string(cfg.capacity) +
         " i_max=" + std::to_string(cfg.max_intensity.millis) +
         " i_known=" + std::to_string(cfg.known_intensity.millis) +
         " r=" + std::to_string(cfg.reinforcement.millis) +
         " w=" + std::to_string(cfg.decay_period) +
         " p=" + std::to_string(cfg.ingest_period) + "\n";
  out += "state tick=" + std::to_string(engine.current_tick()) +
         " next_seq=" + std::to_string(engine.next_seq()) +
         " next_color=" + std::to_string(engine.next_color()) + "\n";
  out += "pool capacity=" + std::to_string(engine.pixel_pool().capacity()) +
         " free=" + std::to_string(engine.pixel_pool().free_count()) + "\n";

  const auto& entries = engine.color_table().entries();
  out += "table count=" + std::to_string(entries.size()) + "\n";
  for (std::size_t i = 0; i < entries.size(); ++i)
    out += "entry " + std::to_string(i) + " color=" + std::to_string(entries[i].color) +
           " screen=" + std::to_string(entries[i].screen) +
           " datum=" + datum_hex(entries[i].datum) + "\n";

  const auto& screens = engine.screen_pool().screens();
  out += "screens count=" + std::to_string(screens.size()) + "\n";
  for (const auto& [seq, s] : screens) {
    out += "screen seq=" + std::to_string(s.seq) + " tick=" + std::to_string(s.tick) +
           " root=" + (s.is_root ? std::string("1") : std::string("0")) +
           " color=" + std::to_string(s.color) + " datum=" + datum_hex(s.datum) +
           " pixels=" + std::to_string(s.pixels.size()) + "\n";
    for (const auto& px : s.pixels)
      out += "pixel device=" + std::to_string(px.device) +
             " color=" + std::to_string(px.color) +
             " intensity=" + std::to_string(px.intensity.millis) +
             " datum=" + datum_hex(px.datum) + "\n";
  }
  out += "end\n";
  return out;
}

namespace snapshot_detail {

struct Line {
  std::string_view text;
  std::size_t offset = 0;  // byte offset of the line start
};

class LineReader {
 public:
  explicit LineReader(std::string_view blob) : blob_(blob) {}

  // Next line, or throws if the blob ended.
  Line next(const char* what) {
    if (pos_ >= blob_.size())
      throw SnapshotFormatError(std::string("unexpected end of snapshot, expected ") + what,
                                blob_.size());
    const std::size_t start = pos_;
    const std::size_t nl = blob_.find('\n', pos_);
    if (nl == std::string_view::npos)
      throw SnapshotFormatError("missing trailing newline", blob_.size());
    pos_ = nl + 1;
    return {blob_.substr(start, nl - start), start};
  }

  bool at_end() const { return pos_ >= blob_.size(); }
  std::size_t position() const { return pos_; }

 private:
  std::string_view blob_;
  std::size_t pos_ = 0;
};

// Splits "key=value" tokens off a line whose leading word(s) were consumed.
class FieldCursor {
 public:
  FieldCursor(Line line, std::size_t consumed) : line_(line), pos_(consumed) {}

  std::string_view expect(std::string_view key) {
    if (pos_ >= line_.text.size() || line_.text[pos_] != ' ')
      fail(std::string("expected field '") + std::string(key) + "'");
    ++pos_;
    const std::size_t eq = line_.text.find('=', pos_);
    if (eq == std::string_view::npos ||
        line_.text.substr(pos_, eq - pos_) != key)
      fail(std::string("expected field '") + std::string(key) + "'");
    const std::size_t value_start = eq + 1;
    std::size_t end = line_.text.find(' ', value_start);
    if (end == std::string_view::npos) end = line_.text.size();
    std::string_view value = line_.text.substr(value_start, end - value_start);
    pos_ = end;
    return value;
  }

  // A bare space-separated token (no key= prefix).
  template <typename T>
  T bare_number(const char* what) {
    if (pos_ >= line_.text.size() || line_.text[pos_] != ' ')
      fail(std::string("expected ") + what);
    ++pos_;
    std::size_t end = line_.text.find(' ', pos_);
    if (end == std::string_view::npos) end = line_.text.size();
    const std::string_view raw = line_.text.substr(pos_, end - pos_);
    T value{};
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size())
      fail(std::string(what) + " is not a valid number");
    pos_ = end;
    return value;
  }

  template <typename T>
  T expect_number(std::string_view key) {
    const std::string_view raw = expect(key);
    T value{};
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size())
      fail("field '" + std::string(key) + "' is not a valid number");
    return value;
  }

  Datum expect_datum(std::string_view key) {
    const std::string_view raw = expect(key);
    try {
      Datum d = datum_from_hex(std::string(raw));
      if (!datum_valid(d))
        throw std::invalid_argument("datum must be 1..4096 bytes");
      return d;
    } catch (const std::invalid_argument& e) {
      fail("field '" + std::string(key) + "': " + e.what());
    }
  }

  void done() {
    if (pos_ != line_.text.size()) fail("trailing characters on line");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SnapshotFormatError(msg, line_.offset + pos_);
  }

 private:
  Line line_;
  std::size_t pos_;
};

// Verifies the fixed leading word of a line and returns a cursor past it.
inline FieldCursor expect_head(const Line& line, std::string_view head) {
  if (line.text.substr(0, head.size()) != head ||
      (line.text.size() > head.size() && line.text[head.size()] != ' '))
    throw SnapshotFormatError("expected '" + std::string(head) + "' line",
                              line.offset);
  return FieldCursor(line, head.size());
}

}  // namespace snapshot_detail

// Parses a snapshot blob back into a live engine. Structural problems and
// invariant violations throw SnapshotFormatError carrying the byte offset.
inline Engine restore_snapshot(std::string_view blob,
                               EntryMatcher matcher = exact_datum_match) {
  using namespace snapshot_detail;
  LineReader reader(blob);

  const Line header = reader.next("header");
  if (header.text != kSnapshotHeader)
    throw SnapshotFormatError("bad header, expected '" +
                                  std::string(kSnapshotHeader) + "'",
                              header.offset);

  EngineConfig cfg;
  {
    auto cur = expect_head(reader.next("config"), "config");
    cfg.capacity = cur.expect_number<std::uint32_t>("capacity");
    cfg.max_intensity.millis = cur.expect_number<std::int64_t>("i_max");
    cfg.known_intensity.millis = cur.expect_number<std::int64_t>("i_known");
    cfg.reinforcement.millis = cur.expect_number<std::int64_t>("r");
    cfg.decay_period = cur.expect_number<std::uint32_t>("w");
    cfg.ingest_period = cur.expect_number<std::uint32_t>("p");
    cur.done();
  }

  EngineParts parts;
  {
    auto cur = expect_head(reader.next("state"), "state");
    parts.tick = cur.expect_number<Tick>("tick");
    parts.next_seq = cur.expect_number<SeqNo>("next_seq");
    parts.next_color = cur.expect_number<ColorId>("next_color");
    cur.done();
  }

  Line pool_line = reader.next("pool");
  {
    auto cur = expect_head(pool_line, "pool");
    const auto pool_capacity = cur.expect_number<std::uint32_t>("capacity");
    if (pool_capacity != cfg.capacity)
      cur.fail("pool capacity disagrees with config capacity");
    parts.pool_free = cur.expect_number<std::uint32_t>("free");
    cur.done();
  }

  std::size_t entry_count = 0;
  {
    auto cur = expect_head(reader.next("table"), "table");
    entry_count = cur.expect_number<std::size_t>("count");
    cur.done();
  }
  std::set<Datum> seen_datums;
  std::vector<std::size_t> entry_offsets;
  parts.entries.reserve(entry_count);
  for (std::size_t i = 0; i < entry_count; ++i) {
    Line line = reader.next("entry");
    auto cur = expect_head(line, "entry");
    if (cur.bare_number<std::size_t>("entry index") != i)
      cur.fail("entry index out of order");
    ColorTableEntry e;
    e.color = cur.expect_number<ColorId>("color");
    e.screen = cur.expect_number<SeqNo>("screen");
    e.datum = cur.expect_datum("datum");
    cur.done();
    if (!seen_datums.insert(e.datum).second)
      cur.fail("duplicate datum in color table");
    entry_offsets.push_back(line.offset);
    parts.entries.push_back(std::move(e));
  }

  std::size_t screen_count = 0;
  {
    auto cur = expect_head(reader.next("screens"), "screens");
    screen_count = cur.expect_number<std::size_t>("count");
    cur.done();
  }
  parts.screens.reserve(screen_count);
  SeqNo root_span = 0;       // roots must form the prefix [0, root_span)
  bool roots_done = false;
  std::size_t non_root_pixels = 0;
  for (std::size_t i = 0; i < screen_count; ++i) {
    Line line = reader.next("screen");
    auto cur = expect_head(line, "screen");
    MemoryScreen s;
    s.seq = cur.expect_number<SeqNo>("seq");
    s.tick = cur.expect_number<Tick>("tick");
    const auto root_flag = cur.expect_number<int>("root");
    if (root_flag != 0 && root_flag != 1) cur.fail("root flag must be 0 or 1");
    s.is_root = root_flag == 1;
    s.color = cur.expect_number<ColorId>("color");
    s.datum = cur.expect_datum("datum");
    const auto pixel_count = cur.expect_number<std::size_t>("pixels");
    cur.done();
    if (!parts.screens.empty() && s.seq <= parts.screens.back().seq)
      cur.fail("screen seqs must strictly ascend");
    if (pixel_count == 0) cur.fail("screen has no pixels");
    if (s.is_root) {
      if (roots_done || s.seq != root_span)
        cur.fail("root screens must occupy a contiguous prefix of seqs");
      ++root_span;
    } else {
      roots_done = true;
      if (s.seq < root_span) cur.fail("non-root screen inside root seq range");
      non_root_pixels += pixel_count;
    }
    s.pixels.reserve(pixel_count);
    for (std::size_t p = 0; p < pixel_count; ++p) {
      Line pixel_line = reader.next("pixel");
      auto pcur = expect_head(pixel_line, "pixel");
      MemoryPixel px;
      px.device = pcur.expect_number<DeviceId>("device");
      px.color = pcur.expect_number<ColorId>("color");
      px.intensity.millis = pcur.expect_number<std::int64_t>("intensity");
      px.datum = pcur.expect_datum("datum");
      pcur.done();
      if (px.intensity.millis <= kRemovalMillis)
        pcur.fail("live pixel below removal threshold");
      if (px.intensity.millis > cfg.max_intensity.millis)
        pcur.fail("pixel intensity above i_max");
      s.pixels.push_back(std::move(px));
    }
    parts.screens.push_back(std::move(s));
  }

  {
    const Line end_line = reader.next("end");
    if (end_line.text != "end")
      throw SnapshotFormatError("expected 'end'", end_line.offset);
    if (!reader.at_end())
      throw SnapshotFormatError("trailing data after 'end'", reader.position());
  }

  // Cross-checks with known offsets.
  {
    std::set<SeqNo> seqs;
    for (const auto& s : parts.screens) seqs.insert(s.seq);
    for (std::size_t i = 0; i < parts.entries.size(); ++i)
      if (!seqs.count(parts.entries[i].screen))
        throw SnapshotFormatError("entry references a screen not in the pool",
                                  entry_offsets[i]);
    if (!parts.screens.empty() && parts.next_seq <= parts.screens.back().seq)
      throw SnapshotFormatError("next_seq not above the highest screen seq",
                                pool_line.offset);
    bool any_color = false;
    ColorId max_color = 0;
    auto see_color = [&any_color, &max_color](ColorId c) {
      any_color = true;
      if (c > max_color) max_color = c;
    };
    for (const auto& e : parts.entries) see_color(e.color);
    for (const auto& s : parts.screens) {
      see_color(s.color);
      for (const auto& px : s.pixels) see_color(px.color);
    }
    if (any_color && parts.next_color <= max_color)
      throw SnapshotFormatError("next_color not above the highest color in use",
                                pool_line.offset);
    if (non_root_pixels > cfg.capacity ||
        cfg.capacity - non_root_pixels != parts.pool_free)
      throw SnapshotFormatError("pool free count breaks pixel conservation",
                                pool_line.offset);
  }

  return Engine(cfg, std::move(parts), std::move(matcher));
}

}  // namespace mempix
