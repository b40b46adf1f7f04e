#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mempix/types.hpp"

namespace mempix {

// A log line split back into its parts. Only the fields the stats need are
// interpreted; everything else stays as text.
struct LogRecord {
  Tick tick = 0;
  std::string kind;
  std::map<std::string, std::string> fields;
};

struct LogParseError : std::runtime_error {
  LogParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("log line " + std::to_string(line) + ": " + msg),
        line(line) {}
  std::size_t line;
};

inline constexpr std::array<std::string_view, 12> kEventKindNames = {
    "ScreenCommitted", "PixelColorized", "EntryAdded",   "DecaySweep",
    "PixelRemoved",    "ScreenRemoved",  "EntryRemoved", "Evicted",
    "DroppedInput",    "Decision",       "ActionIssued", "CopySkipped"};

inline std::vector<LogRecord> parse_event_log(std::string_view text) {
  std::vector<LogRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;

    LogRecord rec;
    std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos)
      throw LogParseError("expected '<tick> <kind> ...'", line_no);
    {
      const auto [ptr, ec] = std::from_chars(line.data(), line.data() + sp, rec.tick);
      if (ec != std::errc{} || ptr != line.data() + sp)
        throw LogParseError("bad tick value", line_no);
    }
    std::size_t field_start = line.find(' ', sp + 1);
    if (field_start == std::string_view::npos) field_start = line.size();
    rec.kind = std::string(line.substr(sp + 1, field_start - sp - 1));
    bool known = false;
    for (const auto name : kEventKindNames) known = known || name == rec.kind;
    if (!known) throw LogParseError("unknown event kind '" + rec.kind + "'", line_no);

    std::size_t i = field_start;
    while (i < line.size()) {
      ++i;  // skip the space
      const std::size_t eq = line.find('=', i);
      if (eq == std::string_view::npos)
        throw LogParseError("expected key=value field", line_no);
      std::size_t end = line.find(' ', eq + 1);
      if (end == std::string_view::npos) end = line.size();
      rec.fields[std::string(line.substr(i, eq - i))] =
          std::string(line.substr(eq + 1, end - eq - 1));
      i = end;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

struct ScreenLifetime {
  SeqNo seq = 0;
  Tick committed = 0;
  std::optional<Tick> removed{};
};

struct LogStats {
  std::map<std::string, std::size_t> counts;      // per event kind, all kinds
  std::vector<ScreenLifetime> lifetimes;          // in commit order
  std::map<Tick, std::size_t> forgetting;         // lifetime ticks -> screens
  std::size_t committed = 0;
  std::size_t removed = 0;
};

inline LogStats compute_stats(const std::vector<LogRecord>& records) {
  LogStats stats;
  for (const auto name : kEventKindNames) stats.counts[std::string(name)] = 0;

  std::map<SeqNo, std::size_t> open;  // seq -> index into lifetimes
  for (const auto& rec : records) {
    ++stats.counts[rec.kind];
    auto seq_field = [&rec]() {
      return static_cast<SeqNo>(std::stoull(rec.fields.at("seq")));
    };
    if (rec.kind == "ScreenCommitted") {
      const SeqNo seq = seq_field();
      open[seq] = stats.lifetimes.size();
      stats.lifetimes.push_back({seq, rec.tick, std::nullopt});
      ++stats.committed;
    } else if (rec.kind == "ScreenRemoved") {
      const SeqNo seq = seq_field();
      auto it = open.find(seq);
      if (it != open.end()) {
        stats.lifetimes[it->second].removed = rec.tick;
        ++stats.forgetting[rec.tick - stats.lifetimes[it->second].committed];
        ++stats.removed;
        open.erase(it);
      }
    }
  }
  return stats;
}

inline std::string format_stats(const LogStats& stats) {
  std::string out = "event counts:\n";
  for (const auto name : kEventKindNames) {
    out += "  ";
    out += name;
    out += " ";
    out += std::to_string(stats.counts.at(std::string(name)));
    out.push_back('\n');
  }
  out += "screens: committed=" + std::to_string(stats.committed) +
         " removed=" + std::to_string(stats.removed) +
         " live=" + std::to_string(stats.committed - stats.removed) + "\n";
  out += "screen lifetimes:\n";
  for (const auto& lt : stats.lifetimes) {
    out += "  seq=" + std::to_string(lt.seq) +
           " committed=" + std::to_string(lt.committed);
    if (lt.removed)
      out += " removed=" + std::to_string(*lt.removed) +
             " lifetime=" + std::to_string(*lt.removed - lt.committed);
    else
      out += " live";
    out.push_back('\n');
  }
  out += "forgetting histogram (lifetime ticks -> screens):\n";
  for (const auto& [lifetime, n] : stats.forgetting)
    out += "  " + std::to_string(lifetime) + " -> " + std::to_string(n) + "\n";
  return out;
}

}  // namespace mempix
