#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mempix {

// Opaque relatedness tag. Allocated monotonically from 0 by the engine and
// never reused within a run.
using ColorId = std::uint32_t;

// Identifies a peripheral device (sensor or actuator).
using DeviceId = std::uint32_t;

// Screen sequence number. Root screens occupy [0, R); runtime screens are
// assigned R, R+1, ... strictly ascending.
using SeqNo = std::uint64_t;

// Virtual clock value. All scheduling is tick-based; there is no wall clock
// anywhere in the engine.
using Tick = std::uint64_t;

// Payload bytes carried by a pixel. Compared by exact byte equality;
// lexicographic byte order is the tie-break order.
using Datum = std::string;

inline constexpr std::size_t kMaxDatumBytes = 4096;

inline bool datum_valid(const Datum& d) {
  return !d.empty() && d.size() <= kMaxDatumBytes;
}

// Importance score in exact milli-units (1.000 == 1000). Fixed point keeps
// every run bit-reproducible; binary floating point is never used.
struct Intensity {
  std::int64_t millis = 0;

  friend constexpr auto operator<=>(const Intensity&, const Intensity&) = default;
};

// One intensity unit, the per-sweep decay decrement.
inline constexpr std::int64_t kIntensityUnit = 1000;

// Removal threshold: a pixel whose intensity falls to -1.000 or below is dead.
inline constexpr std::int64_t kRemovalMillis = -kIntensityUnit;

// "5.000", "-0.500" -- always three decimal places.
std::string format_intensity(Intensity v);

// Parses a non-negative decimal with at most three fractional digits into
// milli-units, exactly. Throws std::invalid_argument on anything else.
std::int64_t parse_intensity_millis(const std::string& text);

// The atomic memory unit. A free pixel in the pixel pool is blank (all fields
// default); every field is populated before the pixel joins a screen.
struct MemoryPixel {
  ColorId color = 0;
  Intensity intensity{};
  DeviceId device = 0;
  Datum datum{};

  friend bool operator==(const MemoryPixel&, const MemoryPixel&) = default;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Caller broke a documented precondition (a programming error, not a runtime
// event).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// State bookkeeping is inconsistent; continuing would corrupt memory content.
struct InternalCorruptionError : std::logic_error {
  using std::logic_error::logic_error;
};

// Attempt to insert a second color-table entry for the same datum.
struct DuplicateDatumError : std::logic_error {
  using std::logic_error::logic_error;
};

// Attempt to remove or mutate a root screen.
struct RootImmutableError : std::logic_error {
  using std::logic_error::logic_error;
};

// Configuration violates a documented bound; the message names the bound.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario file problem, with 1-based position.
struct ScenarioError : std::runtime_error {
  ScenarioError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

// Snapshot blob is malformed; offset is the byte position of the problem.
struct SnapshotFormatError : std::runtime_error {
  SnapshotFormatError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error("byte " + std::to_string(byte_offset) + ": " + msg),
        byte_offset(byte_offset) {}

  std::size_t byte_offset;
};

// File could not be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Formatting helpers shared by logs, snapshots and dumps
// ---------------------------------------------------------------------------

std::string datum_hex(const Datum& d);
Datum datum_from_hex(const std::string& hex);  // throws std::invalid_argument

// Quoted text when printable, hex otherwise. For human-facing dumps only.
std::string datum_display(const Datum& d);

// --- inline implementations ---

inline std::string format_intensity(Intensity v) {
  std::int64_t m = v.millis;
  std::string out;
  if (m < 0) {
    out.push_back('-');
    m = -m;
  }
  out += std::to_string(m / kIntensityUnit);
  out.push_back('.');
  const std::int64_t frac = m % kIntensityUnit;
  out.push_back(static_cast<char>('0' + frac / 100));
  out.push_back(static_cast<char>('0' + frac / 10 % 10));
  out.push_back(static_cast<char>('0' + frac % 10));
  return out;
}

inline std::int64_t parse_intensity_millis(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty intensity");
  std::size_t i = 0;
  std::int64_t whole = 0;
  bool saw_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad intensity: " + text);
    whole = whole * 10 + (text[i] - '0');
    saw_digit = true;
    if (whole > 999'999'999) throw std::invalid_argument("intensity too large: " + text);
  }
  std::int64_t frac = 0;
  if (i < text.size()) {  // at the '.'
    ++i;
    std::size_t digits = 0;
    for (; i < text.size(); ++i, ++digits) {
      if (text[i] < '0' || text[i] > '9' || digits >= 3)
        throw std::invalid_argument("bad intensity: " + text);
      frac = frac * 10 + (text[i] - '0');
      saw_digit = true;
    }
    while (digits < 3) {
      frac *= 10;
      ++digits;
    }
  }
  if (!saw_digit) throw std::invalid_argument("bad intensity: " + text);
  return whole * kIntensityUnit + frac;
}

inline std::string datum_hex(const Datum& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(d.size() * 2);
  for (unsigned char c : d) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0xF]);
  }
  return out;
}

inline Datum datum_from_hex(const std::string& hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
  Datum out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit in: " + hex);
    out.push_back(static_cast<char>(hi << 4 | lo));
  }
  return out;
}

inline std::string datum_display(const Datum& d) {
  bool printable = true;
  for (unsigned char c : d) {
    if (c < 0x20 || c > 0x7E || c == '"') {
      printable = false;
      break;
    }
  }
  if (printable) return "\"" + d + "\"";
  return "0x" + datum_hex(d);
}

}  // namespace mempix
