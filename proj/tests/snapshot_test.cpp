#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mempix/engine.hpp"
#include "mempix/snapshot.hpp"

namespace mempix {
namespace {

EngineConfig demo_config() {
  EngineConfig cfg;
  cfg.capacity = 12;
  cfg.decay_period = 2;
  cfg.roots.push_back({Datum{"HOT"}, {{9, "BUZZ"}}});
  return cfg;
}

Engine busy_engine() {
  Engine engine(demo_config());
  const std::vector<std::vector<DeviceInput>> script = {
      {{1, "A"}, {2, "B"}}, {{1, "A"}}, {{2, "HOT"}}, {}, {{1, "C"}, {2, "C"}},
      {{1, "B"}},           {},         {{3, "D"}},   {}, {{1, "A"}}};
  for (const auto& inputs : script) engine.step_with(inputs);
  return engine;
}

TEST(Snapshot, InitIsByteDeterministic) {
  Engine a(demo_config());
  Engine b(demo_config());
  EXPECT_EQ(write_snapshot(a), write_snapshot(b));
}

TEST(Snapshot, StartsWithVersionedHeader) {
  Engine engine(demo_config());
  const std::string blob = write_snapshot(engine);
  EXPECT_EQ(blob.rfind("MEMPIX-SNAPSHOT v1\n", 0), 0u);
}

TEST(Snapshot, RoundTripsDeepEqual) {
  Engine engine = busy_engine();
  const std::string blob = write_snapshot(engine);
  Engine restored = restore_snapshot(blob);
  EXPECT_TRUE(restored.state_equals(engine));
  EXPECT_EQ(write_snapshot(restored), blob);
}

TEST(Snapshot, RestoredEngineContinuesIdentically) {
  Engine original = busy_engine();
  Engine restored = restore_snapshot(write_snapshot(original));
  const std::vector<std::vector<DeviceInput>> tail = {
      {{1, "A"}}, {}, {{2, "HOT"}}, {{1, "E"}, {2, "E"}}, {}};
  std::vector<Event> log_a;
  std::vector<Event> log_b;
  for (const auto& inputs : tail) {
    auto ra = original.step_with(inputs);
    auto rb = restored.step_with(inputs);
    log_a.insert(log_a.end(), ra.events.begin(), ra.events.end());
    log_b.insert(log_b.end(), rb.events.begin(), rb.events.end());
  }
  EXPECT_EQ(format_event_log(log_a), format_event_log(log_b));
  EXPECT_EQ(write_snapshot(original), write_snapshot(restored));
}

TEST(Snapshot, TruncatedBlobIsRejectedWithOffset) {
  const std::string blob = write_snapshot(busy_engine());
  const std::string truncated = blob.substr(0, blob.size() / 2);
  try {
    restore_snapshot(truncated);
    FAIL() << "truncated snapshot accepted";
  } catch (const SnapshotFormatError& e) {
    EXPECT_LE(e.byte_offset, truncated.size());
  }
}

TEST(Snapshot, BadHeaderIsRejected) {
  EXPECT_THROW(restore_snapshot("NOT-A-SNAPSHOT\n"), SnapshotFormatError);
  EXPECT_THROW(restore_snapshot(""), SnapshotFormatError);
}

TEST(Snapshot, TrailingDataIsRejected) {
  std::string blob = write_snapshot(Engine(demo_config()));
  blob += "extra\n";
  EXPECT_THROW(restore_snapshot(blob), SnapshotFormatError);
}

TEST(Snapshot, ConservationTamperIsRejected) {
  std::string blob = write_snapshot(busy_engine());
  const std::string needle = "free=";
  const auto at = blob.find(needle);
  ASSERT_NE(at, std::string::npos);
  char& digit = blob[at + needle.size()];
  digit = digit == '0' ? '9' : '0';  // corrupt the free count
  EXPECT_THROW(restore_snapshot(blob), SnapshotFormatError);
}

TEST(Snapshot, DanglingEntryIsRejected) {
  // Hand-build a minimal blob whose single entry references screen 5.
  const std::string blob =
      "MEMPIX-SNAPSHOT v1\n"
      "config capacity=4 i_max=5000 i_known=3000 r=500 w=4 p=1\n"
      "state tick=0 next_seq=0 next_color=1\n"
      "pool capacity=4 free=4\n"
      "table count=1\n"
      "entry 0 color=0 screen=5 datum=41\n"
      "screens count=0\n"
      "end\n";
  try {
    restore_snapshot(blob);
    FAIL() << "dangling entry accepted";
  } catch (const SnapshotFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("references"), std::string::npos);
  }
}

TEST(Snapshot, ZeroPixelScreenIsRejected) {
  const std::string blob =
      "MEMPIX-SNAPSHOT v1\n"
      "config capacity=4 i_max=5000 i_known=3000 r=500 w=4 p=1\n"
      "state tick=0 next_seq=1 next_color=0\n"
      "pool capacity=4 free=4\n"
      "table count=0\n"
      "screens count=1\n"
      "screen seq=0 tick=0 root=0 color=0 datum=41 pixels=0\n"
      "end\n";
  EXPECT_THROW(restore_snapshot(blob), SnapshotFormatError);
}

TEST(Snapshot, OffsetsPointIntoTheBlob) {
  const std::string good = write_snapshot(Engine(demo_config()));
  for (const std::size_t cut : {20u, 40u, 80u}) {
    const std::string mangled = good.substr(0, cut);
    try {
      restore_snapshot(mangled);
    } catch (const SnapshotFormatError& e) {
      EXPECT_LE(e.byte_offset, mangled.size());
      EXPECT_NE(std::string(e.what()).find("byte "), std::string::npos);
    }
  }
}

TEST(Snapshot, RestoreRejectsDuplicateDatumEntries) {
  const std::string blob =
      "MEMPIX-SNAPSHOT v1\n"
      "config capacity=4 i_max=5000 i_known=3000 r=500 w=4 p=1\n"
      "state tick=0 next_seq=1 next_color=2\n"
      "pool capacity=4 free=3\n"
      "table count=2\n"
      "entry 0 color=0 screen=0 datum=41\n"
      "entry 1 color=1 screen=0 datum=41\n"
      "screens count=1\n"
      "screen seq=0 tick=0 root=0 color=0 datum=41 pixels=1\n"
      "pixel device=1 color=0 intensity=5000 datum=41\n"
      "end\n";
  EXPECT_THROW(restore_snapshot(blob), SnapshotFormatError);
}

}  // namespace
}  // namespace mempix
