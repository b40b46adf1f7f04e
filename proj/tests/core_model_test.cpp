#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mempix/color_table.hpp"
#include "mempix/screen.hpp"

namespace mempix {
namespace {

MemoryPixel px(ColorId color, const char* datum = "x", DeviceId device = 0) {
  return MemoryPixel{color, Intensity{1000}, device, datum};
}

TEST(MajorityColor, StrictMajorityWins) {
  std::vector<MemoryPixel> pixels = {px(0), px(0), px(1)};
  EXPECT_EQ(majority_color(pixels), 0u);
}

TEST(MajorityColor, TieBreaksTowardSmallerId) {
  std::vector<MemoryPixel> pixels = {px(1), px(0)};
  EXPECT_EQ(majority_color(pixels), 0u);
}

TEST(MajorityColor, Singleton) {
  std::vector<MemoryPixel> pixels = {px(2)};
  EXPECT_EQ(majority_color(pixels), 2u);
}

TEST(MajorityColor, EmptyListIsContractViolation) {
  std::vector<MemoryPixel> none;
  EXPECT_THROW(majority_color(none), ContractViolation);
}

TEST(MajorityColor, PermutationInvariant) {
  std::vector<MemoryPixel> pixels = {px(3), px(1), px(1), px(3), px(0), px(3)};
  const ColorId expected = majority_color(pixels);
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(pixels.begin(), pixels.end(), rng);
    EXPECT_EQ(majority_color(pixels), expected);
  }
}

TEST(ModeDatum, StrictMode) {
  std::vector<MemoryPixel> pixels = {px(0, "A"), px(0, "A"), px(0, "B")};
  EXPECT_EQ(mode_datum(pixels), "A");
}

TEST(ModeDatum, TieBreaksLexicographically) {
  std::vector<MemoryPixel> pixels = {px(0, "B"), px(0, "A")};
  EXPECT_EQ(mode_datum(pixels), "A");
}

TEST(ModeDatum, RestrictedToColor) {
  std::vector<MemoryPixel> pixels = {px(0, "A"), px(1, "B"), px(1, "B")};
  EXPECT_EQ(mode_datum(pixels, ColorId{1}), "B");
}

TEST(ModeDatum, RestrictWithoutMatchIsContractViolation) {
  std::vector<MemoryPixel> pixels = {px(0, "A")};
  EXPECT_THROW(mode_datum(pixels, ColorId{9}), ContractViolation);
}

TEST(ModeDatum, ByteOrderingIsUnsigned) {
  // 0x80 sorts after any ASCII byte, not before.
  std::vector<MemoryPixel> pixels = {px(0, "\x80"), px(0, "z")};
  EXPECT_EQ(mode_datum(pixels), "z");
}

TEST(ColorTableLookup, ByDatum) {
  ColorTable table;
  EXPECT_EQ(table.lookup_by_datum("A"), nullptr);
  table.insert({0, 5, "A"});
  ASSERT_NE(table.lookup_by_datum("A"), nullptr);
  EXPECT_EQ(*table.lookup_by_datum("A"), (ColorTableEntry{0, 5, "A"}));
  EXPECT_EQ(table.lookup_by_datum("B"), nullptr);
}

TEST(ColorTableLookup, ByColor) {
  ColorTable table;
  table.insert({0, 5, "A"});
  table.insert({1, 7, "B"});
  EXPECT_EQ(table.lookup_by_color(0), (std::vector<ColorTableEntry>{{0, 5, "A"}}));
  EXPECT_TRUE(table.lookup_by_color(9).empty());
  EXPECT_EQ(table.lookup_by_color(1), (std::vector<ColorTableEntry>{{1, 7, "B"}}));
}

TEST(ColorTableLookup, ByColorKeepsInsertionOrder) {
  // Shared colors cannot arise under the default matcher but the table
  // itself supports them; order must stay insertion order.
  ColorTable table;
  table.insert({4, 5, "A"});
  table.insert({4, 9, "C"});
  const auto hits = table.lookup_by_color(4);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].screen, 5u);
  EXPECT_EQ(hits[1].screen, 9u);
}

TEST(ColorTableInsert, AppendsAndFinds) {
  ColorTable table;
  table.insert({0, 3, "A"});
  EXPECT_EQ(table.size(), 1u);
  table.insert({1, 3, "B"});
  ASSERT_NE(table.lookup_by_datum("B"), nullptr);
  EXPECT_EQ(*table.lookup_by_datum("B"), (ColorTableEntry{1, 3, "B"}));
}

TEST(ColorTableInsert, RejectsDuplicateDatum) {
  ColorTable table;
  table.insert({0, 3, "A"});
  EXPECT_THROW(table.insert({2, 4, "A"}), DuplicateDatumError);
  EXPECT_EQ(table.size(), 1u);
}

TEST(ColorTableRemoveScreen, RemovesAllMatching) {
  ColorTable table;
  table.insert({0, 7, "A"});
  table.insert({1, 7, "B"});
  table.insert({2, 9, "C"});
  EXPECT_EQ(table.remove_screen(7), 2u);
  EXPECT_EQ(table.entries(), (std::vector<ColorTableEntry>{{2, 9, "C"}}));
}

TEST(ColorTableRemoveScreen, AbsentSeqIsNoop) {
  ColorTable table;
  table.insert({0, 7, "A"});
  EXPECT_EQ(table.remove_screen(42), 0u);
  EXPECT_EQ(table.size(), 1u);
}

TEST(ColorTableRemoveScreen, EmptyTable) {
  ColorTable table;
  EXPECT_EQ(table.remove_screen(7), 0u);
  EXPECT_TRUE(table.empty());
}

TEST(ColorTableProperty, DatumStaysUnique) {
  // Random insert/remove churn: no two entries ever share a datum.
  std::mt19937 rng(42);
  ColorTable table;
  SeqNo next_seq = 0;
  for (int step = 0; step < 2000; ++step) {
    const auto roll = rng() % 100;
    if (roll < 70) {
      const Datum d(1, static_cast<char>('a' + rng() % 8));
      if (table.lookup_by_datum(d) == nullptr)
        table.insert({static_cast<ColorId>(rng() % 16), next_seq++ % 10, d});
      else
        EXPECT_THROW(table.insert({0, 0, d}), DuplicateDatumError);
    } else {
      table.remove_screen(rng() % 10);
    }
    std::set<Datum> seen;
    for (const auto& e : table.entries())
      EXPECT_TRUE(seen.insert(e.datum).second) << "duplicate datum in table";
  }
}

TEST(ReferencedScreens, CollectsDistinctSeqs) {
  ColorTable table;
  table.insert({0, 7, "A"});
  table.insert({1, 7, "B"});
  table.insert({2, 9, "C"});
  EXPECT_EQ(table.referenced_screens(), (std::set<SeqNo>{7, 9}));
}

}  // namespace
}  // namespace mempix
