#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mempix/cli.hpp"

namespace mempix {
namespace {

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv = {"mempix"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string temp_path(const std::string& name) {
  return testing::TempDir() + "/" + name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

const char* kReflex =
    "ticks 6\n"
    "capacity 16\n"
    "root HOT\n"
    "pixel 9 BUZZ\n"
    "device 1\n"
    "emit 1 2 HOT\n";

TEST(Cli, RunWritesLogAndSnapshot) {
  const std::string scn = temp_path("cli_reflex.scn");
  const std::string log = temp_path("cli_reflex.log");
  const std::string snap = temp_path("cli_reflex.snap");
  write_text(scn, kReflex);

  EXPECT_EQ(run_cli({"run", "--scenario", scn, "--log", log, "--snapshot-out", snap}), 0);

  const auto records = parse_event_log(cli_detail::read_file(log));
  bool saw_action = false;
  for (const auto& rec : records) saw_action |= rec.kind == "ActionIssued";
  EXPECT_TRUE(saw_action);

  const Engine restored = restore_snapshot(cli_detail::read_file(snap));
  EXPECT_EQ(restored.current_tick(), 6u);
}

TEST(Cli, RunTicksOverride) {
  const std::string scn = temp_path("cli_override.scn");
  const std::string snap = temp_path("cli_override.snap");
  write_text(scn, kReflex);
  EXPECT_EQ(run_cli({"run", "--scenario", scn, "--snapshot-out", snap, "--ticks", "3"}), 0);
  EXPECT_EQ(restore_snapshot(cli_detail::read_file(snap)).current_tick(), 3u);
}

TEST(Cli, RunMissingScenarioIsIoError) {
  EXPECT_EQ(run_cli({"run", "--scenario", temp_path("absent.scn")}), 2);
}

TEST(Cli, RunInvalidScenarioIsValidationError) {
  const std::string scn = temp_path("cli_bad_r.scn");
  write_text(scn, "ticks 5\nr 0.000\n");
  EXPECT_EQ(run_cli({"run", "--scenario", scn}), 1);
}

TEST(Cli, InspectMissingSnapshotIsIoError) {
  EXPECT_EQ(run_cli({"inspect", "--snapshot", temp_path("missing.snap")}), 2);
}

TEST(Cli, InspectMalformedSnapshotIsValidationError) {
  const std::string snap = temp_path("cli_bad.snap");
  write_text(snap, "not a snapshot\n");
  EXPECT_EQ(run_cli({"inspect", "--snapshot", snap}), 1);
}

TEST(Cli, InspectRoundTrip) {
  const std::string scn = temp_path("cli_inspect.scn");
  const std::string snap = temp_path("cli_inspect.snap");
  write_text(scn, kReflex);
  ASSERT_EQ(run_cli({"run", "--scenario", scn, "--snapshot-out", snap}), 0);
  EXPECT_EQ(run_cli({"inspect", "--snapshot", snap}), 0);
}

TEST(Cli, StatsOnLog) {
  const std::string scn = temp_path("cli_stats.scn");
  const std::string log = temp_path("cli_stats.log");
  write_text(scn, kReflex);
  ASSERT_EQ(run_cli({"run", "--scenario", scn, "--log", log}), 0);
  EXPECT_EQ(run_cli({"stats", "--log", log}), 0);
}

TEST(Cli, StatsRejectsGarbageLog) {
  const std::string log = temp_path("cli_garbage.log");
  write_text(log, "garbage\n");
  EXPECT_EQ(run_cli({"stats", "--log", log}), 1);
}

TEST(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run_cli({"run", "--bogus"}), 1);
  EXPECT_EQ(run_cli({"frobnicate"}), 1);
  EXPECT_EQ(run_cli({}), 1);  // a subcommand is required
}

TEST(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run_cli({"--help"}), 0);
}

}  // namespace
}  // namespace mempix
