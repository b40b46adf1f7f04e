// Minimal end-to-end loop: a root screen wires the stimulus "HOT" to a
// buzzer command on device 9; a scripted sensor on device 1 reports "HOT"
// at tick 2, and the decision cascade fires the buzzer the same tick.

#include <iostream>

#include "mempix/harness.hpp"
#include "mempix/scenario.hpp"

int main() {
  const char* scenario_text =
      "ticks 6\n"
      "capacity 16\n"
      "root HOT\n"
      "pixel 9 BUZZ\n"
      "device 1\n"
      "emit 1 2 HOT\n";

  mempix::ScenarioSpec spec = mempix::parse_scenario(scenario_text);
  mempix::RunResult result = mempix::run(spec);

  for (const auto& ev : result.events)
    std::cout << mempix::format_event(ev) << "\n";

  std::cout << "--\n";
  for (const auto& [device, received] : result.transcripts)
    for (const auto& [tick, payload] : received)
      std::cout << "device " << device << " got " << mempix::datum_display(payload)
                << " at tick " << tick << "\n";
  return 0;
}
