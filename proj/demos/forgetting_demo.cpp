// Shows the forgetting curve directly: a screen holding a novel datum owns
// that datum's table entry, so every sweep credits it +r (net -0.5 here); a
// screen formed from an already-known datum is unreferenced and loses a full
// unit per sweep. The reinforced memory outlives the plain one 12 ticks to 5.

#include <iostream>

#include "mempix/engine.hpp"

int main() {
  mempix::EngineConfig cfg;
  cfg.decay_period = 1;
  cfg.max_intensity = mempix::Intensity{5000};
  cfg.known_intensity = mempix::Intensity{3000};
  cfg.reinforcement = mempix::Intensity{500};
  cfg.roots.push_back({mempix::Datum{"KNOWN"}, {{9, "ACT"}}});
  mempix::Engine engine(cfg);

  engine.step_with({{1, "NOVEL"}});  // seq 1: referenced by its own entry
  engine.step_with({{2, "KNOWN"}});  // seq 2: datum rooted, so unreferenced

  const auto show = [&engine](mempix::SeqNo seq) {
    const auto* s = engine.screen_pool().find(seq);
    return s ? mempix::format_intensity(s->pixels[0].intensity)
             : std::string("forgotten");
  };

  std::cout << "tick  reinforced  unreferenced\n";
  for (mempix::Tick t = 2; t <= 13; ++t) {
    engine.step_with({});
    std::cout << t << (t < 10 ? "     " : "    ") << show(1) << "       "
              << show(2) << "\n";
  }
  return 0;
}
