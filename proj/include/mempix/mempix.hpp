#pragma once

// Umbrella header for the mempix engine library.

#include "mempix/types.hpp"
#include "mempix/screen.hpp"
#include "mempix/color_table.hpp"
#include "mempix/events.hpp"
#include "mempix/pools.hpp"
#include "mempix/config.hpp"
#include "mempix/decision.hpp"
#include "mempix/engine.hpp"
#include "mempix/snapshot.hpp"
#include "mempix/scenario.hpp"
#include "mempix/harness.hpp"
#include "mempix/log_stats.hpp"
