#pragma once

#include "taxgame/mcs.hpp"
#include "taxgame/mcwa.hpp"

// Small hand-built instances with known outcomes, shared by the test
// suites and the CLI's reproduce subcommand.

namespace taxgame::examples {

// One task worth 10, two users with execution costs 4.8 and 4.9, no
// travel. The welfare optimum has only the cheap user execute (welfare
// 5.2); at the untaxed equilibrium both execute (welfare 0.3).
mcs::Scenario mcs_single_task();

// Three users routing through nine timed tasks; task 3 is executed by
// users 1 and 2, so its reward is shared. Reward totals along the routes
// are 4.6, 5.8 and 4.8.
mcs::Scenario mcs_routes();
mcs::Profile mcs_routes_profile();

// One shared channel, two symmetric users: unit gains, noise 0.2, power
// budget 2, base-10 capacities. The equilibrium has both transmit at
// full power (welfare ~0.562); the optimum has one transmitter silent
// (welfare ~1.041).
mcwa::Scenario mcwa_shared_channel();

}  // namespace taxgame::examples
