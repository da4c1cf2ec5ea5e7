#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taxgame/mcs.hpp"
#include "taxgame/mcs_solver.hpp"

// Monte-Carlo experiment comparing equilibrium welfare with and without
// the taxation mechanism over random task selection scenarios: tasks
// share one reward level, execution costs are uniform on [0,1], windows
// are fully open and travel is free, so selections are order-free.

namespace taxgame::sim {

struct SimConfig {
  int n_tasks = 10;
  std::vector<int> user_counts = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::vector<double> reward_levels = {0.2, 0.4, 0.6, 0.8, 1.0};
  int trials_per_cell = 200;
  std::uint64_t seed = 1;
};

struct SimCell {
  double reward_level = 0.0;
  int n_users = 0;
  double mean_ne_welfare = 0.0;
  double mean_se_welfare = 0.0;
  // (mean SE - mean NE) / mean NE; 0 when the NE mean vanishes.
  double gain = 0.0;
  int trials = 0;
};

struct SimResult {
  std::vector<SimCell> cells;  // ordered by (reward_level, n_users)
  // One row per trial, columns: reward_level,n_users,trial,ne_welfare,
  // se_welfare,gain (with header).
  std::string csv;

  const SimCell& cell(double reward_level, int n_users) const;
  // Mean of cell gains across reward levels at one user count.
  double mean_gain_at(int n_users) const;
};

// Deterministic per-trial seed, mixed from all cell coordinates.
std::uint64_t trial_seed(std::uint64_t seed, double reward_level, int n_users,
                         int trial_index);

// One random scenario: every task pays `reward_level`, every user can
// execute every task at a uniform [0,1) execution cost, budgets are
// unconstrained and windows never close. Identical seeds give identical
// scenarios.
mcs::Scenario generate_mcs(const SimConfig& config, double reward_level, int n_users,
                           std::uint64_t trial_seed);

// Full sweep over (reward_level, n_users) cells: per trial, the Nash
// equilibrium of the untaxed game and the welfare optimum that the
// efficient taxing rule turns into an equilibrium.
SimResult run_simulation(const SimConfig& config);

void write_csv(const SimResult& result, const std::string& path);

}  // namespace taxgame::sim
