#include "taxgame/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace taxgame::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0,1) from the top 53 bits; avoids the library
// distribution so output is identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void append_row(std::string& csv, double reward_level, int n_users, int trial,
                double ne_welfare, double se_welfare, double gain) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%.1f,%d,%d,%.10g,%.10g,%.10g\n", reward_level,
                n_users, trial, ne_welfare, se_welfare, gain);
  csv += buffer;
}

}  // namespace

const SimCell& SimResult::cell(double reward_level, int n_users) const {
  for (const SimCell& c : cells) {
    if (c.n_users == n_users && std::abs(c.reward_level - reward_level) < 1e-12) return c;
  }
  throw std::out_of_range("no simulation cell for reward level " +
                          std::to_string(reward_level) + ", " + std::to_string(n_users) +
                          " users");
}

double SimResult::mean_gain_at(int n_users) const {
  double total = 0.0;
  int count = 0;
  for (const SimCell& c : cells) {
    if (c.n_users == n_users) {
      total += c.gain;
      count += 1;
    }
  }
  if (count == 0) throw std::out_of_range("no cells with " + std::to_string(n_users) + " users");
  return total / count;
}

std::uint64_t trial_seed(std::uint64_t seed, double reward_level, int n_users,
                         int trial_index) {
  std::uint64_t reward_bits;
  static_assert(sizeof(reward_bits) == sizeof(reward_level));
  std::memcpy(&reward_bits, &reward_level, sizeof(reward_bits));
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ reward_bits);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n_users));
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial_index));
  return h;
}

mcs::Scenario generate_mcs(const SimConfig& config, double reward_level, int n_users,
                           std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  mcs::Scenario scenario;
  scenario.tasks.reserve(config.n_tasks);
  for (int k = 1; k <= config.n_tasks; ++k) {
    mcs::Task task;
    task.id = k;
    task.reward = reward_level;
    task.location = {0.0, 0.0};
    task.window_open = 0.0;
    task.window_close = std::numeric_limits<double>::infinity();
    scenario.tasks.push_back(task);
  }
  scenario.users.reserve(n_users);
  for (int i = 1; i <= n_users; ++i) {
    mcs::User user;
    user.id = i;
    user.initial_location = {0.0, 0.0};
    user.travel_cost_rate = 0.0;
    user.speed = 1.0;
    user.resource_budget = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= config.n_tasks; ++k) {
      user.available[k] = {0.0, uniform01(rng)};
    }
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

SimResult run_simulation(const SimConfig& config) {
  SimResult result;
  result.csv = "reward_level,n_users,trial,ne_welfare,se_welfare,gain\n";
  mcs::SolverConfig solver;
  solver.unordered = true;
  for (double reward_level : config.reward_levels) {
    for (int n_users : config.user_counts) {
      SimCell cell;
      cell.reward_level = reward_level;
      cell.n_users = n_users;
      double ne_total = 0.0;
      double se_total = 0.0;
      for (int trial = 0; trial < config.trials_per_cell; ++trial) {
        const mcs::Scenario scenario = generate_mcs(
            config, reward_level, n_users,
            trial_seed(config.seed, reward_level, n_users, trial));
        double ne_welfare = 0.0;
        double se_welfare = 0.0;
        bool failed = false;
        try {
          ne_welfare = mcs::nash_equilibrium(scenario, solver).welfare;
          se_welfare = mcs::social_optimum(scenario, solver).welfare;
        } catch (const std::length_error&) {
          failed = true;  // solver cap exceeded; mark and continue
        }
        if (failed) {
          char buffer[96];
          std::snprintf(buffer, sizeof(buffer), "%.1f,%d,%d,failed,failed,failed\n",
                        reward_level, n_users, trial);
          result.csv += buffer;
          continue;
        }
        const double gain = ne_welfare > 1e-12 ? (se_welfare - ne_welfare) / ne_welfare : 0.0;
        append_row(result.csv, reward_level, n_users, trial, ne_welfare, se_welfare, gain);
        ne_total += ne_welfare;
        se_total += se_welfare;
        cell.trials += 1;
      }
      if (cell.trials > 0) {
        cell.mean_ne_welfare = ne_total / cell.trials;
        cell.mean_se_welfare = se_total / cell.trials;
        cell.gain = cell.mean_ne_welfare > 1e-12
                        ? (cell.mean_se_welfare - cell.mean_ne_welfare) / cell.mean_ne_welfare
                        : 0.0;
      }
      result.cells.push_back(cell);
    }
  }
  return result;
}

void write_csv(const SimResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  out << result.csv;
  if (!out) throw std::runtime_error("failed writing CSV file: " + path);
}

}  // namespace taxgame::sim
