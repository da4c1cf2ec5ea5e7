#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "taxgame/mcs.hpp"
#include "taxgame/normal_form.hpp"

// Shared generators and independent oracles for the unit suites. The
// oracles deliberately re-derive results from first principles rather
// than calling the code paths they check.

namespace testsupport {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline taxgame::PayoffVector random_payoffs(Rng& rng, std::size_t n, double lo = -10.0,
                                            double hi = 10.0) {
  taxgame::PayoffVector u(n);
  for (double& x : u) x = uniform(rng, lo, hi);
  return u;
}

inline taxgame::FiniteGame random_game(Rng& rng, int max_players = 3,
                                       int max_strategies = 4, double lo = 0.0,
                                       double hi = 1.0) {
  taxgame::FiniteGame game;
  game.n_players = static_cast<std::size_t>(uniform_int(rng, 2, max_players));
  game.strategy_counts.resize(game.n_players);
  for (int& c : game.strategy_counts) c = uniform_int(rng, 1, max_strategies);
  game.payoffs.resize(game.num_profiles() * game.n_players);
  for (double& u : game.payoffs) u = uniform(rng, lo, hi);
  return game;
}

// ---- task selection game helpers -----------------------------------------

// Random scenario with binding windows, travel costs and budgets.
// Locations are colinear on the x axis with integer coordinates and unit
// speeds, so every travel time is integral and the integer time grid is
// exact for feasibility questions.
inline taxgame::mcs::Scenario random_mcs_integer(Rng& rng, int max_users = 3,
                                                 int max_tasks = 3) {
  taxgame::mcs::Scenario scenario;
  const int n_tasks = uniform_int(rng, 1, max_tasks);
  const int horizon = 20;
  for (int k = 1; k <= n_tasks; ++k) {
    taxgame::mcs::Task task;
    task.id = k;
    task.reward = uniform(rng, 0.0, 5.0);
    task.location = {static_cast<double>(uniform_int(rng, 0, 8)), 0.0};
    task.window_open = uniform_int(rng, 0, horizon - 4);
    task.window_close = task.window_open + uniform_int(rng, 0, 8);
    scenario.tasks.push_back(task);
  }
  const int n_users = uniform_int(rng, 2, max_users);
  for (int i = 1; i <= n_users; ++i) {
    taxgame::mcs::User user;
    user.id = i;
    user.initial_location = {static_cast<double>(uniform_int(rng, 0, 8)), 0.0};
    user.travel_cost_rate = uniform(rng, 0.0, 0.3);
    user.speed = 1.0;
    user.resource_budget = rng() % 3 == 0 ? uniform(rng, 0.5, 3.0)
                                          : std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n_tasks; ++k) {
      if (rng() % 4 == 0) continue;  // not every task is available
      taxgame::mcs::TaskRequirement req;
      req.exec_time = uniform_int(rng, 0, 2);
      req.exec_cost = uniform(rng, 0.0, 1.5);
      user.available[k] = req;
    }
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

// Open windows, free travel, unconstrained budgets: order never matters.
inline taxgame::mcs::Scenario random_mcs_open(Rng& rng, int max_users = 3,
                                              int max_tasks = 3) {
  taxgame::mcs::Scenario scenario;
  const int n_tasks = uniform_int(rng, 1, max_tasks);
  for (int k = 1; k <= n_tasks; ++k) {
    taxgame::mcs::Task task;
    task.id = k;
    task.reward = uniform(rng, 0.0, 1.0);
    task.location = {0.0, 0.0};
    task.window_open = 0.0;
    task.window_close = std::numeric_limits<double>::infinity();
    scenario.tasks.push_back(task);
  }
  const int n_users = uniform_int(rng, 2, max_users);
  for (int i = 1; i <= n_users; ++i) {
    taxgame::mcs::User user;
    user.id = i;
    user.initial_location = {0.0, 0.0};
    user.travel_cost_rate = 0.0;
    user.speed = 1.0;
    user.resource_budget = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n_tasks; ++k) {
      user.available[k] = {0.0, uniform(rng, 0.0, 1.0)};
    }
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

// All feasible ordered selections of one user, found by brute-force
// extension with a full feasibility re-check at every node (no pruning
// shortcuts shared with the solver).
inline void enumerate_feasible_rec(const taxgame::mcs::Scenario& scenario,
                                   const taxgame::mcs::User& user,
                                   taxgame::mcs::OrderedSelection& current,
                                   std::vector<taxgame::mcs::OrderedSelection>& out) {
  out.push_back(current);
  for (const auto& [task_id, req] : user.available) {
    if (std::find(current.begin(), current.end(), task_id) != current.end()) continue;
    current.push_back(task_id);
    if (taxgame::mcs::is_feasible(scenario, user, current)) {
      enumerate_feasible_rec(scenario, user, current, out);
    }
    current.pop_back();
  }
}

inline std::vector<taxgame::mcs::OrderedSelection> enumerate_feasible(
    const taxgame::mcs::Scenario& scenario, std::size_t user_index) {
  std::vector<taxgame::mcs::OrderedSelection> out;
  taxgame::mcs::OrderedSelection current;
  enumerate_feasible_rec(scenario, scenario.users[user_index], current, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A uniformly random feasible profile, built by repeated feasible
// extension.
inline taxgame::mcs::Profile random_feasible_profile(const taxgame::mcs::Scenario& scenario,
                                                     Rng& rng) {
  taxgame::mcs::Profile profile(scenario.num_users());
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    const auto options = enumerate_feasible(scenario, i);
    profile[i] = options[rng() % options.size()];
  }
  return profile;
}

// Exhaustive joint maximization of an arbitrary profile functional.
template <typename Eval>
inline std::pair<taxgame::mcs::Profile, double> joint_maximize(
    const taxgame::mcs::Scenario& scenario, Eval&& eval) {
  const std::size_t n = scenario.num_users();
  std::vector<std::vector<taxgame::mcs::OrderedSelection>> options(n);
  for (std::size_t i = 0; i < n; ++i) options[i] = enumerate_feasible(scenario, i);
  std::vector<std::size_t> pick(n, 0);
  taxgame::mcs::Profile profile(n);
  taxgame::mcs::Profile best_profile;
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) profile[i] = options[i][pick[i]];
    const double value = eval(profile);
    if (value > best) {
      best = value;
      best_profile = profile;
    }
    std::size_t i = n;
    bool done = true;
    while (i-- > 0) {
      if (++pick[i] < options[i].size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done) return {best_profile, best};
  }
}

// Integer-grid feasibility oracle: searches execution time vectors on
// the integer grid, directly checking the window and temporal-logic
// inequalities. Exact for the colinear integer instances above.
inline bool grid_feasible(const taxgame::mcs::Scenario& scenario,
                          const taxgame::mcs::User& user,
                          const taxgame::mcs::OrderedSelection& selection, int horizon) {
  double cost = 0.0;
  for (int id : selection) cost += user.available.at(id).exec_cost;
  if (cost > user.resource_budget) return false;

  // DFS over integer start times for each task in order.
  const auto dfs = [&](auto&& self, std::size_t depth, double earliest) -> bool {
    if (depth == selection.size()) return true;
    const taxgame::mcs::Task& task = scenario.task(selection[depth]);
    const double exec_time = user.available.at(selection[depth]).exec_time;
    const taxgame::mcs::Point2D from =
        depth == 0 ? user.initial_location : scenario.task(selection[depth - 1]).location;
    const double travel = taxgame::mcs::distance(from, task.location) / user.speed;
    for (int t = 0; t <= horizon; ++t) {
      if (t < task.window_open || t > task.window_close) continue;
      if (t < earliest + travel - 1e-9) continue;
      if (self(self, depth + 1, t + exec_time)) return true;
    }
    return false;
  };
  return dfs(dfs, 0, 0.0);
}

}  // namespace testsupport
