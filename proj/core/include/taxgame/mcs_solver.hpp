#pragma once

#include <cstddef>
#include <vector>

#include "taxgame/mcs.hpp"

// Equilibrium and optimum computation for the task selection game: exact
// best response over ordered task subsets via branch-and-bound,
// round-robin best-response dynamics (convergent, the game is an exact
// potential game), and exhaustive joint enumeration for small instances.

namespace taxgame::mcs {

enum class Objective { own_payoff, social_welfare };
enum class SolveMethod { best_response_dynamics, exhaustive };
enum class SolveMode {
  automatic,       // dynamics, exhaustive fallback if the round cap is hit
  dynamics_only,   // dynamics, converged=false on round cap
  exhaustive,      // joint enumeration, exact global optimum
};

struct SolverConfig {
  int max_subset_size = 10;       // branch-and-bound depth cap per user
  int max_br_rounds = 100;
  double tolerance = 1e-9;
  std::size_t brute_force_cap = 1'000'000;  // max joint profiles for exhaustive
  SolveMode mode = SolveMode::automatic;
  // Skip the order/permutation search. Only valid when order is
  // irrelevant: zero travel cost rates and task windows that never bind.
  bool unordered = false;
};

struct EquilibriumReport {
  Profile profile;
  std::vector<double> payoffs;
  double welfare = 0.0;
  double potential = 0.0;
  bool converged = false;
  int rounds = 0;
  SolveMethod method = SolveMethod::best_response_dynamics;
  // Number of tied maximizers seen under exhaustive enumeration; 1 when
  // the reported profile was the unique maximizer, 0 for dynamics.
  int optima_count = 0;
};

// Feasible selection maximizing the objective for `user_index`, holding
// everyone else's selection in `profile` fixed. Exact over all feasible
// ordered subsets of the user's available tasks; ties break to the
// lexicographically smallest task-id sequence. Throws std::length_error
// when the user's available set exceeds max_subset_size (ordered mode).
OrderedSelection best_response(const Scenario& scenario, const Profile& profile,
                               std::size_t user_index, Objective objective,
                               const SolverConfig& config = {});

// Objective value of `selection` for `user_index` against the fixed
// others; for social_welfare only the terms that depend on the user's
// own selection are included (constant offset dropped).
double objective_value(const Scenario& scenario, const Profile& profile,
                       std::size_t user_index, const OrderedSelection& selection,
                       Objective objective);

// All feasible ordered selections of one user, lexicographically sorted.
// Respects config.unordered (ascending-id subsets only).
std::vector<OrderedSelection> enumerate_selections(const Scenario& scenario,
                                                   std::size_t user_index,
                                                   const SolverConfig& config = {});

// Best-response dynamics on own payoffs from the all-empty profile.
EquilibriumReport nash_equilibrium(const Scenario& scenario, const SolverConfig& config = {});

// Welfare maximization: best-response dynamics where every step
// maximizes welfare over one user's selection (the taxed game's best
// response, since the taxed payoff is W/N), or exhaustive enumeration.
EquilibriumReport social_optimum(const Scenario& scenario, const SolverConfig& config = {});

}  // namespace taxgame::mcs
