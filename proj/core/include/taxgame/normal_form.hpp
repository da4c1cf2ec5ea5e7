#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taxgame/mechanism.hpp"

// Finite normal-form games with exhaustive pure-strategy equilibrium and
// social-optimum enumeration.

namespace taxgame {

// Payoff tensor layout: profiles are enumerated in lexicographic order
// with player 0's strategy as the most significant digit; payoffs stores
// one payoff per (profile, player), player index varying fastest.
struct FiniteGame {
  std::size_t n_players = 0;
  std::vector<int> strategy_counts;
  std::vector<double> payoffs;

  std::size_t num_profiles() const;
  std::size_t flat_index(std::span<const int> profile) const;
  double payoff(std::span<const int> profile, std::size_t player) const;
  double payoff_at(std::size_t flat_profile, std::size_t player) const;
  double welfare(std::span<const int> profile) const;
  double welfare_at(std::size_t flat_profile) const;

  void validate() const;
};

// Enumerated profiles in lexicographic order plus their welfare.
struct ProfileSet {
  std::vector<std::vector<int>> profiles;
  std::vector<double> welfare;

  bool contains(std::span<const int> profile) const;
  bool empty() const { return profiles.empty(); }
};

// Exhaustive enumeration guard: scans beyond this many profiles throw.
inline constexpr std::size_t kDefaultProfileCap = 1'000'000;

// All profiles where no player gains more than `tol` by a unilateral
// deviation (weak best response). May be empty.
ProfileSet pure_nash(const FiniteGame& game, double tol = 1e-9,
                     std::size_t profile_cap = kDefaultProfileCap);

// All profiles attaining the maximum welfare within `tol`.
ProfileSet social_optima(const FiniteGame& game, double tol = 1e-9,
                         std::size_t profile_cap = kDefaultProfileCap);

// The 2x2 game with payoffs (C,C)=(2,2), (C,D)=(0,3), (D,C)=(3,0),
// (D,D)=(1,1); strategy 0 is Cooperate, 1 is Defect.
FiniteGame prisoners_dilemma();

// Same strategy sets, payoffs replaced by the post-tax payoffs at every
// profile.
FiniteGame apply_taxation(const FiniteGame& game, const TaxingRule& rule,
                          const BudgetPlan& plan);

}  // namespace taxgame
