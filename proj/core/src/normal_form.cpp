#include "taxgame/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace taxgame {

namespace {

// Advances a mixed-radix counter in lexicographic order.
bool next_profile(std::vector<int>& profile, const std::vector<int>& counts) {
  for (std::size_t i = profile.size(); i-- > 0;) {
    if (++profile[i] < counts[i]) return true;
    profile[i] = 0;
  }
  return false;
}

void check_cap(const FiniteGame& game, std::size_t cap) {
  if (game.num_profiles() > cap) {
    throw std::length_error("profile enumeration over " + std::to_string(game.num_profiles()) +
                            " profiles exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

std::size_t FiniteGame::num_profiles() const {
  std::size_t total = 1;
  for (int c : strategy_counts) total *= static_cast<std::size_t>(c);
  return total;
}

std::size_t FiniteGame::flat_index(std::span<const int> profile) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_players; ++i) {
    idx = idx * static_cast<std::size_t>(strategy_counts[i]) + static_cast<std::size_t>(profile[i]);
  }
  return idx;
}

double FiniteGame::payoff(std::span<const int> profile, std::size_t player) const {
  return payoff_at(flat_index(profile), player);
}

double FiniteGame::payoff_at(std::size_t flat_profile, std::size_t player) const {
  return payoffs[flat_profile * n_players + player];
}

double FiniteGame::welfare(std::span<const int> profile) const {
  return welfare_at(flat_index(profile));
}

double FiniteGame::welfare_at(std::size_t flat_profile) const {
  double w = 0.0;
  for (std::size_t i = 0; i < n_players; ++i) w += payoff_at(flat_profile, i);
  return w;
}

void FiniteGame::validate() const {
  if (n_players < 2) {
    throw std::invalid_argument("finite game: at least 2 players required");
  }
  if (strategy_counts.size() != n_players) {
    throw std::invalid_argument("finite game: one strategy count per player required");
  }
  for (int c : strategy_counts) {
    if (c < 1) throw std::invalid_argument("finite game: strategy counts must be >= 1");
  }
  if (payoffs.size() != num_profiles() * n_players) {
    throw std::invalid_argument("finite game: payoff tensor has " +
                                std::to_string(payoffs.size()) + " entries, expected " +
                                std::to_string(num_profiles() * n_players));
  }
  for (double u : payoffs) {
    if (!std::isfinite(u)) throw std::invalid_argument("finite game: payoffs must be finite");
  }
}

bool ProfileSet::contains(std::span<const int> profile) const {
  return std::any_of(profiles.begin(), profiles.end(), [&](const std::vector<int>& p) {
    return std::equal(p.begin(), p.end(), profile.begin(), profile.end());
  });
}

ProfileSet pure_nash(const FiniteGame& game, double tol, std::size_t profile_cap) {
  game.validate();
  check_cap(game, profile_cap);
  ProfileSet result;
  std::vector<int> profile(game.n_players, 0);
  do {
    bool is_ne = true;
    std::vector<int> deviated = profile;
    for (std::size_t i = 0; i < game.n_players && is_ne; ++i) {
      const double here = game.payoff(profile, i);
      for (int alt = 0; alt < game.strategy_counts[i]; ++alt) {
        if (alt == profile[i]) continue;
        deviated[i] = alt;
        if (game.payoff(deviated, i) > here + tol) {
          is_ne = false;
          break;
        }
      }
      deviated[i] = profile[i];
    }
    if (is_ne) {
      result.profiles.push_back(profile);
      result.welfare.push_back(game.welfare(profile));
    }
  } while (next_profile(profile, game.strategy_counts));
  return result;
}

ProfileSet social_optima(const FiniteGame& game, double tol, std::size_t profile_cap) {
  game.validate();
  check_cap(game, profile_cap);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < game.num_profiles(); ++f) {
    best = std::max(best, game.welfare_at(f));
  }
  ProfileSet result;
  std::vector<int> profile(game.n_players, 0);
  do {
    const double w = game.welfare(profile);
    if (w >= best - tol) {
      result.profiles.push_back(profile);
      result.welfare.push_back(w);
    }
  } while (next_profile(profile, game.strategy_counts));
  return result;
}

FiniteGame prisoners_dilemma() {
  FiniteGame g;
  g.n_players = 2;
  g.strategy_counts = {2, 2};
  g.payoffs = {2, 2,   // (C,C)
               0, 3,   // (C,D)
               3, 0,   // (D,C)
               1, 1};  // (D,D)
  return g;
}

FiniteGame apply_taxation(const FiniteGame& game, const TaxingRule& rule,
                          const BudgetPlan& plan) {
  game.validate();
  rule.validate();
  if (rule.num_players() != game.n_players) {
    throw std::invalid_argument("taxing rule covers " + std::to_string(rule.num_players()) +
                                " players but game has " + std::to_string(game.n_players));
  }
  FiniteGame taxed = game;
  PayoffVector u(game.n_players);
  for (std::size_t f = 0; f < game.num_profiles(); ++f) {
    for (std::size_t i = 0; i < game.n_players; ++i) u[i] = game.payoff_at(f, i);
    const TaxBreakdown breakdown = taxed_payoffs(u, rule, plan);
    for (std::size_t i = 0; i < game.n_players; ++i) {
      taxed.payoffs[f * game.n_players + i] = breakdown.taxed_payoffs[i];
    }
  }
  return taxed;
}

}  // namespace taxgame
