#include <doctest.h>

#include <array>
#include <set>
#include <stdexcept>

#include "support.hpp"
#include "taxgame/normal_form.hpp"

using namespace taxgame;
using testsupport::Rng;

namespace {

// Profiles as sets for order-insensitive comparison.
std::set<std::vector<int>> as_set(const ProfileSet& ps) {
  return {ps.profiles.begin(), ps.profiles.end()};
}

}  // namespace

TEST_CASE("prisoner's dilemma fixture") {
  const FiniteGame pd = prisoners_dilemma();
  CHECK(pd.payoff(std::array{0, 1}, 1) == 3.0);  // (C,D), player 2
  CHECK(pd.welfare(std::array{0, 0}) == 4.0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CHECK(pd.payoff(std::array{a, b}, 0) == pd.payoff(std::array{b, a}, 1));
    }
  }
}

TEST_CASE("pure NE enumeration") {
  SUBCASE("prisoner's dilemma: mutual defection only") {
    const ProfileSet ne = pure_nash(prisoners_dilemma());
    REQUIRE(ne.profiles.size() == 1);
    CHECK(ne.profiles[0] == std::vector<int>{1, 1});
    CHECK(ne.welfare[0] == 2.0);
  }
  SUBCASE("taxed prisoner's dilemma: mutual cooperation only") {
    const FiniteGame taxed =
        apply_taxation(prisoners_dilemma(), TaxingRule::flat(2, 0.5), BudgetPlan{1.0});
    const ProfileSet ne = pure_nash(taxed);
    REQUIRE(ne.profiles.size() == 1);
    CHECK(ne.profiles[0] == std::vector<int>{0, 0});
    CHECK(taxed.payoff(std::array{0, 0}, 0) == 2.0);
  }
  SUBCASE("single-profile game is its own equilibrium") {
    FiniteGame game;
    game.n_players = 2;
    game.strategy_counts = {1, 1};
    game.payoffs = {3.0, -1.0};
    const ProfileSet ne = pure_nash(game);
    REQUIRE(ne.profiles.size() == 1);
    CHECK(ne.profiles[0] == std::vector<int>{0, 0});
  }
  SUBCASE("matching pennies has no pure NE") {
    FiniteGame game;
    game.n_players = 2;
    game.strategy_counts = {2, 2};
    game.payoffs = {1, -1, -1, 1, -1, 1, 1, -1};
    CHECK(pure_nash(game).empty());
  }
}

TEST_CASE("social optima enumeration") {
  SUBCASE("prisoner's dilemma: cooperation, welfare 4") {
    const ProfileSet se = social_optima(prisoners_dilemma());
    REQUIRE(se.profiles.size() == 1);
    CHECK(se.profiles[0] == std::vector<int>{0, 0});
    CHECK(se.welfare[0] == 4.0);
  }
  SUBCASE("constant game: every profile is optimal") {
    FiniteGame game;
    game.n_players = 2;
    game.strategy_counts = {2, 3};
    game.payoffs.assign(game.num_profiles() * 2, 1.0);
    CHECK(social_optima(game).profiles.size() == 6);
  }
  SUBCASE("random 2x2 games match a direct scan") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      FiniteGame game = testsupport::random_game(rng, 2, 2);
      game.strategy_counts = {2, 2};
      game.payoffs.resize(8);
      for (double& u : game.payoffs) u = testsupport::uniform(rng);

      double best = -1e300;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const std::array profile{a, b};
          best = std::max(best, game.payoff(profile, 0) + game.payoff(profile, 1));
        }
      }
      const ProfileSet se = social_optima(game);
      for (double w : se.welfare) CHECK(w == doctest::Approx(best).epsilon(1e-12));
      CHECK(!se.empty());
    }
  }
}

TEST_CASE("profile enumeration cap") {
  const FiniteGame pd = prisoners_dilemma();
  CHECK_THROWS_AS(pure_nash(pd, 1e-9, 3), std::length_error);
  CHECK_THROWS_AS(social_optima(pd, 1e-9, 3), std::length_error);
}

TEST_CASE("taxation transform preserves strategy sets and rewrites payoffs") {
  SUBCASE("zero rates are the identity") {
    Rng rng(29);
    const FiniteGame game = testsupport::random_game(rng);
    const FiniteGame taxed =
        apply_taxation(game, TaxingRule::flat(game.n_players, 0.0), BudgetPlan{1.0});
    CHECK(taxed.payoffs == game.payoffs);
    CHECK(taxed.strategy_counts == game.strategy_counts);
  }
  SUBCASE("unequal exemptions: the worked diagonal cells") {
    const TaxingRule rule{{0.0, 1.0}, {0.5, 0.5}};
    const FiniteGame taxed = apply_taxation(prisoners_dilemma(), rule, BudgetPlan{1.0});
    CHECK(taxed.payoff(std::array{0, 0}, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(taxed.payoff(std::array{0, 0}, 1) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(taxed.payoff(std::array{1, 1}, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(taxed.payoff(std::array{1, 1}, 1) == doctest::Approx(1.5).epsilon(1e-12));
    const ProfileSet ne = pure_nash(taxed);
    REQUIRE(ne.profiles.size() == 1);
    CHECK(ne.profiles[0] == std::vector<int>{0, 0});
  }
  SUBCASE("player count mismatch throws") {
    CHECK_THROWS_AS(apply_taxation(prisoners_dilemma(), TaxingRule::flat(3, 0.5),
                                   BudgetPlan{1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("efficient rate: social optima become equilibria on random games") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const FiniteGame game = testsupport::random_game(rng);
    const BudgetPlan plan{1.0};
    const double rate = efficient_flat_rate(game.n_players, plan);
    const FiniteGame taxed =
        apply_taxation(game, TaxingRule::flat(game.n_players, rate), plan);

    const ProfileSet se = social_optima(game);
    const ProfileSet ne = pure_nash(taxed);
    CHECK(!ne.empty());
    for (const auto& profile : se.profiles) {
      CHECK(ne.contains(profile));
    }
  }
}

TEST_CASE("flat rates below one preserve the welfare-maximizing set") {
  Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const FiniteGame game = testsupport::random_game(rng);
    const double rate = testsupport::uniform(rng, 0.0, 0.999);
    const BudgetPlan plan{testsupport::uniform(rng, 0.1, 2.0)};
    const FiniteGame taxed =
        apply_taxation(game, TaxingRule::flat(game.n_players, rate), plan);
    CHECK(as_set(social_optima(game)) == as_set(social_optima(taxed)));
  }
}

TEST_CASE("efficient rate aligns every player's argmax with welfare's argmax") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteGame game = testsupport::random_game(rng);
    const BudgetPlan plan{testsupport::uniform(rng, 0.2, 2.0)};
    const double rate = efficient_flat_rate(game.n_players, plan);
    TaxingRule rule = TaxingRule::flat(game.n_players, rate);
    for (double& e : rule.exemptions) e = testsupport::uniform(rng, -1.0, 1.0);
    const FiniteGame taxed = apply_taxation(game, rule, plan);

    // For every player and every fixed opponent profile, compare the set
    // of own strategies maximizing the taxed payoff with the set
    // maximizing welfare.
    std::vector<int> profile(game.n_players, 0);
    const auto argmax_set = [&](auto&& value, std::size_t player) {
      std::set<int> best_set;
      double best = -1e300;
      std::vector<int> scan = profile;
      for (int s = 0; s < game.strategy_counts[player]; ++s) {
        scan[player] = s;
        const double v = value(scan);
        if (v > best + 1e-9) {
          best = v;
          best_set = {s};
        } else if (v >= best - 1e-9) {
          best_set.insert(s);
        }
      }
      return best_set;
    };
    for (;;) {
      for (std::size_t player = 0; player < game.n_players; ++player) {
        const auto by_taxed = argmax_set(
            [&](const std::vector<int>& p) { return taxed.payoff(p, player); }, player);
        const auto by_welfare = argmax_set(
            [&](const std::vector<int>& p) { return game.welfare(p); }, player);
        CHECK(by_taxed == by_welfare);
      }
      std::size_t i = game.n_players;
      bool done = true;
      while (i-- > 0) {
        if (++profile[i] < game.strategy_counts[i]) {
          done = false;
          break;
        }
        profile[i] = 0;
      }
      if (done) break;
    }
  }
}

TEST_CASE("non-efficient flat rates admit games whose equilibria are all inefficient") {
  // For each rate off the efficient value (0.5 at N=2, beta=1) a searched
  // 2x2 counterexample must exist whose taxed game has no NE at a social
  // optimum.
  const BudgetPlan plan{1.0};
  for (const double rate : {0.0, 0.25, 0.75, 1.0}) {
    Rng rng(1000 + static_cast<std::uint64_t>(rate * 100));
    bool found = false;
    for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
      FiniteGame game;
      game.n_players = 2;
      game.strategy_counts = {2, 2};
      game.payoffs.resize(8);
      for (double& u : game.payoffs) u = testsupport::uniform(rng);
      const FiniteGame taxed = apply_taxation(game, TaxingRule::flat(2, rate), plan);
      const ProfileSet ne = pure_nash(taxed);
      const ProfileSet se = social_optima(game);
      bool any_efficient_ne = false;
      for (const auto& profile : ne.profiles) {
        if (se.contains(profile)) any_efficient_ne = true;
      }
      if (!any_efficient_ne) found = true;
    }
    CHECK_MESSAGE(found, "no counterexample found for rate ", rate);
  }
}
