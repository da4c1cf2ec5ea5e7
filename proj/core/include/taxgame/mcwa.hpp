#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

// Channel selection game: users split a power budget across their
// available channels, payoffs are Shannon capacities under mutual
// interference. Best responses water-fill; the social optimum needs a
// non-convex search.

namespace taxgame::mcwa {

struct ChannelSpec {
  int id = 0;
  double bandwidth = 1.0;  // B_k
  double noise = 1.0;      // sigma_k, must be > 0
};

struct User {
  double power_budget = 1.0;
  std::set<int> available;  // channel ids
};

struct Scenario {
  std::vector<User> users;
  std::vector<ChannelSpec> channels;
  // Dense gain tensor, gains[(receiver * N + transmitter) * K + channel]:
  // the gain of `channel` between `transmitter` and `receiver`'s base
  // station. Diagonal entries are the transmission gains.
  std::vector<double> gains;
  double log_base = 2.0;

  std::size_t num_users() const { return users.size(); }
  std::size_t num_channels() const { return channels.size(); }
  std::size_t channel_index(int channel_id) const;
  double gain(std::size_t receiver, std::size_t transmitter, std::size_t channel) const {
    return gains[(receiver * users.size() + transmitter) * channels.size() + channel];
  }
  bool channel_available(std::size_t user, std::size_t channel) const {
    return users[user].available.count(channels[channel].id) != 0;
  }

  void validate() const;
};

// Nonnegative power per (user, channel); channels a user cannot operate
// on stay at zero. The implied channel selection is the positive-power
// support.
struct PowerAllocation {
  std::vector<std::vector<double>> p;

  static PowerAllocation zeros(const Scenario& scenario);
  std::vector<int> selection(const Scenario& scenario, std::size_t user,
                             double threshold = 1e-12) const;
  double spend(std::size_t user) const;
  void validate(const Scenario& scenario, double tol = 1e-6) const;
};

// I_i(k) = sigma_k + sum_{j != i} g_ij(k) p_j(k) for every channel.
std::vector<double> interference(const Scenario& scenario, const PowerAllocation& alloc,
                                 std::size_t user);

// Total Shannon capacity of one user across its channels.
double user_capacity(const Scenario& scenario, const PowerAllocation& alloc,
                     std::size_t user);

// Sum of all users' capacities.
double social_welfare(const Scenario& scenario, const PowerAllocation& alloc);

// d u_i / d p_i(k) at the given allocation, zero on unavailable channels.
std::vector<double> capacity_gradient(const Scenario& scenario, const PowerAllocation& alloc,
                                      std::size_t user);

struct WaterFillResult {
  std::vector<double> powers;  // per channel, zero off the available set
  double lambda = 0.0;         // budget multiplier; B_k/lambda is the water level
};

// Best response to a fixed interference profile: p(k) = [B_k/lambda -
// I(k)/g_ii(k)]^+ with lambda bisected until the budget is exactly
// spent. An empty available set yields the all-zero row.
WaterFillResult water_fill(const Scenario& scenario, std::size_t user,
                           std::span<const double> interference_per_channel);

struct IwfConfig {
  int max_rounds = 1000;
  double tolerance = 1e-8;
  double damping = 0.0;  // 0 = plain Gauss-Seidel updates
};

struct IwfResult {
  PowerAllocation alloc;
  bool converged = false;
  int rounds = 0;
  double residual = 0.0;  // max power change in the last round
};

// Round-robin water-filling from each user's solo (noise-only) filling.
// Non-convergence is a reported outcome, not an error: the game need not
// have an NE at all.
IwfResult iterative_water_filling(const Scenario& scenario, const IwfConfig& config = {});

struct OptimizerConfig {
  int restarts = 32;
  std::uint64_t seed = 0x5eed5eedULL;
  int max_iterations = 400;
  double initial_step = 1.0;
  double tolerance = 1e-9;
};

struct WelfareOptimum {
  PowerAllocation alloc;
  double welfare = 0.0;
};

// Projected gradient ascent on welfare over the per-user budget
// simplices, multistarted from random feasible points, the iterative
// water-filling point and the single-user solo corners; single-channel
// scenarios also scan the on/off corner set. Best local optimum found;
// the objective is non-concave, so no global claim outside the scanned
// cases.
WelfareOptimum social_optimum(const Scenario& scenario, const OptimizerConfig& config = {});

struct TaxedEquilibrium {
  PowerAllocation alloc;
  double welfare = 0.0;
  std::vector<double> taxed_payoffs;  // welfare / N each
};

// Under the rule (rate (N-1)/N, zero exemptions, beta = 1) every user's
// taxed payoff is W/N, so the welfare maximizer is an equilibrium.
TaxedEquilibrium taxed_equilibrium(const Scenario& scenario, const OptimizerConfig& config = {});

}  // namespace taxgame::mcwa
