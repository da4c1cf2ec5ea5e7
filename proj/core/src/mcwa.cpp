#include "taxgame/mcwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace taxgame::mcwa {

std::size_t Scenario::channel_index(int channel_id) const {
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].id == channel_id) return k;
  }
  throw std::out_of_range("unknown channel id " + std::to_string(channel_id));
}

void Scenario::validate() const {
  if (users.size() < 2) {
    throw std::invalid_argument("mcwa scenario: at least 2 users required");
  }
  if (channels.empty()) {
    throw std::invalid_argument("mcwa scenario: at least 1 channel required");
  }
  if (!(log_base > 1.0)) {
    throw std::invalid_argument("mcwa scenario: log_base must be > 1");
  }
  std::set<int> channel_ids;
  for (const ChannelSpec& ch : channels) {
    if (!channel_ids.insert(ch.id).second) {
      throw std::invalid_argument("duplicate channel id " + std::to_string(ch.id));
    }
    if (ch.bandwidth <= 0.0) {
      throw std::invalid_argument("channel " + std::to_string(ch.id) +
                                  ": bandwidth must be > 0");
    }
    if (ch.noise <= 0.0) {
      throw std::invalid_argument("channel " + std::to_string(ch.id) +
                                  ": noise power must be > 0");
    }
  }
  if (gains.size() != users.size() * users.size() * channels.size()) {
    throw std::invalid_argument("gain tensor has " + std::to_string(gains.size()) +
                                " entries, expected " +
                                std::to_string(users.size() * users.size() * channels.size()));
  }
  for (double g : gains) {
    if (!std::isfinite(g) || g < 0.0) {
      throw std::invalid_argument("channel gains must be finite and >= 0");
    }
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i].power_budget <= 0.0) {
      throw std::invalid_argument("user " + std::to_string(i) + ": power budget must be > 0");
    }
    for (int id : users[i].available) {
      const std::size_t k = channel_index(id);  // throws on unknown ids
      if (gain(i, i, k) <= 0.0) {
        throw std::invalid_argument("user " + std::to_string(i) +
                                    ": transmission gain must be > 0 on available channel " +
                                    std::to_string(id));
      }
    }
  }
}

PowerAllocation PowerAllocation::zeros(const Scenario& scenario) {
  PowerAllocation alloc;
  alloc.p.assign(scenario.num_users(), std::vector<double>(scenario.num_channels(), 0.0));
  return alloc;
}

std::vector<int> PowerAllocation::selection(const Scenario& scenario, std::size_t user,
                                            double threshold) const {
  std::vector<int> channels;
  for (std::size_t k = 0; k < scenario.num_channels(); ++k) {
    if (p[user][k] > threshold) channels.push_back(scenario.channels[k].id);
  }
  return channels;
}

double PowerAllocation::spend(std::size_t user) const {
  double total = 0.0;
  for (double x : p[user]) total += x;
  return total;
}

void PowerAllocation::validate(const Scenario& scenario, double tol) const {
  if (p.size() != scenario.num_users()) {
    throw std::invalid_argument("allocation covers wrong number of users");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].size() != scenario.num_channels()) {
      throw std::invalid_argument("allocation row has wrong number of channels");
    }
    for (std::size_t k = 0; k < p[i].size(); ++k) {
      if (p[i][k] < 0.0 || !std::isfinite(p[i][k])) {
        throw std::invalid_argument("powers must be finite and >= 0");
      }
      if (p[i][k] > 0.0 && !scenario.channel_available(i, k)) {
        throw std::invalid_argument("user " + std::to_string(i) +
                                    " allocates power to unavailable channel index " +
                                    std::to_string(k));
      }
    }
    if (spend(i) > scenario.users[i].power_budget + tol) {
      throw std::invalid_argument("user " + std::to_string(i) + " exceeds power budget");
    }
  }
}

std::vector<double> interference(const Scenario& scenario, const PowerAllocation& alloc,
                                 std::size_t user) {
  const std::size_t n = scenario.num_users();
  const std::size_t kk = scenario.num_channels();
  std::vector<double> out(kk);
  for (std::size_t k = 0; k < kk; ++k) {
    double level = scenario.channels[k].noise;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != user) level += scenario.gain(user, j, k) * alloc.p[j][k];
    }
    out[k] = level;
  }
  return out;
}

double user_capacity(const Scenario& scenario, const PowerAllocation& alloc,
                     std::size_t user) {
  const std::vector<double> noise = interference(scenario, alloc, user);
  const double ln_base = std::log(scenario.log_base);
  double total = 0.0;
  for (std::size_t k = 0; k < scenario.num_channels(); ++k) {
    const double p = alloc.p[user][k];
    if (p <= 0.0) continue;
    const double snr = scenario.gain(user, user, k) * p / noise[k];
    total += scenario.channels[k].bandwidth * std::log1p(snr) / ln_base;
  }
  return total;
}

double social_welfare(const Scenario& scenario, const PowerAllocation& alloc) {
  double total = 0.0;
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    total += user_capacity(scenario, alloc, i);
  }
  return total;
}

std::vector<double> capacity_gradient(const Scenario& scenario, const PowerAllocation& alloc,
                                      std::size_t user) {
  const std::vector<double> noise = interference(scenario, alloc, user);
  const double ln_base = std::log(scenario.log_base);
  std::vector<double> grad(scenario.num_channels(), 0.0);
  for (std::size_t k = 0; k < scenario.num_channels(); ++k) {
    if (!scenario.channel_available(user, k)) continue;
    const double g = scenario.gain(user, user, k);
    grad[k] = scenario.channels[k].bandwidth * g /
              ((noise[k] + g * alloc.p[user][k]) * ln_base);
  }
  return grad;
}

WaterFillResult water_fill(const Scenario& scenario, std::size_t user,
                           std::span<const double> interference_per_channel) {
  const User& u = scenario.users[user];
  WaterFillResult result;
  result.powers.assign(scenario.num_channels(), 0.0);
  result.lambda = std::numeric_limits<double>::infinity();
  if (u.available.empty()) return result;

  struct Entry {
    std::size_t k;
    double bandwidth;
    double floor;  // I(k)/g_ii(k)
  };
  std::vector<Entry> entries;
  entries.reserve(u.available.size());
  for (int id : u.available) {
    const std::size_t k = scenario.channel_index(id);
    const double level = interference_per_channel[k];
    if (!(level > 0.0)) {
      throw std::invalid_argument("water filling needs positive interference-plus-noise");
    }
    entries.push_back({k, scenario.channels[k].bandwidth, level / scenario.gain(user, user, k)});
  }

  const double budget = u.power_budget;
  const auto spend_at = [&](double lambda) {
    double total = 0.0;
    for (const Entry& e : entries) total += std::max(e.bandwidth / lambda - e.floor, 0.0);
    return total;
  };

  // spend(lambda) decreases from +inf to 0; bracket the budget crossing.
  double bandwidth_sum = 0.0, floor_sum = 0.0, hi = 0.0;
  for (const Entry& e : entries) {
    bandwidth_sum += e.bandwidth;
    floor_sum += e.floor;
    hi = std::max(hi, e.bandwidth / e.floor);
  }
  double lo = bandwidth_sum / (budget + floor_sum);
  while (spend_at(lo) < budget) lo *= 0.5;

  constexpr double kSpendTol = 1e-10;
  double lambda = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    lambda = 0.5 * (lo + hi);
    const double spend = spend_at(lambda);
    if (std::abs(spend - budget) <= kSpendTol) break;
    if (spend > budget) {
      lo = lambda;
    } else {
      hi = lambda;
    }
  }
  result.lambda = lambda;
  for (const Entry& e : entries) {
    result.powers[e.k] = std::max(e.bandwidth / lambda - e.floor, 0.0);
  }
  return result;
}

IwfResult iterative_water_filling(const Scenario& scenario, const IwfConfig& config) {
  scenario.validate();
  IwfResult result;
  result.alloc = PowerAllocation::zeros(scenario);
  // Solo warm start: each user fills against noise alone.
  const PowerAllocation empty = PowerAllocation::zeros(scenario);
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    result.alloc.p[i] = water_fill(scenario, i, interference(scenario, empty, i)).powers;
  }
  for (int round = 1; round <= config.max_rounds; ++round) {
    double max_delta = 0.0;
    for (std::size_t i = 0; i < scenario.num_users(); ++i) {
      const std::vector<double> level = interference(scenario, result.alloc, i);
      std::vector<double> updated = water_fill(scenario, i, level).powers;
      if (config.damping > 0.0) {
        for (std::size_t k = 0; k < updated.size(); ++k) {
          updated[k] = (1.0 - config.damping) * updated[k] +
                       config.damping * result.alloc.p[i][k];
        }
      }
      for (std::size_t k = 0; k < updated.size(); ++k) {
        max_delta = std::max(max_delta, std::abs(updated[k] - result.alloc.p[i][k]));
      }
      result.alloc.p[i] = std::move(updated);
    }
    result.rounds = round;
    result.residual = max_delta;
    if (max_delta < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

namespace {

// Euclidean projection of v onto {p >= 0, sum p <= budget}.
std::vector<double> project_budget_simplex(std::vector<double> v, double budget) {
  double positive_sum = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    positive_sum += x;
  }
  if (positive_sum <= budget) return v;
  // Project onto the face {p >= 0, sum p = budget}.
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - budget) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

// d W / d p_i(k): own marginal rate plus the (negative) externality on
// every other user sharing the channel.
std::vector<std::vector<double>> welfare_gradient(const Scenario& scenario,
                                                  const PowerAllocation& alloc) {
  const std::size_t n = scenario.num_users();
  const std::size_t kk = scenario.num_channels();
  const double ln_base = std::log(scenario.log_base);
  std::vector<std::vector<double>> noise(n);
  for (std::size_t j = 0; j < n; ++j) noise[j] = interference(scenario, alloc, j);

  std::vector<std::vector<double>> grad(n, std::vector<double>(kk, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < kk; ++k) {
      if (!scenario.channel_available(i, k)) continue;
      const double b = scenario.channels[k].bandwidth;
      const double gii = scenario.gain(i, i, k);
      double d = b * gii / ((noise[i][k] + gii * alloc.p[i][k]) * ln_base);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double signal_j = scenario.gain(j, j, k) * alloc.p[j][k];
        if (signal_j <= 0.0) continue;
        const double cross = scenario.gain(j, i, k);
        d += b * cross / ln_base *
             (1.0 / (noise[j][k] + signal_j) - 1.0 / noise[j][k]);
      }
      grad[i][k] = d;
    }
  }
  return grad;
}

// Gradient ascent with backtracking from a feasible start.
WelfareOptimum ascend(const Scenario& scenario, PowerAllocation start,
                      const OptimizerConfig& config) {
  PowerAllocation current = std::move(start);
  double value = social_welfare(scenario, current);
  double step = config.initial_step;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const auto grad = welfare_gradient(scenario, current);
    bool moved = false;
    while (step > 1e-12) {
      PowerAllocation trial = current;
      for (std::size_t i = 0; i < scenario.num_users(); ++i) {
        for (std::size_t k = 0; k < scenario.num_channels(); ++k) {
          trial.p[i][k] += step * grad[i][k];
        }
        trial.p[i] = project_budget_simplex(std::move(trial.p[i]),
                                            scenario.users[i].power_budget);
      }
      const double trial_value = social_welfare(scenario, trial);
      if (trial_value > value + 1e-14) {
        current = std::move(trial);
        const double gain = trial_value - value;
        value = trial_value;
        moved = true;
        step *= 1.6;
        if (gain < config.tolerance) iter = config.max_iterations;  // converged
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(current), value};
}

void keep_best(WelfareOptimum& best, WelfareOptimum candidate) {
  if (candidate.welfare > best.welfare) best = std::move(candidate);
}

}  // namespace

WelfareOptimum social_optimum(const Scenario& scenario, const OptimizerConfig& config) {
  scenario.validate();
  const std::size_t n = scenario.num_users();
  const std::size_t kk = scenario.num_channels();

  WelfareOptimum best{PowerAllocation::zeros(scenario), 0.0};

  // Iterative water-filling point.
  keep_best(best, ascend(scenario, iterative_water_filling(scenario).alloc, config));

  // Solo corners: one user fills against noise, everyone else silent.
  const PowerAllocation silence = PowerAllocation::zeros(scenario);
  for (std::size_t i = 0; i < n; ++i) {
    PowerAllocation corner = PowerAllocation::zeros(scenario);
    corner.p[i] = water_fill(scenario, i, interference(scenario, silence, i)).powers;
    keep_best(best, ascend(scenario, std::move(corner), config));
  }

  // Single-channel scenarios: the optimum is conjectured on/off, scan the
  // corner set exactly (full budget or silence per user).
  if (kk == 1 && n <= 20) {
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      PowerAllocation corner = PowerAllocation::zeros(scenario);
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1ULL) {
          if (!scenario.channel_available(i, 0)) continue;
          corner.p[i][0] = scenario.users[i].power_budget;
        }
      }
      const double w = social_welfare(scenario, corner);
      if (w > best.welfare) best = {std::move(corner), w};
    }
  }

  // Random feasible restarts, fixed seed.
  std::mt19937_64 rng(config.seed);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int r = 0; r < config.restarts; ++r) {
    PowerAllocation start = PowerAllocation::zeros(scenario);
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t k = 0; k < kk; ++k) {
        if (!scenario.channel_available(i, k)) continue;
        start.p[i][k] = uniform();
        total += start.p[i][k];
      }
      if (total > 0.0) {
        const double scale = uniform() * scenario.users[i].power_budget / total;
        for (double& x : start.p[i]) x *= scale;
      }
    }
    keep_best(best, ascend(scenario, std::move(start), config));
  }
  return best;
}

TaxedEquilibrium taxed_equilibrium(const Scenario& scenario, const OptimizerConfig& config) {
  WelfareOptimum optimum = social_optimum(scenario, config);
  TaxedEquilibrium result;
  result.welfare = optimum.welfare;
  result.alloc = std::move(optimum.alloc);
  result.taxed_payoffs.assign(scenario.num_users(),
                              result.welfare / static_cast<double>(scenario.num_users()));
  return result;
}

}  // namespace taxgame::mcwa
