#include "taxgame/mcs_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace taxgame::mcs {

namespace {

// Coverage among all users except `user_index`.
std::vector<int> coverage_without(const Scenario& scenario, const Profile& profile,
                                  std::size_t user_index) {
  std::vector<int> counts = coverage_counts(scenario, profile);
  for (int task_id : profile[user_index]) counts[scenario.task_index(task_id)] -= 1;
  return counts;
}

struct TaskView {
  int id;
  std::size_t index;        // into scenario.tasks
  double reward_if_added;   // objective gain of the reward term
  double exec_time;
  double exec_cost;
  Point2D location;
  double window_open;
  double window_close;
};

// The user's available tasks with the per-objective reward of adding
// each one, given the others' coverage. Sorted by ascending task id.
std::vector<TaskView> task_views(const Scenario& scenario, std::size_t user_index,
                                 const std::vector<int>& others_coverage,
                                 Objective objective) {
  const User& user = scenario.users[user_index];
  std::vector<TaskView> views;
  views.reserve(user.available.size());
  for (const auto& [task_id, req] : user.available) {
    const std::size_t k = scenario.task_index(task_id);
    const Task& task = scenario.tasks[k];
    double gain;
    if (objective == Objective::own_payoff) {
      gain = task.reward / static_cast<double>(others_coverage[k] + 1);
    } else {
      gain = others_coverage[k] == 0 ? task.reward : 0.0;
    }
    views.push_back({task_id, k, gain, req.exec_time, req.exec_cost, task.location,
                     task.window_open, task.window_close});
  }
  // std::map iteration is already id-sorted; keep the sort explicit.
  std::sort(views.begin(), views.end(),
            [](const TaskView& a, const TaskView& b) { return a.id < b.id; });
  return views;
}

bool lex_less(const OrderedSelection& a, const OrderedSelection& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct SelectionValue {
  OrderedSelection selection;
  double value;
};

// Depth-first search over ordered task sequences. Every prefix is a
// candidate; extensions prune on window misses, budget overruns and an
// optimistic bound of full undivided rewards for the unused tasks.
class SequenceSearch {
 public:
  SequenceSearch(const Scenario& scenario, const User& user, std::vector<TaskView> tasks,
                 double tolerance)
      : scenario_(scenario), user_(user), tasks_(std::move(tasks)), tol_(tolerance) {
    used_.assign(tasks_.size(), false);
    remaining_gain_ = 0.0;
    for (const TaskView& t : tasks_) remaining_gain_ += std::max(t.reward_if_added, 0.0);
  }

  OrderedSelection run() {
    best_value_ = 0.0;  // empty selection
    best_.clear();
    dfs(user_.initial_location, 0.0, 0.0, 0.0);
    return best_;
  }

  // Enumerates all feasible sequences instead of optimizing.
  std::vector<OrderedSelection> enumerate() {
    all_.clear();
    enumerating_ = true;
    dfs(user_.initial_location, 0.0, 0.0, 0.0);
    return std::move(all_);
  }

 private:
  void consider_current(double value) {
    if (enumerating_) {
      all_.push_back(seq_);
      return;
    }
    if (value > best_value_ + tol_) {
      best_value_ = std::max(best_value_, value);
      best_ = seq_;
    } else if (value >= best_value_ - tol_ && lex_less(seq_, best_)) {
      best_value_ = std::max(best_value_, value);
      best_ = seq_;
    }
  }

  void dfs(Point2D at, double ready, double spent, double value) {
    consider_current(value);
    if (seq_.size() >= tasks_.size()) return;
    if (!enumerating_ && value + remaining_gain_ <= best_value_ + tol_ &&
        !may_tie_improve_lex()) {
      return;
    }
    for (std::size_t t = 0; t < tasks_.size(); ++t) {
      if (used_[t]) continue;
      const TaskView& task = tasks_[t];
      if (spent + task.exec_cost > user_.resource_budget) continue;
      const double dist = distance(at, task.location);
      const double start = std::max(ready + dist / user_.speed, task.window_open);
      if (start > task.window_close) continue;

      used_[t] = true;
      seq_.push_back(task.id);
      remaining_gain_ -= std::max(task.reward_if_added, 0.0);
      dfs(task.location, start + task.exec_time, spent + task.exec_cost,
          value + task.reward_if_added - task.exec_cost - dist * user_.travel_cost_rate);
      remaining_gain_ += std::max(task.reward_if_added, 0.0);
      seq_.pop_back();
      used_[t] = false;
    }
  }

  // When the bound only ties the incumbent, a lexicographically smaller
  // sequence may still be hiding below; keep descending if possible.
  bool may_tie_improve_lex() const {
    if (best_.empty()) return false;
    return seq_.empty() || lex_less(seq_, best_);
  }

  const Scenario& scenario_;
  const User& user_;
  std::vector<TaskView> tasks_;
  double tol_;

  std::vector<bool> used_;
  OrderedSelection seq_;
  double remaining_gain_ = 0.0;
  double best_value_ = 0.0;
  OrderedSelection best_;
  bool enumerating_ = false;
  std::vector<OrderedSelection> all_;
};

// Exact best response when order is irrelevant: the objective separates
// per task, so include a task exactly when its marginal gain is positive.
// Requires an unconstrained resource budget; with a finite budget the
// subset choice is a knapsack and goes through a subset DFS instead.
OrderedSelection unordered_greedy(const std::vector<TaskView>& tasks, double tolerance) {
  OrderedSelection selection;
  for (const TaskView& t : tasks) {
    if (t.reward_if_added - t.exec_cost > tolerance) selection.push_back(t.id);
  }
  return selection;
}

// Budget-constrained subset choice over ascending-id subsets.
class SubsetSearch {
 public:
  SubsetSearch(const User& user, std::vector<TaskView> tasks, double tolerance)
      : user_(user), tasks_(std::move(tasks)), tol_(tolerance) {}

  SelectionValue run() {
    suffix_gain_.assign(tasks_.size() + 1, 0.0);
    for (std::size_t t = tasks_.size(); t-- > 0;) {
      suffix_gain_[t] = suffix_gain_[t + 1] +
                        std::max(tasks_[t].reward_if_added - tasks_[t].exec_cost, 0.0);
    }
    best_value_ = 0.0;
    best_.clear();
    dfs(0, 0.0, 0.0);
    return {best_, best_value_};
  }

 private:
  void dfs(std::size_t from, double spent, double value) {
    if (value > best_value_ + tol_) {
      best_value_ = value;
      best_ = seq_;
    } else if (value >= best_value_ - tol_ && lex_less(seq_, best_)) {
      best_value_ = std::max(best_value_, value);
      best_ = seq_;
    }
    if (from >= tasks_.size()) return;
    if (value + suffix_gain_[from] <= best_value_ + tol_ && !lex_less(seq_, best_) &&
        !best_.empty()) {
      return;
    }
    for (std::size_t t = from; t < tasks_.size(); ++t) {
      if (spent + tasks_[t].exec_cost > user_.resource_budget) continue;
      seq_.push_back(tasks_[t].id);
      dfs(t + 1, spent + tasks_[t].exec_cost,
          value + tasks_[t].reward_if_added - tasks_[t].exec_cost);
      seq_.pop_back();
    }
  }

  const User& user_;
  std::vector<TaskView> tasks_;
  double tol_;
  std::vector<double> suffix_gain_;
  OrderedSelection seq_;
  double best_value_ = 0.0;
  OrderedSelection best_;
};

void check_unordered_applicable(const Scenario& scenario) {
  for (const User& user : scenario.users) {
    if (user.travel_cost_rate != 0.0) {
      throw std::invalid_argument("unordered mode requires zero travel cost rates");
    }
  }
  for (const Task& task : scenario.tasks) {
    if (task.window_open > 0.0 || std::isfinite(task.window_close)) {
      throw std::invalid_argument("unordered mode requires fully open task windows");
    }
  }
}

SelectionValue best_response_impl(const Scenario& scenario, const Profile& profile,
                                  std::size_t user_index, Objective objective,
                                  const SolverConfig& config) {
  const User& user = scenario.users[user_index];
  const std::vector<int> others = coverage_without(scenario, profile, user_index);
  std::vector<TaskView> views = task_views(scenario, user_index, others, objective);
  if (config.unordered) {
    check_unordered_applicable(scenario);
    if (std::isinf(user.resource_budget)) {
      OrderedSelection sel = unordered_greedy(views, config.tolerance);
      double value = 0.0;
      for (const TaskView& t : views) {
        if (std::find(sel.begin(), sel.end(), t.id) != sel.end()) {
          value += t.reward_if_added - t.exec_cost;
        }
      }
      return {std::move(sel), value};
    }
    return SubsetSearch(user, std::move(views), config.tolerance).run();
  }
  if (views.size() > static_cast<std::size_t>(config.max_subset_size)) {
    throw std::length_error("user " + std::to_string(user.id) + " has " +
                            std::to_string(views.size()) +
                            " available tasks, exceeding max_subset_size " +
                            std::to_string(config.max_subset_size));
  }
  SequenceSearch search(scenario, user, std::move(views), config.tolerance);
  OrderedSelection sel = search.run();
  const double value =
      objective_value(scenario, profile, user_index, sel, objective);
  return {std::move(sel), value};
}

struct ExhaustiveResult {
  Profile profile;
  double value;
  int optima_count;
};

// Enumerates the joint feasible profile space and maximizes `eval`.
// Profiles come out in lexicographic order, so the first maximum found
// is the canonical tie-broken one.
template <typename Eval>
ExhaustiveResult exhaustive_maximize(const Scenario& scenario, const SolverConfig& config,
                                     Eval&& eval) {
  const std::size_t n = scenario.num_users();
  std::vector<std::vector<OrderedSelection>> options(n);
  std::size_t joint = 1;
  for (std::size_t i = 0; i < n; ++i) {
    options[i] = enumerate_selections(scenario, i, config);
    if (joint > config.brute_force_cap / std::max<std::size_t>(options[i].size(), 1)) {
      throw std::length_error("joint feasible profile space exceeds brute_force_cap " +
                              std::to_string(config.brute_force_cap));
    }
    joint *= options[i].size();
  }
  std::vector<std::size_t> pick(n, 0);
  Profile profile(n);
  ExhaustiveResult best{{}, -std::numeric_limits<double>::infinity(), 0};
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) profile[i] = options[i][pick[i]];
    const double value = eval(profile);
    if (value > best.value + config.tolerance) {
      best.value = value;
      best.profile = profile;
      best.optima_count = 1;
    } else if (value >= best.value - config.tolerance) {
      best.optima_count += 1;
    }
    std::size_t i = n;
    while (i-- > 0) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
      if (i == 0) return best;
    }
  }
}

EquilibriumReport make_report(const Scenario& scenario, Profile profile, bool converged,
                              int rounds, SolveMethod method, int optima_count) {
  EquilibriumReport report;
  report.welfare = social_welfare(scenario, profile);
  report.potential = potential(scenario, profile);
  report.payoffs.resize(scenario.num_users());
  const std::vector<int> counts = coverage_counts(scenario, profile);
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    const User& user = scenario.users[i];
    double reward = 0.0;
    for (int task_id : profile[i]) {
      const std::size_t k = scenario.task_index(task_id);
      reward += scenario.tasks[k].reward / static_cast<double>(counts[k]);
    }
    report.payoffs[i] =
        reward - exec_cost(user, profile[i]) - travel_cost(user, scenario, profile[i]);
  }
  report.profile = std::move(profile);
  report.converged = converged;
  report.rounds = rounds;
  report.method = method;
  report.optima_count = optima_count;
  return report;
}

// Order-free scenarios with unconstrained budgets decompose per task:
// welfare is maximized by assigning each task to its cheapest user when
// that cost is below the reward. Welfare best-response dynamics cannot
// reach this in general (a cheaper user gains nothing by joining an
// already covered task), so this closed form is the exact route.
EquilibriumReport separable_social_optimum(const Scenario& scenario,
                                           const SolverConfig& config) {
  const std::size_t n = scenario.num_users();
  Profile profile(n);
  long long optima = 1;
  for (const Task& task : scenario.tasks) {
    std::size_t cheapest = n;
    double min_cost = std::numeric_limits<double>::infinity();
    int min_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto it = scenario.users[i].available.find(task.id);
      if (it == scenario.users[i].available.end()) continue;
      if (it->second.exec_cost < min_cost - config.tolerance) {
        min_cost = it->second.exec_cost;
        cheapest = i;
        min_count = 1;
      } else if (it->second.exec_cost <= min_cost + config.tolerance) {
        min_count += 1;
      }
    }
    if (cheapest == n) continue;
    if (task.reward - min_cost > config.tolerance) {
      profile[cheapest].push_back(task.id);
      optima = std::min<long long>(optima * min_count, 1'000'000'000);
    } else if (std::abs(task.reward - min_cost) <= config.tolerance) {
      // Covering is welfare-neutral; canonical tie-break leaves it out.
      optima = std::min<long long>(optima * (min_count + 1), 1'000'000'000);
    }
  }
  for (OrderedSelection& sel : profile) std::sort(sel.begin(), sel.end());
  return make_report(scenario, std::move(profile), true, 0, SolveMethod::exhaustive,
                     static_cast<int>(std::min<long long>(optima, 1'000'000'000)));
}

bool all_budgets_unbounded(const Scenario& scenario) {
  return std::all_of(scenario.users.begin(), scenario.users.end(),
                     [](const User& u) { return std::isinf(u.resource_budget); });
}

EquilibriumReport solve(const Scenario& scenario, const SolverConfig& config,
                        Objective objective) {
  scenario.validate();
  const std::size_t n = scenario.num_users();
  const auto joint_eval = [&](const Profile& p) {
    return objective == Objective::own_payoff ? potential(scenario, p)
                                              : social_welfare(scenario, p);
  };

  if (objective == Objective::social_welfare && config.unordered &&
      config.mode != SolveMode::exhaustive && all_budgets_unbounded(scenario)) {
    check_unordered_applicable(scenario);
    return separable_social_optimum(scenario, config);
  }

  if (config.mode == SolveMode::exhaustive) {
    ExhaustiveResult best = exhaustive_maximize(scenario, config, joint_eval);
    return make_report(scenario, std::move(best.profile), true, 0, SolveMethod::exhaustive,
                       best.optima_count);
  }

  Profile profile(n);
  int rounds = 0;
  bool converged = false;
  while (rounds < config.max_br_rounds) {
    ++rounds;
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      SelectionValue response = best_response_impl(scenario, profile, i, objective, config);
      const double current = objective_value(scenario, profile, i, profile[i], objective);
      if (response.value > current + config.tolerance) {
        profile[i] = std::move(response.selection);
        improved = true;
      }
    }
    if (!improved) {
      converged = true;
      break;
    }
  }
  if (converged) {
    return make_report(scenario, std::move(profile), true, rounds,
                       SolveMethod::best_response_dynamics, 0);
  }
  // Round cap hit. Exact dynamics on a finite potential game cannot
  // cycle, so this indicates a tolerance misconfiguration; fall back to
  // enumeration when the instance allows it.
  if (config.mode == SolveMode::automatic) {
    std::size_t joint = 1;
    bool within_cap = true;
    for (std::size_t i = 0; i < n && within_cap; ++i) {
      const std::size_t count = enumerate_selections(scenario, i, config).size();
      if (count == 0 || joint > config.brute_force_cap / count) within_cap = false;
      joint *= std::max<std::size_t>(count, 1);
    }
    if (within_cap) {
      ExhaustiveResult best = exhaustive_maximize(scenario, config, joint_eval);
      return make_report(scenario, std::move(best.profile), true, rounds,
                         SolveMethod::exhaustive, best.optima_count);
    }
  }
  return make_report(scenario, std::move(profile), false, rounds,
                     SolveMethod::best_response_dynamics, 0);
}

}  // namespace

double objective_value(const Scenario& scenario, const Profile& profile,
                       std::size_t user_index, const OrderedSelection& selection,
                       Objective objective) {
  const User& user = scenario.users[user_index];
  const std::vector<int> others = coverage_without(scenario, profile, user_index);
  double value = 0.0;
  for (int task_id : selection) {
    const std::size_t k = scenario.task_index(task_id);
    const Task& task = scenario.tasks[k];
    if (objective == Objective::own_payoff) {
      value += task.reward / static_cast<double>(others[k] + 1);
    } else if (others[k] == 0) {
      value += task.reward;
    }
  }
  return value - exec_cost(user, selection) - travel_cost(user, scenario, selection);
}

OrderedSelection best_response(const Scenario& scenario, const Profile& profile,
                               std::size_t user_index, Objective objective,
                               const SolverConfig& config) {
  if (profile.size() != scenario.num_users()) {
    throw std::invalid_argument("profile size does not match user count");
  }
  return best_response_impl(scenario, profile, user_index, objective, config).selection;
}

std::vector<OrderedSelection> enumerate_selections(const Scenario& scenario,
                                                   std::size_t user_index,
                                                   const SolverConfig& config) {
  const User& user = scenario.users[user_index];
  const std::vector<int> none(scenario.num_tasks(), 0);
  std::vector<TaskView> views = task_views(scenario, user_index, none, Objective::own_payoff);
  if (config.unordered) {
    check_unordered_applicable(scenario);
    // Ascending-id subsets, DFS order = lexicographic.
    std::vector<OrderedSelection> out;
    OrderedSelection seq;
    auto rec = [&](auto&& self, std::size_t from, double spent) -> void {
      out.push_back(seq);
      for (std::size_t t = from; t < views.size(); ++t) {
        if (spent + views[t].exec_cost > user.resource_budget) continue;
        seq.push_back(views[t].id);
        self(self, t + 1, spent + views[t].exec_cost);
        seq.pop_back();
      }
    };
    rec(rec, 0, 0.0);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }
  if (views.size() > static_cast<std::size_t>(config.max_subset_size)) {
    throw std::length_error("user " + std::to_string(user.id) + " has " +
                            std::to_string(views.size()) +
                            " available tasks, exceeding max_subset_size " +
                            std::to_string(config.max_subset_size));
  }
  SequenceSearch search(scenario, user, std::move(views), config.tolerance);
  std::vector<OrderedSelection> out = search.enumerate();
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

EquilibriumReport nash_equilibrium(const Scenario& scenario, const SolverConfig& config) {
  return solve(scenario, config, Objective::own_payoff);
}

EquilibriumReport social_optimum(const Scenario& scenario, const SolverConfig& config) {
  return solve(scenario, config, Objective::social_welfare);
}

}  // namespace taxgame::mcs
