#include "taxgame/mcs.hpp"

#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace taxgame::mcs {

std::size_t Scenario::task_index(int task_id) const {
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].id == task_id) return i;
  }
  throw std::out_of_range("unknown task id " + std::to_string(task_id));
}

void Scenario::validate() const {
  if (users.size() < 2) {
    throw std::invalid_argument("mcs scenario: at least 2 users required");
  }
  std::set<int> task_ids;
  for (const Task& t : tasks) {
    if (!task_ids.insert(t.id).second) {
      throw std::invalid_argument("duplicate task id " + std::to_string(t.id));
    }
    if (t.reward < 0.0) {
      throw std::invalid_argument("task " + std::to_string(t.id) + ": reward must be >= 0");
    }
    if (t.window_open > t.window_close) {
      throw std::invalid_argument("task " + std::to_string(t.id) +
                                  ": window_open must be <= window_close");
    }
  }
  std::set<int> user_ids;
  for (const User& u : users) {
    if (!user_ids.insert(u.id).second) {
      throw std::invalid_argument("duplicate user id " + std::to_string(u.id));
    }
    if (u.speed <= 0.0) {
      throw std::invalid_argument("user " + std::to_string(u.id) + ": speed must be > 0");
    }
    if (u.travel_cost_rate < 0.0 || u.resource_budget < 0.0) {
      throw std::invalid_argument("user " + std::to_string(u.id) + ": costs must be >= 0");
    }
    for (const auto& [task_id, req] : u.available) {
      if (task_ids.count(task_id) == 0) {
        throw std::invalid_argument("user " + std::to_string(u.id) +
                                    " references unknown task " + std::to_string(task_id));
      }
      if (req.exec_time < 0.0 || req.exec_cost < 0.0) {
        throw std::invalid_argument("user " + std::to_string(u.id) + ", task " +
                                    std::to_string(task_id) +
                                    ": execution time and cost must be >= 0");
      }
    }
  }
}

namespace {

const TaskRequirement& requirement(const User& user, int task_id) {
  auto it = user.available.find(task_id);
  if (it == user.available.end()) {
    throw std::out_of_range("task " + std::to_string(task_id) + " not available to user " +
                            std::to_string(user.id));
  }
  return it->second;
}

void check_selection(const User& user, const OrderedSelection& selection) {
  std::set<int> seen;
  for (int task_id : selection) {
    if (!seen.insert(task_id).second) {
      throw std::invalid_argument("selection of user " + std::to_string(user.id) +
                                  " repeats task " + std::to_string(task_id));
    }
    requirement(user, task_id);  // throws on unavailable/unknown tasks
  }
}

}  // namespace

Schedule schedule_earliest(const Scenario& scenario, const User& user,
                           const OrderedSelection& selection) {
  check_selection(user, selection);
  Schedule schedule;
  schedule.feasible = true;
  schedule.execution_times.reserve(selection.size());
  Point2D at = user.initial_location;
  double ready = 0.0;  // earliest moment the user can start the next trip
  for (int task_id : selection) {
    const Task& task = scenario.task(task_id);
    const double arrival = ready + distance(at, task.location) / user.speed;
    const double start = std::max(arrival, task.window_open);
    schedule.execution_times.push_back(start);
    if (start > task.window_close) schedule.feasible = false;
    ready = start + requirement(user, task_id).exec_time;
    at = task.location;
  }
  return schedule;
}

bool is_feasible(const Scenario& scenario, const User& user,
                 const OrderedSelection& selection) {
  if (exec_cost(user, selection) > user.resource_budget) return false;
  return schedule_earliest(scenario, user, selection).feasible;
}

void require_feasible(const Scenario& scenario, const Profile& profile) {
  if (profile.size() != scenario.num_users()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.size()) +
                                " selections for " + std::to_string(scenario.num_users()) +
                                " users");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!is_feasible(scenario, scenario.users[i], profile[i])) {
      throw std::domain_error("selection of user " + std::to_string(scenario.users[i].id) +
                              " is infeasible");
    }
  }
}

std::vector<int> coverage_counts(const Scenario& scenario, const Profile& profile) {
  std::vector<int> counts(scenario.num_tasks(), 0);
  for (const OrderedSelection& selection : profile) {
    for (int task_id : selection) counts[scenario.task_index(task_id)] += 1;
  }
  return counts;
}

double exec_cost(const User& user, const OrderedSelection& selection) {
  double total = 0.0;
  for (int task_id : selection) total += requirement(user, task_id).exec_cost;
  return total;
}

double travel_cost(const User& user, const Scenario& scenario,
                   const OrderedSelection& selection) {
  double dist = 0.0;
  Point2D at = user.initial_location;
  for (int task_id : selection) {
    const Point2D next = scenario.task(task_id).location;
    dist += distance(at, next);
    at = next;
  }
  return dist * user.travel_cost_rate;
}

double user_payoff(const Scenario& scenario, const Profile& profile, std::size_t user_index) {
  require_feasible(scenario, profile);
  const std::vector<int> counts = coverage_counts(scenario, profile);
  const User& user = scenario.users[user_index];
  double reward = 0.0;
  for (int task_id : profile[user_index]) {
    const std::size_t k = scenario.task_index(task_id);
    reward += scenario.tasks[k].reward / static_cast<double>(counts[k]);
  }
  return reward - exec_cost(user, profile[user_index]) -
         travel_cost(user, scenario, profile[user_index]);
}

double potential(const Scenario& scenario, const Profile& profile) {
  const std::vector<int> counts = coverage_counts(scenario, profile);
  double value = 0.0;
  for (std::size_t k = 0; k < scenario.num_tasks(); ++k) {
    for (int m = 1; m <= counts[k]; ++m) {
      value += scenario.tasks[k].reward / static_cast<double>(m);
    }
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const User& user = scenario.users[i];
    value -= exec_cost(user, profile[i]) + travel_cost(user, scenario, profile[i]);
  }
  return value;
}

double social_welfare(const Scenario& scenario, const Profile& profile) {
  const std::vector<int> counts = coverage_counts(scenario, profile);
  double value = 0.0;
  for (std::size_t k = 0; k < scenario.num_tasks(); ++k) {
    if (counts[k] >= 1) value += scenario.tasks[k].reward;
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const User& user = scenario.users[i];
    value -= exec_cost(user, profile[i]) + travel_cost(user, scenario, profile[i]);
  }
  return value;
}

double taxed_user_payoff(const Scenario& scenario, const Profile& profile,
                         std::size_t user_index) {
  (void)user_index;
  return social_welfare(scenario, profile) / static_cast<double>(scenario.num_users());
}

}  // namespace taxgame::mcs
