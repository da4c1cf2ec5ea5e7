#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <vector>

// Location-dependent, time-sensitive task selection game: users pick an
// ordered sequence of sensing tasks, travel between task locations,
// share each task's reward equally with everyone else executing it, and
// pay execution plus travelling costs.

namespace taxgame::mcs {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point2D a, Point2D b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Task {
  int id = 0;
  double reward = 0.0;
  Point2D location;
  double window_open = 0.0;
  double window_close = 0.0;
};

// Per-(user, task) execution requirements.
struct TaskRequirement {
  double exec_time = 0.0;
  double exec_cost = 0.0;
};

struct User {
  int id = 0;
  Point2D initial_location;
  double travel_cost_rate = 0.0;  // money per unit distance
  double speed = 1.0;             // distance per unit time
  double resource_budget = std::numeric_limits<double>::infinity();
  std::map<int, TaskRequirement> available;  // task id -> requirements

  bool can_execute(int task_id) const { return available.count(task_id) != 0; }
};

struct Scenario {
  std::vector<Task> tasks;
  std::vector<User> users;

  std::size_t num_users() const { return users.size(); }
  std::size_t num_tasks() const { return tasks.size(); }
  // Index into `tasks` for a task id; throws std::out_of_range if unknown.
  std::size_t task_index(int task_id) const;
  const Task& task(int task_id) const { return tasks[task_index(task_id)]; }

  void validate() const;
};

// Ordered sequence of distinct task ids; empty means the user sits out.
using OrderedSelection = std::vector<int>;
// One selection per user, aligned with Scenario::users.
using Profile = std::vector<OrderedSelection>;

struct Schedule {
  std::vector<double> execution_times;  // start time of each selected task
  bool feasible = false;
};

// Greedy earliest schedule: execute each task as soon as travel and the
// previous execution allow, waiting for the window to open if needed.
// Feasible iff every start time lands inside its task's window. If any
// feasible time vector exists for the sequence, this one is feasible.
Schedule schedule_earliest(const Scenario& scenario, const User& user,
                           const OrderedSelection& selection);

// Time windows satisfiable and total execution cost within budget.
bool is_feasible(const Scenario& scenario, const User& user,
                 const OrderedSelection& selection);

// Throws std::domain_error unless every user's selection is feasible.
void require_feasible(const Scenario& scenario, const Profile& profile);

// M_k: number of users whose selection contains task k, aligned with
// Scenario::tasks.
std::vector<int> coverage_counts(const Scenario& scenario, const Profile& profile);

double exec_cost(const User& user, const OrderedSelection& selection);
double travel_cost(const User& user, const Scenario& scenario,
                   const OrderedSelection& selection);

// Shared reward minus execution and travelling costs. Requires the whole
// profile to be feasible.
double user_payoff(const Scenario& scenario, const Profile& profile, std::size_t user_index);

// Exact potential: sum_k sum_{m=1..M_k} V_k/m minus all costs. A
// unilateral deviation changes this by exactly the deviator's payoff
// change.
double potential(const Scenario& scenario, const Profile& profile);

// sum_k V_k * 1{M_k >= 1} minus all costs.
double social_welfare(const Scenario& scenario, const Profile& profile);

// Post-tax payoff under the rule (rate (N-1)/N, zero exemptions,
// beta = 1): every user gets social_welfare / N.
double taxed_user_payoff(const Scenario& scenario, const Profile& profile,
                         std::size_t user_index);

}  // namespace taxgame::mcs
