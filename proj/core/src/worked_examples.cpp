#include "taxgame/worked_examples.hpp"

#include <limits>

namespace taxgame::examples {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

mcs::Scenario mcs_single_task() {
  mcs::Scenario scenario;
  scenario.tasks.push_back({1, 10.0, {0.0, 0.0}, 0.0, kInf});
  for (int i = 1; i <= 2; ++i) {
    mcs::User user;
    user.id = i;
    user.initial_location = {0.0, 0.0};
    user.travel_cost_rate = 0.0;
    user.speed = 1.0;
    user.resource_budget = kInf;
    user.available[1] = {1.0, i == 1 ? 4.8 : 4.9};
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

mcs::Scenario mcs_routes() {
  mcs::Scenario scenario;
  // Morning tasks 1-3 close at 13:00, task 4 opens at 14:00; the other
  // windows are slack. Times are hours, distances kilometres.
  scenario.tasks = {
      {1, 1.0, {0.0, 1.0}, 10.0, 13.0},  {2, 1.3, {0.0, 2.0}, 10.0, 13.0},
      {3, 3.0, {2.0, 2.0}, 10.0, 13.0},  {4, 0.8, {2.0, 5.0}, 14.0, 18.0},
      {5, 1.5, {5.0, 6.0}, 10.0, 15.0},  {6, 2.8, {5.0, 9.0}, 10.0, 18.0},
      {7, 1.0, {9.0, 1.0}, 10.0, 18.0},  {8, 1.8, {9.0, 3.0}, 10.0, 18.0},
      {9, 2.0, {12.0, 7.0}, 10.0, 18.0},
  };
  const mcs::TaskRequirement req{0.2, 0.1};
  mcs::User user1;
  user1.id = 1;
  user1.initial_location = {0.0, 0.0};
  user1.travel_cost_rate = 0.1;
  user1.speed = 2.0;
  user1.resource_budget = 1.0;
  for (int k : {1, 2, 3, 4}) user1.available[k] = req;
  mcs::User user2;
  user2.id = 2;
  user2.initial_location = {2.0, 0.0};
  user2.travel_cost_rate = 0.1;
  user2.speed = 2.0;
  user2.resource_budget = 1.0;
  for (int k : {3, 5, 6}) user2.available[k] = req;
  mcs::User user3;
  user3.id = 3;
  user3.initial_location = {9.0, 0.0};
  user3.travel_cost_rate = 0.1;
  user3.speed = 1.0;
  user3.resource_budget = 1.0;
  for (int k : {7, 8, 9}) user3.available[k] = req;
  scenario.users = {std::move(user1), std::move(user2), std::move(user3)};
  return scenario;
}

mcs::Profile mcs_routes_profile() { return {{1, 2, 3, 4}, {3, 5, 6}, {7, 8, 9}}; }

mcwa::Scenario mcwa_shared_channel() {
  mcwa::Scenario scenario;
  scenario.log_base = 10.0;
  scenario.channels.push_back({1, 1.0, 0.2});
  for (int i = 0; i < 2; ++i) {
    mcwa::User user;
    user.power_budget = 2.0;
    user.available = {1};
    scenario.users.push_back(std::move(user));
  }
  scenario.gains.assign(4, 1.0);
  return scenario;
}

}  // namespace taxgame::examples
