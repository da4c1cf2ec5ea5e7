#include "taxgame/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace taxgame::io {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const ordered_json& require(const ordered_json& obj, const std::string& key,
                            const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "is required");
  return *it;
}

double number(const ordered_json& value, const std::string& path) {
  if (!value.is_number()) throw ParseError(path, "must be a number");
  return value.get<double>();
}

// null encodes +infinity (open-ended windows, unconstrained budgets).
double number_or_inf(const ordered_json& value, const std::string& path) {
  if (value.is_null()) return kInf;
  return number(value, path);
}

int integer(const ordered_json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ParseError(path, "must be an integer");
  return value.get<int>();
}

const ordered_json& array(const ordered_json& value, const std::string& path) {
  if (!value.is_array()) throw ParseError(path, "must be an array");
  return value;
}

mcs::Point2D point(const ordered_json& value, const std::string& path) {
  const ordered_json& arr = array(value, path);
  if (arr.size() != 2) throw ParseError(path, "must be a [x, y] pair");
  return {number(arr[0], path + "[0]"), number(arr[1], path + "[1]")};
}

ordered_json from_point(mcs::Point2D p) { return ordered_json::array({p.x, p.y}); }

ordered_json from_double(double x) {
  if (std::isinf(x)) return nullptr;
  return x;
}

FiniteGame parse_normal_form(const ordered_json& body) {
  FiniteGame game;
  game.n_players = static_cast<std::size_t>(integer(require(body, "n_players", "body"),
                                                    "body.n_players"));
  for (const auto& c : array(require(body, "strategy_counts", "body"), "body.strategy_counts")) {
    game.strategy_counts.push_back(integer(c, "body.strategy_counts[]"));
  }
  const ordered_json& rows = array(require(body, "payoffs", "body"), "body.payoffs");
  for (std::size_t f = 0; f < rows.size(); ++f) {
    const std::string path = "body.payoffs[" + std::to_string(f) + "]";
    const ordered_json& row = array(rows[f], path);
    if (row.size() != game.n_players) {
      throw ParseError(path, "must list one payoff per player");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      game.payoffs.push_back(number(row[i], path + "[" + std::to_string(i) + "]"));
    }
  }
  return game;
}

ordered_json dump_normal_form(const FiniteGame& game) {
  ordered_json body;
  body["n_players"] = game.n_players;
  body["strategy_counts"] = game.strategy_counts;
  ordered_json rows = ordered_json::array();
  for (std::size_t f = 0; f < game.num_profiles(); ++f) {
    ordered_json row = ordered_json::array();
    for (std::size_t i = 0; i < game.n_players; ++i) row.push_back(game.payoff_at(f, i));
    rows.push_back(std::move(row));
  }
  body["payoffs"] = std::move(rows);
  return body;
}

mcs::Scenario parse_mcs(const ordered_json& body) {
  mcs::Scenario scenario;
  const ordered_json& tasks = array(require(body, "tasks", "body"), "body.tasks");
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::string path = "body.tasks[" + std::to_string(t) + "]";
    mcs::Task task;
    task.id = integer(require(tasks[t], "id", path), path + ".id");
    task.reward = number(require(tasks[t], "reward", path), path + ".reward");
    task.location = point(require(tasks[t], "location", path), path + ".location");
    task.window_open = number(require(tasks[t], "window_open", path), path + ".window_open");
    task.window_close =
        number_or_inf(require(tasks[t], "window_close", path), path + ".window_close");
    scenario.tasks.push_back(task);
  }
  const ordered_json& users = array(require(body, "users", "body"), "body.users");
  for (std::size_t u = 0; u < users.size(); ++u) {
    const std::string path = "body.users[" + std::to_string(u) + "]";
    mcs::User user;
    user.id = integer(require(users[u], "id", path), path + ".id");
    user.initial_location =
        point(require(users[u], "initial_location", path), path + ".initial_location");
    user.travel_cost_rate =
        number(require(users[u], "travel_cost_rate", path), path + ".travel_cost_rate");
    user.speed = number(require(users[u], "speed", path), path + ".speed");
    user.resource_budget =
        number_or_inf(require(users[u], "resource_budget", path), path + ".resource_budget");
    const ordered_json& avail = array(require(users[u], "available", path), path + ".available");
    for (std::size_t a = 0; a < avail.size(); ++a) {
      const std::string apath = path + ".available[" + std::to_string(a) + "]";
      const int task_id = integer(require(avail[a], "task_id", apath), apath + ".task_id");
      mcs::TaskRequirement req;
      req.exec_time = number(require(avail[a], "exec_time", apath), apath + ".exec_time");
      req.exec_cost = number(require(avail[a], "exec_cost", apath), apath + ".exec_cost");
      if (!user.available.emplace(task_id, req).second) {
        throw ParseError(apath + ".task_id", "duplicates an earlier entry");
      }
    }
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

ordered_json dump_mcs(const mcs::Scenario& scenario) {
  ordered_json body;
  ordered_json tasks = ordered_json::array();
  for (const mcs::Task& task : scenario.tasks) {
    ordered_json t;
    t["id"] = task.id;
    t["reward"] = task.reward;
    t["location"] = from_point(task.location);
    t["window_open"] = task.window_open;
    t["window_close"] = from_double(task.window_close);
    tasks.push_back(std::move(t));
  }
  body["tasks"] = std::move(tasks);
  ordered_json users = ordered_json::array();
  for (const mcs::User& user : scenario.users) {
    ordered_json u;
    u["id"] = user.id;
    u["initial_location"] = from_point(user.initial_location);
    u["travel_cost_rate"] = user.travel_cost_rate;
    u["speed"] = user.speed;
    u["resource_budget"] = from_double(user.resource_budget);
    ordered_json avail = ordered_json::array();
    for (const auto& [task_id, req] : user.available) {
      ordered_json a;
      a["task_id"] = task_id;
      a["exec_time"] = req.exec_time;
      a["exec_cost"] = req.exec_cost;
      avail.push_back(std::move(a));
    }
    u["available"] = std::move(avail);
    users.push_back(std::move(u));
  }
  body["users"] = std::move(users);
  return body;
}

mcwa::Scenario parse_mcwa(const ordered_json& body) {
  mcwa::Scenario scenario;
  scenario.log_base = number(require(body, "log_base", "body"), "body.log_base");
  const ordered_json& channels = array(require(body, "channels", "body"), "body.channels");
  for (std::size_t c = 0; c < channels.size(); ++c) {
    const std::string path = "body.channels[" + std::to_string(c) + "]";
    mcwa::ChannelSpec spec;
    spec.id = integer(require(channels[c], "id", path), path + ".id");
    spec.bandwidth = number(require(channels[c], "bandwidth", path), path + ".bandwidth");
    spec.noise = number(require(channels[c], "noise", path), path + ".noise");
    scenario.channels.push_back(spec);
  }
  const ordered_json& users = array(require(body, "users", "body"), "body.users");
  for (std::size_t u = 0; u < users.size(); ++u) {
    const std::string path = "body.users[" + std::to_string(u) + "]";
    mcwa::User user;
    user.power_budget =
        number(require(users[u], "power_budget", path), path + ".power_budget");
    for (const auto& id : array(require(users[u], "available", path), path + ".available")) {
      user.available.insert(integer(id, path + ".available[]"));
    }
    scenario.users.push_back(std::move(user));
  }
  const std::size_t n = scenario.users.size();
  const std::size_t kk = scenario.channels.size();
  const ordered_json& gains = array(require(body, "gains", "body"), "body.gains");
  if (gains.size() != n) throw ParseError("body.gains", "must have one row per receiver");
  scenario.gains.reserve(n * n * kk);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rpath = "body.gains[" + std::to_string(r) + "]";
    const ordered_json& row = array(gains[r], rpath);
    if (row.size() != n) throw ParseError(rpath, "must have one entry per transmitter");
    for (std::size_t t = 0; t < n; ++t) {
      const std::string tpath = rpath + "[" + std::to_string(t) + "]";
      const ordered_json& cell = array(row[t], tpath);
      if (cell.size() != kk) throw ParseError(tpath, "must have one gain per channel");
      for (std::size_t k = 0; k < kk; ++k) {
        scenario.gains.push_back(number(cell[k], tpath + "[" + std::to_string(k) + "]"));
      }
    }
  }
  return scenario;
}

ordered_json dump_mcwa(const mcwa::Scenario& scenario) {
  ordered_json body;
  body["log_base"] = scenario.log_base;
  ordered_json channels = ordered_json::array();
  for (const mcwa::ChannelSpec& spec : scenario.channels) {
    ordered_json c;
    c["id"] = spec.id;
    c["bandwidth"] = spec.bandwidth;
    c["noise"] = spec.noise;
    channels.push_back(std::move(c));
  }
  body["channels"] = std::move(channels);
  ordered_json users = ordered_json::array();
  for (const mcwa::User& user : scenario.users) {
    ordered_json u;
    u["power_budget"] = user.power_budget;
    u["available"] = user.available;
    users.push_back(std::move(u));
  }
  body["users"] = std::move(users);
  const std::size_t n = scenario.num_users();
  const std::size_t kk = scenario.num_channels();
  ordered_json gains = ordered_json::array();
  for (std::size_t r = 0; r < n; ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t t = 0; t < n; ++t) {
      ordered_json cell = ordered_json::array();
      for (std::size_t k = 0; k < kk; ++k) cell.push_back(scenario.gain(r, t, k));
      row.push_back(std::move(cell));
    }
    gains.push_back(std::move(row));
  }
  body["gains"] = std::move(gains);
  return body;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::normal_form: return "normal_form";
    case ScenarioKind::mcs: return "mcs";
    case ScenarioKind::mcwa: return "mcwa";
  }
  return "unknown";
}

ScenarioFile parse_scenario(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<document>", std::string("invalid JSON: ") + e.what());
  }
  ScenarioFile file;
  const ordered_json& meta = require(doc, "meta", "<document>");
  const ordered_json& seed = require(meta, "seed", "meta");
  if (!seed.is_number_integer() && !seed.is_number_unsigned()) {
    throw ParseError("meta.seed", "must be an integer");
  }
  file.meta.seed = seed.get<std::uint64_t>();
  const ordered_json& description = require(meta, "description", "meta");
  if (!description.is_string()) throw ParseError("meta.description", "must be a string");
  file.meta.description = description.get<std::string>();

  const ordered_json& kind = require(doc, "kind", "<document>");
  const ordered_json& body = require(doc, "body", "<document>");
  const std::string kind_name = kind.is_string() ? kind.get<std::string>() : "";
  try {
    if (kind_name == "normal_form") {
      FiniteGame game = parse_normal_form(body);
      game.validate();
      file.body = std::move(game);
    } else if (kind_name == "mcs") {
      mcs::Scenario scenario = parse_mcs(body);
      scenario.validate();
      file.body = std::move(scenario);
    } else if (kind_name == "mcwa") {
      mcwa::Scenario scenario = parse_mcwa(body);
      scenario.validate();
      file.body = std::move(scenario);
    } else {
      throw ParseError("kind", "must be one of normal_form|mcs|mcwa");
    }
  } catch (const std::invalid_argument& e) {
    // Module invariant violations become schema errors on the body.
    throw ParseError("body", e.what());
  }
  return file;
}

std::string to_json_text(const ScenarioFile& file) {
  ordered_json doc;
  doc["kind"] = to_string(file.kind());
  doc["meta"] = {{"seed", file.meta.seed}, {"description", file.meta.description}};
  switch (file.kind()) {
    case ScenarioKind::normal_form: doc["body"] = dump_normal_form(file.game()); break;
    case ScenarioKind::mcs: doc["body"] = dump_mcs(file.mcs_scenario()); break;
    case ScenarioKind::mcwa: doc["body"] = dump_mcwa(file.mcwa_scenario()); break;
  }
  return doc.dump(2) + "\n";
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

void save_scenario(const ScenarioFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << to_json_text(file);
  if (!out) throw std::runtime_error("failed writing scenario file: " + path);
}

}  // namespace taxgame::io
