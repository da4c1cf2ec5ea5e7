#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "taxgame/mcs.hpp"
#include "taxgame/mcwa.hpp"
#include "taxgame/normal_form.hpp"

// JSON scenario files: a top-level {kind, meta, body} envelope whose body
// is one of the three game kinds. Field names are lower_snake_case; the
// full schema lives in docs/scenario.schema.json.

namespace taxgame::io {

enum class ScenarioKind { normal_form, mcs, mcwa };

std::string to_string(ScenarioKind kind);

struct Meta {
  std::uint64_t seed = 0;
  std::string description;
};

struct ScenarioFile {
  Meta meta;
  std::variant<FiniteGame, mcs::Scenario, mcwa::Scenario> body;

  ScenarioKind kind() const { return static_cast<ScenarioKind>(body.index()); }
  const FiniteGame& game() const { return std::get<FiniteGame>(body); }
  const mcs::Scenario& mcs_scenario() const { return std::get<mcs::Scenario>(body); }
  const mcwa::Scenario& mcwa_scenario() const { return std::get<mcwa::Scenario>(body); }
};

// Schema violations name the offending field and the violated constraint.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& constraint)
      : std::runtime_error("scenario field '" + field + "': " + constraint),
        field_(field),
        constraint_(constraint) {}

  const std::string& field() const { return field_; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

// Parse/serialize the canonical JSON form. Loading validates the body
// against its module's invariants; save(load(x)) is the identity on
// canonical files.
ScenarioFile parse_scenario(const std::string& json_text);
std::string to_json_text(const ScenarioFile& file);

// Throws std::runtime_error when the path cannot be read/written and
// ParseError on schema violations.
ScenarioFile load_scenario(const std::string& path);
void save_scenario(const ScenarioFile& file, const std::string& path);

}  // namespace taxgame::io
