#pragma once

// Scenario engine behind the command line tool.  A scenario is a JSON
// document with a "command" key; parsing validates it fully (unknown keys
// are errors, rationals are exact), running it produces a result object, a
// one-line human summary, the set of claims the run certifies, and any CSV
// artifacts.  Kept separate from main() so tests can drive the engine in
// process and compare against direct library calls.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace specfold::cli {

struct Outcome {
  nlohmann::json result;
  std::string human;
  // Claims certified by this run; --assert exits 0 iff its claim is listed.
  std::vector<std::string> certified;
  // CSV dumps keyed by destination path (possibly overridden by flags).
  std::vector<std::pair<std::string, std::string>> artifacts;
};

// Claims --assert understands, across all commands.
const std::vector<std::string>& known_claims();

// Parse and fully validate a scenario document.  Throws ParseError (with
// byte position for syntax errors), UnknownKey, or any library validation
// error raised while constructing the referenced objects.
nlohmann::json parse_scenario(const std::string& text);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
// parse -> canonical -> parse is a fixed point, byte for byte.
std::string canonical_spec(const nlohmann::json& spec);

// Execute a parsed scenario.  `csv_path` overrides the spec's "csv" key.
Outcome run_scenario(const nlohmann::json& spec, const std::string& csv_path = "");

// Full report document: {schema: 1, command, input, result} plus a
// generated_at stamp unless `reproducible`.  Serialized canonically.
std::string render_report(const nlohmann::json& spec, const Outcome& outcome,
                          bool reproducible);

}  // namespace specfold::cli
