#include "scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <initializer_list>
#include <random>
#include <string_view>

#include <Eigen/Core>

#include <specfold/band_set.hpp>
#include <specfold/discrete_model.hpp>
#include <specfold/errors.hpp>
#include <specfold/generators.hpp>
#include <specfold/lattice.hpp>
#include <specfold/periodization.hpp>
#include <specfold/profiles.hpp>
#include <specfold/range_classifier.hpp>
#include <specfold/rational.hpp>
#include <specfold/torus_step.hpp>

namespace specfold::cli {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Small formatting helpers.

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fmt_double_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_box(const RationalBox& box) {
  std::string out;
  for (int axis = 0; axis < box.dim(); ++axis) {
    if (axis) out += "x";
    out += "[" + format_rational(box.lo(axis)) + "," + format_rational(box.hi(axis)) + ")";
  }
  return out;
}

std::string set_relation_name(SetRelation relation) {
  switch (relation) {
    case SetRelation::Equal: return "equal";
    case SetRelation::SubsetProper: return "first-inside-second";
    case SetRelation::SupersetProper: return "second-inside-first";
    case SetRelation::Disjoint: return "disjoint";
    case SetRelation::Overlapping: return "overlapping";
  }
  return "?";
}

std::string timestamp_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string with_warnings(std::string line, const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings) line += "\nwarning: " + warning;
  return line;
}

// ---------------------------------------------------------------------------
// Field access with errors that name the offending key.

const json& require_key(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError("missing key \"" + std::string(key) + "\" in " + where);
  return obj.at(key);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw UnknownKey("unknown key \"" + item.key() + "\" in " + where);
  }
}

std::string require_string(const json& value, const std::string& field) {
  if (!value.is_string()) throw ParseError("field \"" + field + "\" must be a string");
  return value.get<std::string>();
}

Rational load_rational(const json& value, const std::string& field) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_float())
    throw ParseError("field \"" + field + "\" must be an exact rational like \"3/4\", not a float");
  if (value.is_number_integer() || value.is_number_unsigned())
    return Rational(value.get<long long>());
  throw ParseError("field \"" + field + "\" must be a rational (string \"p/q\" or integer)");
}

std::vector<Rational> load_rational_list(const json& value, const std::string& field) {
  if (!value.is_array()) throw ParseError("field \"" + field + "\" must be an array of rationals");
  std::vector<Rational> out;
  for (const auto& entry : value) out.push_back(load_rational(entry, field));
  return out;
}

BandSet load_band(const json& value, const std::string& field) {
  BandSet set = parse_band_set(require_string(value, field));
  if (set.is_empty()) throw EmptyBand("field \"" + field + "\" is an empty band");
  return set;
}

// A lattice is a scalar rational (string or integer shorthand) or an object
// {"diag": [...], "shift": [...]}.  Construction validates invertibility.
Lattice load_lattice(const json& value, const std::string& field) {
  if (value.is_string() || value.is_number())
    return Lattice(load_rational(value, field));
  if (value.is_object()) {
    check_keys(value, field, {"diag", "shift"});
    std::vector<Rational> diag = load_rational_list(require_key(value, "diag", field),
                                                    field + ".diag");
    std::vector<Rational> shift;
    if (value.contains("shift")) shift = load_rational_list(value.at("shift"), field + ".shift");
    return Lattice(std::move(diag), std::move(shift));
  }
  throw ParseError("field \"" + field + "\" must be a rational or {diag, shift}");
}

// A profile is a full JSON description or a band string shorthand for the
// characteristic profile on the domain the slot expects.
SpectralProfile load_profile(const json& value, const std::string& field, ProfileDomain domain) {
  if (value.is_string()) return SpectralProfile::characteristic(load_band(value, field), domain);
  if (value.is_object()) return parse_profile_json(value.dump());
  throw ParseError("field \"" + field + "\" must be a profile object or a band string");
}

std::vector<SpectralProfile> load_profiles(const json& value, const std::string& field,
                                           ProfileDomain domain) {
  if (!value.is_array() || value.empty())
    throw EmptyList("field \"" + field + "\" must be a non-empty array of profiles");
  std::vector<SpectralProfile> out;
  for (size_t i = 0; i < value.size(); ++i)
    out.push_back(load_profile(value[i], field + "[" + std::to_string(i) + "]", domain));
  return out;
}

long long load_integer(const json& value, const std::string& field) {
  if (!value.is_number_integer() && !value.is_number_unsigned())
    throw ParseError("field \"" + field + "\" must be an integer");
  return value.get<long long>();
}

bool load_bool(const json& value, const std::string& field) {
  if (!value.is_boolean()) throw ParseError("field \"" + field + "\" must be true or false");
  return value.get<bool>();
}

// ---------------------------------------------------------------------------
// JSON renderings of library objects.

json band_json(const BandSet& set) { return format_band_set(set); }

json fold_json(const TorusStep& fold) {
  json pieces = json::array();
  for (const auto& piece : fold.pieces())
    pieces.push_back({{"box", format_box(piece.box)}, {"value", format_rational(piece.value)}});
  return {{"dim", fold.dim()},
          {"pieces", pieces},
          {"support", band_json(fold.support())},
          {"max", format_rational(fold.max_value())},
          {"integral", format_rational(fold.integral())}};
}

json relation_json(const RangeRelation& rel) {
  return {{"kind", to_string(rel.kind)},
          {"certified", rel.certified},
          {"support_first", band_json(rel.support_first)},
          {"support_second", band_json(rel.support_second)},
          {"overlap", band_json(rel.overlap)},
          {"only_first", band_json(rel.only_first)},
          {"only_second", band_json(rel.only_second)}};
}

json pair_json(const GeneratorSupportPair& pair) {
  return {{"first", band_json(pair.first)},
          {"second", band_json(pair.second)},
          {"relation", set_relation_name(pair.relation)}};
}

json pairs_json(const std::vector<GeneratorSupportPair>& pairs) {
  json out = json::array();
  for (const auto& pair : pairs) out.push_back(pair_json(pair));
  return out;
}

json verdict_json(const DisjointnessVerdict& verdict) {
  return {{"claim", to_string(verdict.claim)},
          {"status", to_string(verdict.status)},
          {"certified_route", verdict.certified_route},
          {"frequency_pairs", pairs_json(verdict.frequency_pairs)},
          {"time_pairs", pairs_json(verdict.time_pairs)},
          {"side_condition_checked", verdict.side_condition_checked},
          {"side_condition_holds", verdict.side_condition_holds},
          {"warnings", verdict.warnings}};
}

std::string verdict_human(const DisjointnessVerdict& verdict) {
  std::string line = to_string(verdict.claim) + ": " + to_string(verdict.status);
  if (!verdict.certified_route.empty()) line += " via " + verdict.certified_route;
  return with_warnings(std::move(line), verdict.warnings);
}

// ---------------------------------------------------------------------------
// CSV artifact plumbing.  The "csv" key (or the --csv flag) picks the path.

void attach_csv(Outcome& out, const json& spec, const std::string& override_path,
                const std::string& content) {
  std::string path = override_path;
  if (path.empty() && spec.contains("csv")) path = require_string(spec.at("csv"), "csv");
  if (!path.empty()) out.artifacts.emplace_back(path, content);
}

void reject_csv(const std::string& command, const std::string& override_path) {
  if (!override_path.empty())
    throw ParseError("command \"" + command + "\" does not produce CSV output");
}

// ---------------------------------------------------------------------------
// Per-command loaders.  Each one constructs every domain object the command
// touches, so bad bands/lattices/profiles fail at parse-validation time.

struct BandLatticeParams {
  BandSet band;
  Lattice lattice;
};

BandLatticeParams load_band_lattice(const json& spec, const char* const band_key = "band",
                                    const char* const lattice_key = "lattice",
                                    const std::string& where = "scenario") {
  BandSet band = load_band(require_key(spec, band_key, where), band_key);
  Lattice lattice = load_lattice(require_key(spec, lattice_key, where), lattice_key);
  if (lattice.dim() != band.dim())
    throw DimensionMismatch("lattice dimension " + std::to_string(lattice.dim()) +
                            " does not match band dimension " + std::to_string(band.dim()));
  return {std::move(band), std::move(lattice)};
}

struct MultiplicityParams {
  BandSet band;
  Lattice lattice;
};

MultiplicityParams load_multiplicity(const json& spec) {
  check_keys(spec, "scenario", {"command", "band", "lattice", "csv"});
  auto [band, lattice] = load_band_lattice(spec);
  if (spec.contains("csv")) require_string(spec.at("csv"), "csv");
  return {std::move(band), std::move(lattice)};
}

struct ClassifyParams {
  BandLatticeParams first, second;
  bool bessel = false;
};

ClassifyParams load_classify(const json& spec) {
  check_keys(spec, "scenario", {"command", "first", "second", "mode"});
  const json& first = require_key(spec, "first", "scenario");
  const json& second = require_key(spec, "second", "scenario");
  check_keys(first, "first", {"band", "lattice"});
  check_keys(second, "second", {"band", "lattice"});
  ClassifyParams params{load_band_lattice(first, "band", "lattice", "first"),
                        load_band_lattice(second, "band", "lattice", "second"), false};
  if (spec.contains("mode")) {
    std::string mode = require_string(spec.at("mode"), "mode");
    if (mode == "bessel") params.bessel = true;
    else if (mode != "sampling")
      throw ParseError("field \"mode\" must be \"sampling\" or \"bessel\", got \"" + mode + "\"");
  }
  return params;
}

struct UnionSide {
  BandSet band;
  std::vector<Lattice> steps;
};

struct UnionParams {
  UnionSide first, second;
  RangeClaim claim = RangeClaim::Orthogonal;
};

UnionSide load_union_side(const json& side, const std::string& where) {
  check_keys(side, where, {"band", "steps"});
  UnionSide out{load_band(require_key(side, "band", where), where + ".band"), {}};
  const json& steps = require_key(side, "steps", where);
  if (!steps.is_array() || steps.empty())
    throw EmptyList("field \"" + where + ".steps\" must be a non-empty array of lattices");
  for (size_t i = 0; i < steps.size(); ++i)
    out.steps.push_back(load_lattice(steps[i], where + ".steps[" + std::to_string(i) + "]"));
  return out;
}

UnionParams load_union(const json& spec) {
  check_keys(spec, "scenario", {"command", "first", "second", "claim"});
  UnionParams params{load_union_side(require_key(spec, "first", "scenario"), "first"),
                     load_union_side(require_key(spec, "second", "scenario"), "second"),
                     parse_range_claim(require_string(require_key(spec, "claim", "scenario"),
                                                      "claim"))};
  return params;
}

struct MuxParams {
  DiscreteModel first, second;
  std::uint64_t seed = 0;
  bool force = false;
};

MuxParams load_mux(const json& spec) {
  check_keys(spec, "scenario",
             {"command", "first", "second", "period", "seed", "force", "csv"});
  const json& first = require_key(spec, "first", "scenario");
  const json& second = require_key(spec, "second", "scenario");
  check_keys(first, "first", {"band", "step"});
  check_keys(second, "second", {"band", "step"});
  Rational period = load_rational(require_key(spec, "period", "scenario"), "period");
  BandSet first_band = load_band(require_key(first, "band", "first"), "first.band");
  BandSet second_band = load_band(require_key(second, "band", "second"), "second.band");
  Rational first_step = load_rational(require_key(first, "step", "first"), "first.step");
  Rational second_step = load_rational(require_key(second, "step", "second"), "second.step");
  std::uint64_t seed = 0;
  if (spec.contains("seed")) {
    long long raw = load_integer(spec.at("seed"), "seed");
    if (raw < 0) throw ParseError("field \"seed\" must be non-negative");
    seed = static_cast<std::uint64_t>(raw);
  }
  bool force = spec.contains("force") && load_bool(spec.at("force"), "force");
  if (spec.contains("csv")) require_string(spec.at("csv"), "csv");
  return {DiscreteModel(std::move(first_band), first_step, period),
          DiscreteModel(std::move(second_band), second_step, period), seed, force};
}

struct AffineSide {
  std::vector<SpectralProfile> profiles;
  Lattice lattice = Lattice(Rational(1));
};

struct AffineParams {
  AffineSide first, second;
  RangeClaim claim = RangeClaim::Orthogonal;
};

AffineSide load_affine_side(const json& side, const std::string& where) {
  check_keys(side, where, {"profiles", "lattice"});
  return {load_profiles(require_key(side, "profiles", where), where + ".profiles",
                        ProfileDomain::Frequency),
          load_lattice(require_key(side, "lattice", where), where + ".lattice")};
}

RangeClaim load_claim(const json& spec) {
  if (!spec.contains("claim")) return RangeClaim::Orthogonal;
  return parse_range_claim(require_string(spec.at("claim"), "claim"));
}

AffineParams load_affine(const json& spec) {
  check_keys(spec, "scenario", {"command", "first", "second", "claim", "csv"});
  AffineParams params{load_affine_side(require_key(spec, "first", "scenario"), "first"),
                      load_affine_side(require_key(spec, "second", "scenario"), "second"),
                      load_claim(spec)};
  if (spec.contains("csv")) require_string(spec.at("csv"), "csv");
  return params;
}

struct WhSide {
  std::vector<WhGenerator> generators;
  Lattice modulation = Lattice(Rational(1));
  Lattice translation = Lattice(Rational(1));
};

struct WhParams {
  WhSide first, second;
  RangeClaim claim = RangeClaim::Orthogonal;
  WhRoute route = WhRoute::Auto;
};

WhSide load_wh_side(const json& side, const std::string& where) {
  check_keys(side, where, {"generators", "modulation", "translation"});
  const json& generators = require_key(side, "generators", where);
  if (!generators.is_array() || generators.empty())
    throw EmptyList("field \"" + where + ".generators\" must be a non-empty array");
  WhSide out;
  for (size_t i = 0; i < generators.size(); ++i) {
    const std::string slot = where + ".generators[" + std::to_string(i) + "]";
    const json& entry = generators[i];
    check_keys(entry, slot, {"frequency", "time"});
    WhGenerator gen;
    if (entry.contains("frequency"))
      gen.frequency = load_profile(entry.at("frequency"), slot + ".frequency",
                                   ProfileDomain::Frequency);
    if (entry.contains("time"))
      gen.time = load_profile(entry.at("time"), slot + ".time", ProfileDomain::Time);
    out.generators.push_back(std::move(gen));
  }
  out.modulation = load_lattice(require_key(side, "modulation", where), where + ".modulation");
  out.translation = load_lattice(require_key(side, "translation", where), where + ".translation");
  return out;
}

WhParams load_wh(const json& spec) {
  check_keys(spec, "scenario", {"command", "first", "second", "claim", "route"});
  WhParams params{load_wh_side(require_key(spec, "first", "scenario"), "first"),
                  load_wh_side(require_key(spec, "second", "scenario"), "second"),
                  load_claim(spec), WhRoute::Auto};
  if (spec.contains("route")) {
    std::string route = require_string(spec.at("route"), "route");
    if (route == "frequency") params.route = WhRoute::Frequency;
    else if (route == "time") params.route = WhRoute::Time;
    else if (route != "auto")
      throw ParseError("field \"route\" must be auto|frequency|time, got \"" + route + "\"");
  }
  return params;
}

struct QuasiAffineSide {
  std::vector<SpectralProfile> profiles;
  Rational dilation;
  Lattice lattice = Lattice(Rational(1));
};

struct QuasiAffineParams {
  QuasiAffineSide first, second;
  long r_min = -8;
};

QuasiAffineSide load_quasi_side(const json& side, const std::string& where) {
  check_keys(side, where, {"profiles", "dilation", "lattice"});
  return {load_profiles(require_key(side, "profiles", where), where + ".profiles",
                        ProfileDomain::Frequency),
          load_rational(require_key(side, "dilation", where), where + ".dilation"),
          load_lattice(require_key(side, "lattice", where), where + ".lattice")};
}

QuasiAffineParams load_quasi(const json& spec) {
  check_keys(spec, "scenario", {"command", "first", "second", "r_min"});
  QuasiAffineParams params{load_quasi_side(require_key(spec, "first", "scenario"), "first"),
                           load_quasi_side(require_key(spec, "second", "scenario"), "second"),
                           -8};
  if (spec.contains("r_min"))
    params.r_min = static_cast<long>(load_integer(spec.at("r_min"), "r_min"));
  return params;
}

struct MsfParams {
  BandSet band;
  Rational dilation;
  int levels = 0;
};

MsfParams load_msf(const json& spec) {
  check_keys(spec, "scenario", {"command", "band", "dilation", "levels"});
  MsfParams params{load_band(require_key(spec, "band", "scenario"), "band"),
                   load_rational(require_key(spec, "dilation", "scenario"), "dilation"), 0};
  long long levels = load_integer(require_key(spec, "levels", "scenario"), "levels");
  if (levels < 1 || levels > 64)
    throw ParseError("field \"levels\" must be an integer between 1 and 64");
  params.levels = static_cast<int>(levels);
  return params;
}

// ---------------------------------------------------------------------------
// Command execution.

Outcome run_multiplicity(const json& spec, const std::string& csv_path) {
  auto params = load_multiplicity(spec);
  TorusStep fold = multiplicity(params.band, params.lattice);
  FrameBounds bounds = frame_bounds_exact(params.band, params.lattice);
  bool sampling = fold.max_value() <= 1;

  Outcome out;
  out.result = {{"fold", fold_json(fold)},
                {"frame_bounds",
                 {{"lower", format_rational(bounds.lower)},
                  {"upper", format_rational(bounds.upper)},
                  {"tight", bounds.tight()}}},
                {"sampling", sampling}};
  out.human = "fold max " + format_rational(fold.max_value()) + ", integral " +
              format_rational(fold.integral()) + "; frame bounds [" +
              format_rational(bounds.lower) + ", " + format_rational(bounds.upper) +
              (bounds.tight() ? "] (tight)" : "]") + "; sampling: " + (sampling ? "yes" : "no");
  if (sampling) out.certified.push_back("sampling");
  attach_csv(out, spec, csv_path, fold.to_csv());
  return out;
}

Outcome run_sampling_check(const json& spec, const std::string& csv_path) {
  auto params = load_multiplicity(spec);
  SamplingCheck check = is_sampling_matrix(params.band, params.lattice);
  Rational max = check.folded.max_value();
  std::vector<RationalBox> attaining;
  for (const auto& piece : check.folded.pieces())
    if (piece.value == max) attaining.push_back(piece.box);
  BandSet witness = BandSet::from_boxes(check.folded.dim(), std::move(attaining));

  Outcome out;
  out.result = {{"sampling", check.is_sampling},
                {"max_multiplicity", format_rational(max)},
                {"witness", band_json(witness)},
                {"fold", fold_json(check.folded)}};
  out.human = std::string("sampling: ") + (check.is_sampling ? "yes" : "no") +
              " (multiplicity reaches " + format_rational(max) + " on " +
              format_band_set(witness) + ")";
  if (check.is_sampling) out.certified.push_back("sampling");
  attach_csv(out, spec, csv_path, check.folded.to_csv());
  return out;
}

Outcome run_classify(const json& spec, const std::string& csv_path) {
  reject_csv("classify", csv_path);
  auto params = load_classify(spec);
  RangeRelation rel =
      params.bessel
          ? classify_bessel(params.first.band, params.first.lattice, params.second.band,
                            params.second.lattice)
          : classify_single(params.first.band, params.first.lattice, params.second.band,
                            params.second.lattice);

  Outcome out;
  out.result = relation_json(rel);
  out.result["mode"] = params.bessel ? "bessel" : "sampling";
  out.human = "relation: " + to_string(rel.kind) +
              (rel.certified ? " (certified)" : " (support conditions only)");
  if (rel.certified) {
    switch (rel.kind) {
      case RelationKind::Equal: out.certified.push_back("equal"); break;
      case RelationKind::Orthogonal: out.certified.push_back("orthogonal"); break;
      case RelationKind::FirstInsideSecond: out.certified.push_back("contained"); break;
      case RelationKind::SecondInsideFirst: out.certified.push_back("contains"); break;
      case RelationKind::NontrivialOverlap: out.certified.push_back("overlap"); break;
    }
  }
  return out;
}

Outcome run_union(const json& spec, const std::string& csv_path) {
  reject_csv("classify-union", csv_path);
  auto params = load_union(spec);
  UnionVerdict verdict = classify_union(params.first.band, params.first.steps,
                                        params.second.band, params.second.steps, params.claim);

  json coordinates = json::array();
  for (const auto& rel : verdict.coordinates) coordinates.push_back(relation_json(rel));
  Outcome out;
  out.result = {{"claim", to_string(verdict.claim)},
                {"overall", to_string(verdict.overall)},
                {"coordinates", coordinates},
                {"warnings", verdict.warnings}};
  out.human = with_warnings(
      "claim " + to_string(verdict.claim) + ": " + to_string(verdict.overall), verdict.warnings);
  if (verdict.overall == VerdictStatus::CertifiedOrthogonal)
    out.certified.push_back(to_string(verdict.claim));
  return out;
}

Outcome run_mux(const json& spec, const std::string& csv_path) {
  auto params = load_mux(spec);
  const DiscreteModel& first = params.first;
  const DiscreteModel& second = params.second;

  std::mt19937_64 gen(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_spectrum = [&](long long size) {
    Eigen::VectorXcd v(size);
    for (long long i = 0; i < size; ++i) {
      double re = normal(gen), im = normal(gen);
      v[i] = std::complex<double>(re, im);
    }
    return v;
  };
  Eigen::VectorXcd f = random_spectrum(static_cast<long long>(first.frequencies().size()));
  Eigen::VectorXcd g = random_spectrum(static_cast<long long>(second.frequencies().size()));

  long long common = common_extension(first, second);
  double gram = cross_gram(first, second);
  double commutator = projections_commutator(first, second);
  auto first_bounds = frame_bounds_numeric(first);
  auto second_bounds = frame_bounds_numeric(second);
  MultiplexResult mux = multiplex_roundtrip(first, f, second, g, params.force);
  if (!params.force && mux.crosstalk > 1e-9)
    throw NumericError("crosstalk " + fmt_double(mux.crosstalk) +
                       " exceeds the 1e-9 tolerance for disjoint systems");

  Outcome out;
  out.result = {{"first_model", json::parse(first.dump_json())},
                {"second_model", json::parse(second.dump_json())},
                {"common_rows", common},
                {"cross_gram", gram},
                {"projections_commutator", commutator},
                {"first_bounds", {{"lower", first_bounds.first}, {"upper", first_bounds.second}}},
                {"second_bounds", {{"lower", second_bounds.first}, {"upper", second_bounds.second}}},
                {"crosstalk", mux.crosstalk},
                {"seed", params.seed},
                {"forced", params.force}};
  out.human = "recovered both spectra: crosstalk " + fmt_double(mux.crosstalk) +
              ", cross-gram " + fmt_double(gram) + ", commutator " + fmt_double(commutator);
  if (gram <= 1e-10) out.certified.push_back("orthogonal");

  std::string csv = "model,frequency,re,im\n";
  for (size_t j = 0; j < first.frequencies().size(); ++j)
    csv += "1," + std::to_string(first.frequencies()[j]) + "," +
           fmt_double_full(mux.first[static_cast<long long>(j)].real()) + "," +
           fmt_double_full(mux.first[static_cast<long long>(j)].imag()) + "\n";
  for (size_t j = 0; j < second.frequencies().size(); ++j)
    csv += "2," + std::to_string(second.frequencies()[j]) + "," +
           fmt_double_full(mux.second[static_cast<long long>(j)].real()) + "," +
           fmt_double_full(mux.second[static_cast<long long>(j)].imag()) + "\n";
  attach_csv(out, spec, csv_path, csv);
  return out;
}

Outcome run_affine(const json& spec, const std::string& csv_path) {
  auto params = load_affine(spec);
  DisjointnessVerdict verdict =
      affine_verdict(params.first.profiles, params.first.lattice, params.second.profiles,
                     params.second.lattice, params.claim);

  Outcome out;
  out.result = verdict_json(verdict);
  out.human = verdict_human(verdict);
  if (verdict.status == DisjointnessStatus::CertifiedSufficient)
    out.certified.push_back(to_string(verdict.claim));

  if (!csv_path.empty() || spec.contains("csv")) {
    PeriodizedProfile fold = periodization_sq(params.first.profiles[0], params.first.lattice);
    attach_csv(out, spec, csv_path, fold.exact ? fold.exact->to_csv() : fold.sampled->to_csv());
  }
  return out;
}

Outcome run_wh(const json& spec, const std::string& csv_path) {
  reject_csv("wh-disjoint", csv_path);
  auto params = load_wh(spec);
  DisjointnessVerdict verdict =
      wh_verdict(params.first.generators, params.first.modulation, params.first.translation,
                 params.second.generators, params.second.modulation, params.second.translation,
                 params.claim, params.route);

  Outcome out;
  out.result = verdict_json(verdict);
  out.result["route"] = to_string(params.route);
  out.human = verdict_human(verdict);
  if (verdict.status == DisjointnessStatus::CertifiedSufficient)
    out.certified.push_back(to_string(verdict.claim));
  return out;
}

Outcome run_quasi(const json& spec, const std::string& csv_path) {
  reject_csv("quasi-affine", csv_path);
  auto params = load_quasi(spec);
  QuasiAffineReport report =
      quasi_affine_report(params.first.profiles, params.first.dilation, params.first.lattice,
                          params.second.profiles, params.second.dilation, params.second.lattice,
                          params.r_min);

  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"r", row.r},
                    {"pairs", pairs_json(row.pairs)},
                    {"all_disjoint", row.all_disjoint},
                    {"all_equal", row.all_equal},
                    {"all_first_inside_second", row.all_first_inside_second}});
  Outcome out;
  out.result = {{"r_min", report.r_min},
                {"integer_shortcut", report.integer_shortcut},
                {"truncated_evidence", report.truncated_evidence},
                {"rows", rows},
                {"orthogonal", to_string(report.orthogonal)},
                {"equal", to_string(report.equal)},
                {"contained", to_string(report.contained)},
                {"warnings", report.warnings}};
  std::string line = "orthogonal: " + to_string(report.orthogonal) +
                     "; equal: " + to_string(report.equal) +
                     "; contained: " + to_string(report.contained);
  if (report.integer_shortcut) line += " (integer shortcut)";
  else line += " (scales 0.." + std::to_string(report.r_min) + ")";
  out.human = with_warnings(std::move(line), report.warnings);
  if (report.orthogonal == DisjointnessStatus::CertifiedSufficient)
    out.certified.push_back("orthogonal");
  return out;
}

Outcome run_msf(const json& spec, const std::string& csv_path) {
  reject_csv("msf-check", csv_path);
  auto params = load_msf(spec);
  bool disjoint = msf_orthogonality_check(params.band, params.dilation, params.levels);

  Outcome out;
  out.result = {{"disjoint", disjoint},
                {"dilation", format_rational(params.dilation)},
                {"levels", params.levels},
                {"band", band_json(params.band)}};
  out.human = "fold supports at levels 1.." + std::to_string(params.levels) +
              " pairwise disjoint: " + (disjoint ? "yes" : "no");
  if (disjoint) {
    out.certified.push_back("disjoint");
    out.certified.push_back("orthogonal");
  }
  return out;
}

void validate_scenario(const json& spec, const std::string& command) {
  if (command == "multiplicity" || command == "sampling-check") load_multiplicity(spec);
  else if (command == "classify") load_classify(spec);
  else if (command == "classify-union") load_union(spec);
  else if (command == "mux-demo") load_mux(spec);
  else if (command == "wavelet-disjoint") load_affine(spec);
  else if (command == "wh-disjoint") load_wh(spec);
  else if (command == "quasi-affine") load_quasi(spec);
  else if (command == "msf-check") load_msf(spec);
  else
    throw ParseError("unknown command \"" + command +
                     "\" (expected multiplicity|sampling-check|classify|classify-union|"
                     "mux-demo|wavelet-disjoint|wh-disjoint|quasi-affine|msf-check)");
}

}  // namespace

const std::vector<std::string>& known_claims() {
  static const std::vector<std::string> claims{
      "sampling", "orthogonal", "equal", "contained", "contains", "overlap", "disjoint"};
  return claims;
}

nlohmann::json parse_scenario(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ParseError(std::string("scenario is not valid JSON: ") + error.what());
  }
  if (!spec.is_object()) throw ParseError("scenario must be a JSON object");
  std::string command = require_string(require_key(spec, "command", "scenario"), "command");
  validate_scenario(spec, command);
  return spec;
}

std::string canonical_spec(const nlohmann::json& spec) { return spec.dump(2) + "\n"; }

Outcome run_scenario(const nlohmann::json& spec, const std::string& csv_path) {
  std::string command = require_string(require_key(spec, "command", "scenario"), "command");
  if (command == "multiplicity") return run_multiplicity(spec, csv_path);
  if (command == "sampling-check") return run_sampling_check(spec, csv_path);
  if (command == "classify") return run_classify(spec, csv_path);
  if (command == "classify-union") return run_union(spec, csv_path);
  if (command == "mux-demo") return run_mux(spec, csv_path);
  if (command == "wavelet-disjoint") return run_affine(spec, csv_path);
  if (command == "wh-disjoint") return run_wh(spec, csv_path);
  if (command == "quasi-affine") return run_quasi(spec, csv_path);
  if (command == "msf-check") return run_msf(spec, csv_path);
  validate_scenario(spec, command);  // throws the canonical unknown-command error
  return {};
}

std::string render_report(const nlohmann::json& spec, const Outcome& outcome,
                          bool reproducible) {
  json report{{"schema", 1},
              {"command", spec.at("command")},
              {"input", spec},
              {"result", outcome.result}};
  if (!reproducible) report["generated_at"] = timestamp_utc();
  return report.dump(2) + "\n";
}

}  // namespace specfold::cli
