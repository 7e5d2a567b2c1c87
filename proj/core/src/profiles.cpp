#include "specfold/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

namespace specfold {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Smooth ramp used by both bells: 0 for t <= 0, 1 for t >= 1, and a C^3
// join in between (nu(t) + nu(1-t) = 1), so |bell|^2 partitions cleanly.
double nu(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

// Rising-then-falling bell of the frequency envelope: nonzero for
// 1/3 < t < 4/3, reaching 1 at t = 2/3.
double meyer_envelope(double t) {
  if (t <= 1.0 / 3.0 || t >= 4.0 / 3.0) return 0.0;
  if (t <= 2.0 / 3.0) return std::sin(kPi / 2.0 * nu(3.0 * t - 1.0));
  return std::cos(kPi / 2.0 * nu(1.5 * t - 1.0));
}

// Same shape squeezed into 1/8 < t < 1/2, peaking on t = 1/4.
double fj_envelope(double t) {
  if (t <= 1.0 / 8.0 || t >= 0.5) return 0.0;
  if (t <= 0.25) return std::sin(kPi / 2.0 * nu(8.0 * t - 1.0));
  return std::cos(kPi / 2.0 * nu(4.0 * t - 1.0));
}

BandSet symmetric_band(const Rational& inner, const Rational& outer) {
  std::vector<RationalBox> boxes;
  boxes.emplace_back(std::vector<Rational>{-outer}, std::vector<Rational>{-inner});
  boxes.emplace_back(std::vector<Rational>{inner}, std::vector<Rational>{outer});
  return BandSet::from_boxes(1, std::move(boxes));
}

bool all_zero(const std::vector<Rational>& coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Rational& c) { return c == 0; });
}

}  // namespace

SpectralProfile SpectralProfile::characteristic(BandSet support, ProfileDomain domain) {
  if (support.is_empty())
    throw EmptyBand("characteristic profile of an empty band is identically zero");
  return SpectralProfile(domain, ProfileForm::Characteristic, std::move(support));
}

SpectralProfile SpectralProfile::meyer_bell(ProfileDomain domain) {
  return SpectralProfile(domain, ProfileForm::MeyerBell,
                         symmetric_band(Rational(1, 3), Rational(4, 3)));
}

SpectralProfile SpectralProfile::frazier_jawerth_base(ProfileDomain domain) {
  return SpectralProfile(domain, ProfileForm::FrazierJawerth,
                         symmetric_band(Rational(1, 8), Rational(1, 2)));
}

SpectralProfile SpectralProfile::piecewise(std::vector<ProfilePiece> pieces,
                                           ProfileDomain domain) {
  if (pieces.empty()) throw EmptyList("piecewise profile needs at least one piece");
  std::vector<RationalBox> boxes;
  Rational volume_sum(0);
  for (size_t i = 0; i < pieces.size(); ++i) {
    const ProfilePiece& piece = pieces[i];
    if (piece.box.dim() != 1)
      throw DimensionMismatch("piecewise profiles are one-dimensional");
    if (all_zero(piece.coeffs))
      throw ValidationError("piece " + std::to_string(i) +
                            " is identically zero; drop it instead (profiles must be "
                            "nonzero a.e. on their support)");
    volume_sum += piece.box.volume();
    boxes.push_back(piece.box);
  }
  BandSet support = BandSet::from_boxes(1, std::move(boxes));
  if (support.measure() != volume_sum)
    throw ValidationError("piecewise profile pieces overlap");
  SpectralProfile p(domain, ProfileForm::PiecewisePoly, std::move(support));
  p.pieces_ = std::move(pieces);
  return p;
}

bool SpectralProfile::piecewise_constant() const {
  switch (form_) {
    case ProfileForm::Characteristic:
      return true;
    case ProfileForm::PiecewisePoly:
      return std::all_of(pieces_.begin(), pieces_.end(), [](const ProfilePiece& p) {
        for (size_t k = 1; k < p.coeffs.size(); ++k)
          if (p.coeffs[k] != 0) return false;
        return true;
      });
    case ProfileForm::MeyerBell:
    case ProfileForm::FrazierJawerth:
      return false;
  }
  return false;
}

std::complex<double> SpectralProfile::evaluate(const Rational& x) const {
  if (dim() != 1)
    throw DimensionMismatch("pointwise evaluation expects a one-dimensional profile");
  switch (form_) {
    case ProfileForm::Characteristic:
      return support_.contains({x}) ? 1.0 : 0.0;
    case ProfileForm::PiecewisePoly: {
      for (const ProfilePiece& piece : pieces_) {
        if (!piece.box.contains({x})) continue;
        const double xd = to_double(x);
        double value = 0.0;
        for (size_t k = piece.coeffs.size(); k-- > 0;)
          value = value * xd + to_double(piece.coeffs[k]);
        return value;
      }
      return 0.0;
    }
    case ProfileForm::MeyerBell: {
      const double arg = to_double(arg_scale_ * x);
      return std::polar(meyer_envelope(std::abs(arg)), kPi * arg);
    }
    case ProfileForm::FrazierJawerth: {
      const double arg = to_double(arg_scale_ * x);
      return fj_envelope(std::abs(arg));
    }
  }
  return 0.0;
}

std::complex<double> SpectralProfile::evaluate(double x) const {
  return evaluate(Rational(x));
}

SpectralProfile SpectralProfile::dilated(const Rational& factor) const {
  if (factor == 0) throw ZeroFactor("dilation factor must be nonzero");
  const Rational inv = Rational(1) / factor;
  const std::vector<Rational> scale(static_cast<size_t>(dim()), inv);
  const std::vector<Rational> shift(static_cast<size_t>(dim()), Rational(0));
  SpectralProfile out(domain_, form_, affine_map(support_, scale, shift));
  out.arg_scale_ = arg_scale_ * factor;
  out.pieces_ = pieces_;
  for (ProfilePiece& piece : out.pieces_) {
    const Rational a = piece.box.lo(0) * inv;
    const Rational b = piece.box.hi(0) * inv;
    piece.box = RationalBox({std::min(a, b)}, {std::max(a, b)});
    for (size_t k = 0; k < piece.coeffs.size(); ++k)
      piece.coeffs[k] *= rational_pow(factor, static_cast<long>(k));
  }
  return out;
}

std::complex<double> eval_profile(const SpectralProfile& p, double x) {
  return p.evaluate(x);
}

SpectralProfile dilate_profile(const SpectralProfile& p, const Rational& factor) {
  return p.dilated(factor);
}

namespace {

using nlohmann::json;

Rational rational_field(const json& value, const std::string& what) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw ParseError(what + " must be a rational string like \"2/3\" or an integer");
}

std::string string_field(const json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + " must be a string");
  return value.get<std::string>();
}

void check_keys(const json& object, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw UnknownKey("unknown key \"" + item.key() + "\" in " + where);
  }
}

std::vector<ProfilePiece> parse_pieces(const json& value) {
  if (!value.is_array()) throw ParseError("\"pieces\" must be an array");
  std::vector<ProfilePiece> pieces;
  for (const json& entry : value) {
    if (!entry.is_object()) throw ParseError("each piece must be an object");
    check_keys(entry, {"box", "coeffs"}, "piece");
    if (!entry.contains("box") || !entry.contains("coeffs"))
      throw ParseError("each piece needs \"box\" and \"coeffs\"");
    RationalBox box = parse_box(string_field(entry["box"], "piece box"));
    const json& coeffs_json = entry["coeffs"];
    if (!coeffs_json.is_array()) throw ParseError("piece \"coeffs\" must be an array");
    std::vector<Rational> coeffs;
    for (const json& c : coeffs_json) coeffs.push_back(rational_field(c, "coefficient"));
    pieces.push_back(ProfilePiece{std::move(box), std::move(coeffs)});
  }
  return pieces;
}

}  // namespace

SpectralProfile parse_profile_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("profile JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("profile JSON must be an object");
  if (!doc.contains("type")) throw ParseError("profile JSON needs a \"type\" key");
  const std::string type = string_field(doc["type"], "\"type\"");

  std::vector<std::string> allowed = {"type", "domain", "scale"};
  if (type == "characteristic") allowed.push_back("band");
  if (type == "piecewise") allowed.push_back("pieces");
  check_keys(doc, allowed, "profile");

  ProfileDomain domain = ProfileDomain::Frequency;
  if (doc.contains("domain")) {
    const std::string name = string_field(doc["domain"], "\"domain\"");
    if (name == "frequency")
      domain = ProfileDomain::Frequency;
    else if (name == "time")
      domain = ProfileDomain::Time;
    else
      throw ParseError("\"domain\" must be \"frequency\" or \"time\"");
  }

  SpectralProfile profile = [&]() -> SpectralProfile {
    if (type == "meyer") return SpectralProfile::meyer_bell(domain);
    if (type == "fj") return SpectralProfile::frazier_jawerth_base(domain);
    if (type == "characteristic") {
      if (!doc.contains("band"))
        throw ParseError("characteristic profile needs a \"band\" key");
      return SpectralProfile::characteristic(
          parse_band_set(string_field(doc["band"], "\"band\"")), domain);
    }
    if (type == "piecewise") {
      if (!doc.contains("pieces"))
        throw ParseError("piecewise profile needs a \"pieces\" key");
      return SpectralProfile::piecewise(parse_pieces(doc["pieces"]), domain);
    }
    throw ParseError("unknown profile type \"" + type +
                     "\" (expected meyer, fj, characteristic, or piecewise)");
  }();

  if (doc.contains("scale")) profile = profile.dilated(rational_field(doc["scale"], "\"scale\""));
  return profile;
}

std::string to_string(ProfileDomain domain) {
  return domain == ProfileDomain::Frequency ? "frequency" : "time";
}

std::string to_string(ProfileForm form) {
  switch (form) {
    case ProfileForm::Characteristic: return "characteristic";
    case ProfileForm::MeyerBell: return "meyer-bell";
    case ProfileForm::FrazierJawerth: return "frazier-jawerth";
    case ProfileForm::PiecewisePoly: return "piecewise";
  }
  return "unknown";
}

}  // namespace specfold
