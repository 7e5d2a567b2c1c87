#pragma once

#include <complex>
#include <string>
#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/errors.hpp"
#include "specfold/rational.hpp"

namespace specfold {

/// Which side of the Fourier transform a profile describes.  Verdict
/// routines fold frequency profiles under the translation lattice and time
/// profiles under the modulation lattice, so mixing the two up is an error
/// they check for.
enum class ProfileDomain { Frequency, Time };

enum class ProfileForm { Characteristic, MeyerBell, FrazierJawerth, PiecewisePoly };

/// One polynomial piece of a user-supplied profile: value at x inside `box`
/// is coeffs[0] + coeffs[1] x + coeffs[2] x^2 + ...  (real coefficients).
struct ProfilePiece {
  RationalBox box;                // one-dimensional
  std::vector<Rational> coeffs;   // not all zero
};

/// Symbolic description of a generator function, rich enough to answer two
/// kinds of questions: exact set questions (what is the support, and how
/// does it fold under a lattice) and numeric point questions (what is the
/// value at x).  Immutable after construction.
///
/// The two built-in bells are pinned choices:
///  - meyer_bell: psi_hat(x) = e^{i pi x} b(|x|) with b rising as
///    sin(pi/2 nu(3t-1)) on [1/3,2/3] and falling as cos(pi/2 nu(3t/2-1))
///    on [2/3,4/3], where nu(t) = t^4(35 - 84t + 70t^2 - 20t^3).
///    Support [-4/3,-1/3) u [1/3,4/3).
///  - frazier_jawerth_base: real bell rising as sin(pi/2 nu(8|x|-1)) on
///    1/8 <= |x| <= 1/4 and falling as cos(pi/2 nu(4|x|-1)) on
///    1/4 <= |x| <= 1/2.  Support [-1/2,-1/8) u [1/8,1/2).
/// Only their supports feed verdicts; raw values matter for partition-sum
/// self-checks and numeric cross-checks, and reports flag them as a
/// convention, not a canonical object.
///
/// Every profile is nonzero almost everywhere on the interior of its
/// support (bells vanish only at piece endpoints; characteristic sets are 1
/// on their band; polynomial pieces that are identically zero are rejected).
/// This is what lets the fold of |profile|^2 inherit its support exactly
/// from the fold of the support set.
class SpectralProfile {
 public:
  /// Indicator of a non-empty band.  Any dimension.
  static SpectralProfile characteristic(BandSet support,
                                        ProfileDomain domain = ProfileDomain::Frequency);
  static SpectralProfile meyer_bell(ProfileDomain domain = ProfileDomain::Frequency);
  static SpectralProfile frazier_jawerth_base(ProfileDomain domain = ProfileDomain::Frequency);
  /// User-defined piecewise polynomial; pieces must be disjoint and
  /// one-dimensional, none identically zero.
  static SpectralProfile piecewise(std::vector<ProfilePiece> pieces,
                                   ProfileDomain domain = ProfileDomain::Frequency);

  ProfileDomain domain() const { return domain_; }
  ProfileForm form() const { return form_; }
  int dim() const { return support_.dim(); }
  const BandSet& support() const { return support_; }

  /// True when |value|^2 is a rational step function, so folds of it can be
  /// carried exactly.
  bool piecewise_constant() const;

  /// Pointwise value (one-dimensional profiles).  The rational overload
  /// settles set membership exactly; the double overload converts the
  /// argument exactly (doubles are binary rationals) and defers to it.
  std::complex<double> evaluate(const Rational& x) const;
  std::complex<double> evaluate(double x) const;

  /// Profile x -> value(factor * x); the support scales by 1/factor.
  SpectralProfile dilated(const Rational& factor) const;

  /// Dilation accumulated on top of the base form (1 for characteristic
  /// and piecewise profiles, which absorb dilations into their data).
  const Rational& argument_scale() const { return arg_scale_; }

  const std::vector<ProfilePiece>& pieces() const { return pieces_; }

 private:
  SpectralProfile(ProfileDomain domain, ProfileForm form, BandSet support)
      : domain_(domain), form_(form), support_(std::move(support)) {}

  ProfileDomain domain_;
  ProfileForm form_;
  BandSet support_;
  Rational arg_scale_ = 1;            // bells only
  std::vector<ProfilePiece> pieces_;  // PiecewisePoly only, in final coordinates
};

std::complex<double> eval_profile(const SpectralProfile& p, double x);

/// Same as p.dilated(factor).  Throws ZeroFactor when factor == 0.
SpectralProfile dilate_profile(const SpectralProfile& p, const Rational& factor);

/// Reads a profile description from a JSON object:
///   {"type": "meyer" | "fj" | "characteristic" | "piecewise",
///    "domain": "frequency" (default) | "time",
///    "scale": "<rational>"                 (optional dilation factor),
///    "band": "dim=1; [1/3,4/3)",           (characteristic only)
///    "pieces": [{"box": "[0,1/2)", "coeffs": ["1", "-1/2"]}, ...]}
/// Unrecognized keys raise UnknownKey; malformed documents raise ParseError.
SpectralProfile parse_profile_json(const std::string& text);

std::string to_string(ProfileDomain domain);
std::string to_string(ProfileForm form);

}  // namespace specfold
