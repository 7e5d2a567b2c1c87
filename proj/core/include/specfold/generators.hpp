#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/errors.hpp"
#include "specfold/lattice.hpp"
#include "specfold/profiles.hpp"
#include "specfold/range_classifier.hpp"
#include "specfold/torus_step.hpp"

namespace specfold {

/// Midpoint samples of a fold on the torus chart: values[i] is the fold at
/// (i + 1/2) / resolution.  Used when the profile is a smooth bell, whose
/// squared fold is not a step function.
struct SampledFold {
  long resolution = 0;
  std::vector<double> values;

  /// Rows "xi,value" after a header line, xi at full double precision.
  std::string to_csv() const;
};

/// The fold of |profile|^2 under a lattice: support is always exact (the
/// profile is nonzero a.e. inside its support, so the support of the fold
/// is the fold of the support).  Values come exactly as a step function
/// when |profile|^2 is piecewise constant, as midpoint samples otherwise.
struct PeriodizedProfile {
  BandSet support = BandSet::empty(1);
  std::optional<TorusStep> exact;
  std::optional<SampledFold> sampled;
};

/// Folds |p|^2 under the lattice: at xi the sum over integer translates k
/// of |p(A*^-1(xi + k))|^2.  The sampled path applies to one-dimensional
/// profiles; exact characteristic folds work in any dimension.
PeriodizedProfile periodization_sq(const SpectralProfile& p, const Lattice& lattice,
                                   long resolution = 2048);

/// How far a support-condition check can take a claim.
///  - CertifiedSufficient: a sufficient condition held; the claim is proved.
///  - NecessaryConditionsHold: every checkable necessary condition held;
///    the claim is consistent with the evidence but not established.
///  - Violated: a checked condition failed.  For equality/containment that
///    refutes the claim (the conditions are necessary); for orthogonality
///    it only means this route failed to certify it.
enum class DisjointnessStatus { CertifiedSufficient, NecessaryConditionsHold, Violated };

struct GeneratorSupportPair {
  BandSet first = BandSet::empty(1);
  BandSet second = BandSet::empty(1);
  SetRelation relation = SetRelation::Equal;
};

struct DisjointnessVerdict {
  RangeClaim claim = RangeClaim::Orthogonal;
  DisjointnessStatus status = DisjointnessStatus::Violated;
  /// Folded frequency-side supports (E_j, F_j), one entry per generator pair.
  std::vector<GeneratorSupportPair> frequency_pairs;
  /// Folded time-side supports; filled only on routes that use them.
  std::vector<GeneratorSupportPair> time_pairs;
  /// Whether the exact identity X*A = Y*B was examined, and its outcome.
  bool side_condition_checked = false;
  bool side_condition_holds = false;
  /// "frequency-supports" or "time-supports" when status is CertifiedSufficient.
  std::string certified_route;
  std::vector<std::string> warnings;
};

/// Compares two translate-and-dilate generator families through their
/// folded frequency supports.  Orthogonality is certified when all pairs
/// have disjoint folds (sufficient); equality and containment are graded by
/// their necessary support conditions only.  Profiles must be
/// frequency-domain and are paired by index.
DisjointnessVerdict affine_verdict(const std::vector<SpectralProfile>& psis,
                                   const Lattice& x_lattice,
                                   const std::vector<SpectralProfile>& phis,
                                   const Lattice& y_lattice, RangeClaim claim);

/// One scale level of the shift-invariant comparison: folded supports of
/// pair j under the scale-r lattices, plus the aggregate answers.
struct QuasiAffineRow {
  long r = 0;
  std::vector<GeneratorSupportPair> pairs;
  bool all_disjoint = false;
  bool all_equal = false;
  bool all_first_inside_second = false;
};

struct QuasiAffineReport {
  long r_min = 0;
  /// Both lattices are the integer lattice and the two dilations are the
  /// same integer: disjointness at r = 0 alone certifies orthogonality.
  bool integer_shortcut = false;
  /// Orthogonality was certified from the sampled scales only; the full
  /// statement quantifies over every r <= 0.
  bool truncated_evidence = false;
  std::vector<QuasiAffineRow> rows;  // r = 0 down to r_min
  DisjointnessStatus orthogonal = DisjointnessStatus::Violated;
  DisjointnessStatus equal = DisjointnessStatus::Violated;
  DisjointnessStatus contained = DisjointnessStatus::Violated;  // first inside second
  std::vector<std::string> warnings;
};

/// Scale-by-scale support comparison for shift-invariant (quasi-affine)
/// systems with scalar dilations a, b and translation lattices X, Y: at
/// level r the pair-j supports are the folds of |psi_j|^2 and |phi_j|^2
/// under X a^r and Y b^r.  Requires |a| > 1 and |b| > 1 (NotExpansive
/// otherwise) and r_min <= 0.
QuasiAffineReport quasi_affine_report(const std::vector<SpectralProfile>& psis,
                                      const Rational& a_dilation, const Lattice& x_lattice,
                                      const std::vector<SpectralProfile>& phis,
                                      const Rational& b_dilation, const Lattice& y_lattice,
                                      long r_min = -8);

/// One generator of a modulation-translation system, described on either
/// side of the Fourier transform (or both).  The frequency slot must hold a
/// frequency-domain profile and the time slot a time-domain one.
struct WhGenerator {
  std::optional<SpectralProfile> frequency;
  std::optional<SpectralProfile> time;
};

enum class WhRoute { Auto, Frequency, Time };

/// Compares two modulation-translation systems (modulation lattices A, B;
/// translation lattices X, Y).  Frequency profiles fold under X (resp. Y),
/// time profiles under A (resp. B).  Orthogonality is certified either by
/// disjoint frequency folds, or — when the exact identity X*A = Y*B holds —
/// by disjoint time folds.  Equality and containment check the necessary
/// support conditions on every side that has data.
DisjointnessVerdict wh_verdict(const std::vector<WhGenerator>& fs, const Lattice& a_lattice,
                               const Lattice& x_lattice, const std::vector<WhGenerator>& gs,
                               const Lattice& b_lattice, const Lattice& y_lattice,
                               RangeClaim claim, WhRoute route = WhRoute::Auto);

/// [psi_0 .. psi_{n-1}] with psi_k the base bell dilated by 4^k, giving
/// pairwise disjoint folded supports at translation step 1.
std::vector<SpectralProfile> fj_family(int n);

/// True iff the folds of W under dilation^j have pairwise disjoint supports
/// for 1 <= j < l <= j_max.  Requires dilation > 1.
bool msf_orthogonality_check(const BandSet& w, const Rational& dilation, int j_max);

std::string to_string(DisjointnessStatus status);
std::string to_string(WhRoute route);

}  // namespace specfold
