#include "specfold/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <utility>

#include "specfold/periodization.hpp"

namespace specfold {
namespace {

void require_frequency(const std::vector<SpectralProfile>& profiles, const char* side) {
  for (const SpectralProfile& p : profiles) {
    if (p.domain() != ProfileDomain::Frequency)
      throw ValidationError(std::string(side) +
                            " profiles must be frequency-domain for this comparison");
  }
}

GeneratorSupportPair support_pair(BandSet first, BandSet second) {
  GeneratorSupportPair pair;
  pair.relation = relation(first, second);
  pair.first = std::move(first);
  pair.second = std::move(second);
  return pair;
}

bool pair_disjoint(const GeneratorSupportPair& p) {
  return p.relation == SetRelation::Disjoint;
}
bool pair_equal(const GeneratorSupportPair& p) { return p.relation == SetRelation::Equal; }
bool pair_first_inside(const GeneratorSupportPair& p) {
  return p.relation == SetRelation::Equal || p.relation == SetRelation::SubsetProper;
}

bool all_pairs(const std::vector<GeneratorSupportPair>& pairs,
               bool (*pred)(const GeneratorSupportPair&)) {
  return std::all_of(pairs.begin(), pairs.end(), pred);
}

constexpr const char* kNotRefuted =
    "overlapping folded supports do not refute orthogonality (disjointness is a "
    "sufficient condition, not a necessary one); certification by this route failed";

// Grades a claim against one family of support pairs, where disjointness is
// sufficient for orthogonality and equality/containment are necessary-only.
void grade_single_route(DisjointnessVerdict& verdict,
                        const std::vector<GeneratorSupportPair>& pairs, const char* route) {
  switch (verdict.claim) {
    case RangeClaim::Orthogonal:
      if (all_pairs(pairs, pair_disjoint)) {
        verdict.status = DisjointnessStatus::CertifiedSufficient;
        verdict.certified_route = route;
      } else {
        verdict.status = DisjointnessStatus::Violated;
        verdict.warnings.push_back(kNotRefuted);
      }
      return;
    case RangeClaim::Equal:
      verdict.status = all_pairs(pairs, pair_equal) ? DisjointnessStatus::NecessaryConditionsHold
                                                    : DisjointnessStatus::Violated;
      return;
    case RangeClaim::Contained:
      verdict.status = all_pairs(pairs, pair_first_inside)
                           ? DisjointnessStatus::NecessaryConditionsHold
                           : DisjointnessStatus::Violated;
      return;
    case RangeClaim::Overlap:
      break;
  }
  throw ValidationError("claim \"overlap\" is not graded for generator systems");
}

void check_claim_and_lengths(size_t first, size_t second, RangeClaim claim) {
  if (first != second)
    throw LengthMismatch("generator lists differ in length: " + std::to_string(first) +
                         " vs " + std::to_string(second));
  if (first == 0) throw EmptyList("generator lists are empty");
  if (claim == RangeClaim::Overlap)
    throw ValidationError(
        "claim \"overlap\" is not graded for generator systems; compare supports directly");
}

bool is_integer_lattice(const Lattice& lattice) {
  for (const Rational& q : lattice.diag())
    if (q != 1) return false;
  for (const Rational& s : lattice.shift())
    if (s != 0) return false;
  return true;
}

Lattice scaled_lattice(const Lattice& lattice, const Rational& factor) {
  std::vector<Rational> diag;
  diag.reserve(lattice.diag().size());
  for (const Rational& q : lattice.diag()) diag.push_back(q * factor);
  return Lattice(std::move(diag));
}

}  // namespace

std::string SampledFold::to_csv() const {
  std::ostringstream os;
  os << "xi,value\n";
  char row[80];
  for (long i = 0; i < resolution; ++i) {
    const double xi = (static_cast<double>(i) + 0.5) / static_cast<double>(resolution);
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", xi, values[static_cast<size_t>(i)]);
    os << row;
  }
  return os.str();
}

PeriodizedProfile periodization_sq(const SpectralProfile& p, const Lattice& lattice,
                                   long resolution) {
  if (p.dim() != lattice.dim())
    throw DimensionMismatch("profile dimension " + std::to_string(p.dim()) +
                            " does not match lattice dimension " +
                            std::to_string(lattice.dim()));
  PeriodizedProfile out;

  if (p.piecewise_constant()) {
    if (p.form() == ProfileForm::Characteristic) {
      out.exact = multiplicity(p.support(), lattice);
    } else {
      // Disjoint constant pieces: fold each one and stack the folds,
      // weighted by the squared piece value.  All exact.
      std::optional<TorusStep> acc;
      for (const ProfilePiece& piece : p.pieces()) {
        const Rational weight = piece.coeffs.front() * piece.coeffs.front();
        TorusStep fold =
            multiplicity(BandSet::from_boxes(1, {piece.box}), lattice).scaled(weight);
        acc = acc ? *acc + fold : std::move(fold);
      }
      out.exact = std::move(*acc);
    }
    out.support = out.exact->support();
    return out;
  }

  if (p.dim() != 1)
    throw DimensionMismatch("sampled folds handle one-dimensional profiles only");
  if (resolution < 1) throw ValidationError("fold resolution must be positive");

  // The support of the fold is exact regardless of how values are obtained:
  // the profile is nonzero a.e. inside its support.
  out.support = multiplicity(p.support(), lattice).support();

  const Rational x = lattice.diag().front();
  const RationalBox box = p.support().bounding_box();
  const Rational end_a = x * box.lo(0);
  const Rational end_b = x * box.hi(0);
  const Rational lo = std::min(end_a, end_b);
  const Rational hi = std::max(end_a, end_b);

  SampledFold grid;
  grid.resolution = resolution;
  grid.values.reserve(static_cast<size_t>(resolution));
  for (long i = 0; i < resolution; ++i) {
    const Rational xi = Rational(2 * i + 1) / Rational(2 * resolution);
    // Translates with xi + k inside the scaled support, padded by one on
    // each side; evaluate() settles membership exactly.
    const long long k_lo = to_longlong_checked(rational_floor(lo - xi)) - 1;
    const long long k_hi = to_longlong_checked(rational_ceil(hi - xi)) + 1;
    double sum = 0.0;
    for (long long k = k_lo; k <= k_hi; ++k) {
      const Rational arg = (xi + Rational(k)) / x;
      sum += std::norm(p.evaluate(arg));
    }
    grid.values.push_back(sum);
  }
  out.sampled = std::move(grid);
  return out;
}

DisjointnessVerdict affine_verdict(const std::vector<SpectralProfile>& psis,
                                   const Lattice& x_lattice,
                                   const std::vector<SpectralProfile>& phis,
                                   const Lattice& y_lattice, RangeClaim claim) {
  check_claim_and_lengths(psis.size(), phis.size(), claim);
  require_frequency(psis, "first-system");
  require_frequency(phis, "second-system");
  if (x_lattice.dim() != y_lattice.dim())
    throw DimensionMismatch("translation lattices live in different dimensions");

  DisjointnessVerdict verdict;
  verdict.claim = claim;
  for (size_t j = 0; j < psis.size(); ++j) {
    verdict.frequency_pairs.push_back(
        support_pair(periodization_sq(psis[j], x_lattice).support,
                     periodization_sq(phis[j], y_lattice).support));
  }
  grade_single_route(verdict, verdict.frequency_pairs, "frequency-supports");
  return verdict;
}

QuasiAffineReport quasi_affine_report(const std::vector<SpectralProfile>& psis,
                                      const Rational& a_dilation, const Lattice& x_lattice,
                                      const std::vector<SpectralProfile>& phis,
                                      const Rational& b_dilation, const Lattice& y_lattice,
                                      long r_min) {
  check_claim_and_lengths(psis.size(), phis.size(), RangeClaim::Orthogonal);
  require_frequency(psis, "first-system");
  require_frequency(phis, "second-system");
  if (x_lattice.dim() != y_lattice.dim())
    throw DimensionMismatch("translation lattices live in different dimensions");
  if (!(a_dilation > 1 || a_dilation < -1))
    throw NotExpansive("first dilation must satisfy |a| > 1");
  if (!(b_dilation > 1 || b_dilation < -1))
    throw NotExpansive("second dilation must satisfy |b| > 1");
  if (r_min > 0) throw ValidationError("r_min must be a non-positive scale index");

  QuasiAffineReport report;
  report.r_min = r_min;
  report.integer_shortcut = is_integer_lattice(x_lattice) && is_integer_lattice(y_lattice) &&
                            a_dilation == b_dilation && denominator(a_dilation) == 1;

  for (long r = 0; r >= r_min; --r) {
    QuasiAffineRow row;
    row.r = r;
    const Lattice xr = scaled_lattice(x_lattice, rational_pow(a_dilation, r));
    const Lattice yr = scaled_lattice(y_lattice, rational_pow(b_dilation, r));
    for (size_t j = 0; j < psis.size(); ++j) {
      row.pairs.push_back(support_pair(periodization_sq(psis[j], xr).support,
                                       periodization_sq(phis[j], yr).support));
    }
    row.all_disjoint = all_pairs(row.pairs, pair_disjoint);
    row.all_equal = all_pairs(row.pairs, pair_equal);
    row.all_first_inside_second = all_pairs(row.pairs, pair_first_inside);
    report.rows.push_back(std::move(row));
  }

  const bool every_disjoint = std::all_of(report.rows.begin(), report.rows.end(),
                                          [](const QuasiAffineRow& r) { return r.all_disjoint; });
  const bool every_equal = std::all_of(report.rows.begin(), report.rows.end(),
                                       [](const QuasiAffineRow& r) { return r.all_equal; });
  const bool every_contained =
      std::all_of(report.rows.begin(), report.rows.end(),
                  [](const QuasiAffineRow& r) { return r.all_first_inside_second; });

  if (report.integer_shortcut && report.rows.front().all_disjoint) {
    // Integer dilation on the integer lattice: scale-0 disjointness alone
    // settles every scale, so no truncation caveat applies.
    report.orthogonal = DisjointnessStatus::CertifiedSufficient;
    report.truncated_evidence = false;
  } else if (every_disjoint) {
    report.orthogonal = DisjointnessStatus::CertifiedSufficient;
    report.truncated_evidence = true;
    report.warnings.push_back(
        "disjointness verified for r in [" + std::to_string(r_min) +
        ", 0] only; the full condition quantifies over every scale r <= 0");
  } else {
    report.orthogonal = DisjointnessStatus::Violated;
    report.warnings.push_back(kNotRefuted);
  }
  report.equal =
      every_equal ? DisjointnessStatus::NecessaryConditionsHold : DisjointnessStatus::Violated;
  report.contained = every_contained ? DisjointnessStatus::NecessaryConditionsHold
                                     : DisjointnessStatus::Violated;
  return report;
}

namespace {

void check_wh_side(const std::vector<WhGenerator>& list, const char* side) {
  for (size_t j = 0; j < list.size(); ++j) {
    const WhGenerator& g = list[j];
    const std::string who = std::string(side) + " generator " + std::to_string(j);
    if (!g.frequency && !g.time) throw ValidationError(who + " carries no profile");
    if (g.frequency && g.frequency->domain() != ProfileDomain::Frequency)
      throw ValidationError(who + ": the frequency slot holds a time-domain profile");
    if (g.time && g.time->domain() != ProfileDomain::Time)
      throw ValidationError(who + ": the time slot holds a frequency-domain profile");
  }
}

bool side_has(const std::vector<WhGenerator>& list,
              const std::optional<SpectralProfile> WhGenerator::*slot) {
  return std::all_of(list.begin(), list.end(),
                     [slot](const WhGenerator& g) { return (g.*slot).has_value(); });
}

}  // namespace

DisjointnessVerdict wh_verdict(const std::vector<WhGenerator>& fs, const Lattice& a_lattice,
                               const Lattice& x_lattice, const std::vector<WhGenerator>& gs,
                               const Lattice& b_lattice, const Lattice& y_lattice,
                               RangeClaim claim, WhRoute route) {
  check_claim_and_lengths(fs.size(), gs.size(), claim);
  check_wh_side(fs, "first-system");
  check_wh_side(gs, "second-system");
  const int d = x_lattice.dim();
  if (a_lattice.dim() != d || b_lattice.dim() != d || y_lattice.dim() != d)
    throw DimensionMismatch("all four lattices must live in the same dimension");

  const bool freq_available =
      side_has(fs, &WhGenerator::frequency) && side_has(gs, &WhGenerator::frequency);
  const bool time_available =
      side_has(fs, &WhGenerator::time) && side_has(gs, &WhGenerator::time);

  if (route == WhRoute::Frequency && !freq_available)
    throw ValidationError(
        "frequency route requires frequency-domain profiles for every generator");
  if (route == WhRoute::Time && !time_available)
    throw MissingTimeProfile("time route requires time-domain profiles for every generator");
  if (!freq_available && !time_available)
    throw ValidationError(
        "no common domain: supply frequency profiles on both systems or time profiles on both");

  DisjointnessVerdict verdict;
  verdict.claim = claim;

  // Exact side condition X*A = Y*B, per axis; never decided in floating point.
  verdict.side_condition_checked = true;
  verdict.side_condition_holds = true;
  for (int i = 0; i < d; ++i) {
    const Rational lhs = x_lattice.diag()[static_cast<size_t>(i)] *
                         a_lattice.diag()[static_cast<size_t>(i)];
    const Rational rhs = y_lattice.diag()[static_cast<size_t>(i)] *
                         b_lattice.diag()[static_cast<size_t>(i)];
    if (lhs != rhs) {
      verdict.side_condition_holds = false;
      break;
    }
  }

  if (freq_available) {
    for (size_t j = 0; j < fs.size(); ++j) {
      verdict.frequency_pairs.push_back(
          support_pair(periodization_sq(*fs[j].frequency, x_lattice).support,
                       periodization_sq(*gs[j].frequency, y_lattice).support));
    }
  }
  if (time_available) {
    for (size_t j = 0; j < fs.size(); ++j) {
      verdict.time_pairs.push_back(
          support_pair(periodization_sq(*fs[j].time, a_lattice).support,
                       periodization_sq(*gs[j].time, b_lattice).support));
    }
  }

  if (claim == RangeClaim::Orthogonal) {
    const bool try_freq = route != WhRoute::Time && freq_available;
    const bool try_time = route != WhRoute::Frequency && time_available;
    const bool freq_disjoint = freq_available && all_pairs(verdict.frequency_pairs, pair_disjoint);
    const bool time_disjoint = time_available && all_pairs(verdict.time_pairs, pair_disjoint);

    if (try_freq && freq_disjoint) {
      verdict.status = DisjointnessStatus::CertifiedSufficient;
      verdict.certified_route = "frequency-supports";
    } else if (try_time && time_disjoint && verdict.side_condition_holds) {
      verdict.status = DisjointnessStatus::CertifiedSufficient;
      verdict.certified_route = "time-supports";
    } else {
      verdict.status = DisjointnessStatus::Violated;
      if (try_freq && !freq_disjoint)
        verdict.warnings.push_back("frequency-side folds overlap");
      if (try_time && !time_disjoint)
        verdict.warnings.push_back("time-side folds overlap");
      if (try_time && time_disjoint && !verdict.side_condition_holds)
        verdict.warnings.push_back(
            "time-side folds are disjoint but the exact identity X*A = Y*B fails, so the "
            "time route certifies nothing");
      verdict.warnings.push_back(kNotRefuted);
    }
    return verdict;
  }

  // Equality / containment: necessary conditions on every side with data.
  bool (*pred)(const GeneratorSupportPair&) =
      claim == RangeClaim::Equal ? pair_equal : pair_first_inside;
  bool ok = true;
  if (freq_available) ok = ok && all_pairs(verdict.frequency_pairs, pred);
  if (time_available) ok = ok && all_pairs(verdict.time_pairs, pred);
  verdict.status =
      ok ? DisjointnessStatus::NecessaryConditionsHold : DisjointnessStatus::Violated;
  if (ok && !(freq_available && time_available))
    verdict.warnings.push_back(freq_available
                                   ? "only frequency-side necessary conditions were checkable"
                                   : "only time-side necessary conditions were checkable");
  return verdict;
}

std::vector<SpectralProfile> fj_family(int n) {
  if (n < 1) throw ValidationError("family size must be at least 1");
  const SpectralProfile base = SpectralProfile::frazier_jawerth_base();
  std::vector<SpectralProfile> family;
  family.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    family.push_back(base.dilated(rational_pow(Rational(4), k)));
  return family;
}

bool msf_orthogonality_check(const BandSet& w, const Rational& dilation, int j_max) {
  if (!(dilation > 1)) throw NotExpansive("dilation must exceed 1");
  if (j_max < 1) throw ValidationError("j_max must be at least 1");
  std::vector<BandSet> supports;
  supports.reserve(static_cast<size_t>(j_max));
  for (int j = 1; j <= j_max; ++j) {
    const Rational dj = rational_pow(dilation, -static_cast<long>(j));
    std::vector<Rational> diag(static_cast<size_t>(w.dim()), dj);
    supports.push_back(multiplicity(w, Lattice(std::move(diag))).support());
  }
  for (size_t j = 0; j < supports.size(); ++j)
    for (size_t l = j + 1; l < supports.size(); ++l)
      if (!set_intersect(supports[j], supports[l]).is_empty()) return false;
  return true;
}

std::string to_string(DisjointnessStatus status) {
  switch (status) {
    case DisjointnessStatus::CertifiedSufficient: return "certified-sufficient";
    case DisjointnessStatus::NecessaryConditionsHold: return "necessary-conditions-hold";
    case DisjointnessStatus::Violated: return "violated";
  }
  return "unknown";
}

std::string to_string(WhRoute route) {
  switch (route) {
    case WhRoute::Auto: return "auto";
    case WhRoute::Frequency: return "frequency";
    case WhRoute::Time: return "time";
  }
  return "unknown";
}

}  // namespace specfold
