#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "specfold/band_set.hpp"
#include "specfold/lattice.hpp"

namespace specfold {

/// Finite sampled realization of one (band, step) system on a circle of
/// circumference `period`.
///
/// The model keeps the frequencies n with n/period inside the band and the
/// complex analysis matrix that maps a spectrum supported on those
/// frequencies to its samples at step spacing.  Everything downstream
/// (numeric frame bounds, cross Grams, projections, multiplexing) is plain
/// dense linear algebra on this matrix, which makes the model an independent
/// check on the exact fold computations.
///
/// Unit convention, fixed once and used everywhere:
///   - analysis() rows carry 1/sqrt(M), M = period/step, so the squared
///     singular values equal the fold multiplicities at the grid frequencies;
///   - frame bounds divide those by the step, making the orthonormal case
///     (band [0,1), step 1, period 1) come out exactly 1 and double
///     oversampling (band [-1/2,1/2), step 1/2) come out exactly 2;
///   - extended_analysis(rows) columns carry 1/sqrt(rows * step) so that the
///     self-Gram operator norm is again the upper frame bound, and two models
///     with the same period can be compared on a common index set.
class DiscreteModel {
 public:
  /// Throws Incommensurable when period/step is not an integer,
  /// EmptyBandGrid (with the smallest workable period) when no frequency
  /// n/period lands in the band, DimensionMismatch for bands with d != 1.
  DiscreteModel(BandSet band, Rational step, Rational period);

  const BandSet& band() const { return band_; }
  const Rational& step() const { return step_; }
  const Rational& period() const { return period_; }

  /// M = period/step: number of sample rows, and the modulus of the
  /// frequency collision arithmetic.
  long long sample_count() const { return sample_count_; }

  /// Frequencies n with n/period in the band, ascending.
  const std::vector<long long>& frequencies() const { return frequencies_; }

  /// M x N analysis matrix; entry (z, j) = exp(2*pi*i * n_j * z / M) / sqrt(M)
  /// with the phase reduced exactly in integer arithmetic first.
  const Eigen::MatrixXcd& analysis() const { return analysis_; }

  /// Periodic extension of the analysis map to `rows` sample indices
  /// (`rows` must be a positive multiple of sample_count()), with columns
  /// scaled by 1/sqrt(rows * step).
  Eigen::MatrixXcd extended_analysis(long long rows) const;

  /// {"M":..., "P":"...", "a":"...", "frequencies":[...], "norm_convention":...}
  /// with rationals rendered exactly; key order is deterministic.
  std::string dump_json() const;

 private:
  BandSet band_;
  Rational step_;
  Rational period_;
  long long sample_count_ = 0;
  std::vector<long long> frequencies_;
  Eigen::MatrixXcd analysis_;
};

/// lcm of the two sample counts: the natural common index set for comparing
/// the models.  Throws PeriodMismatch unless the periods agree.
long long common_extension(const DiscreteModel& first, const DiscreteModel& second);

/// Extremal squared singular values of the analysis matrix divided by the
/// step: (lower, upper) numeric frame bounds.  The lower bound skips exact
/// null directions; the rank cut uses relative tolerance 1e-12 and throws
/// RankAmbiguity when a singular value falls inside the ambiguity window
/// around it instead of guessing.
std::pair<double, double> frame_bounds_numeric(const DiscreteModel& model);

/// Operator norm of the cross Gram of the two extended analysis maps on the
/// common index set.  <= 1e-12 exactly when no frequency collision exists
/// (disjoint fold supports); equals the upper frame bound for a model
/// against itself.  Throws PeriodMismatch.
double cross_gram(const DiscreteModel& first, const DiscreteModel& second);

/// Spectral norm of P1*P2 - P2*P1, where P_i projects the common index space
/// onto the range of model i's extended analysis map.  Ranges of sampling
/// systems always commute, so this is a pure-rounding quantity (<= 1e-10)
/// for such pairs.  Throws PeriodMismatch.
double projections_commutator(const DiscreteModel& first, const DiscreteModel& second);

struct MultiplexResult {
  Eigen::VectorXcd first;   // recovered spectrum for the first model
  Eigen::VectorXcd second;  // recovered spectrum for the second model
  double crosstalk = 0.0;   // worst relative recovery error
};

/// Mix the two sample streams into one channel and recover both spectra by
/// least squares against each analysis map separately.  Requires
/// cross_gram <= 1e-10 (throws NotDisjoint) unless `force` is set; under the
/// precondition the crosstalk is <= 1e-9.
MultiplexResult multiplex_roundtrip(const DiscreteModel& first, const Eigen::VectorXcd& f,
                                    const DiscreteModel& second, const Eigen::VectorXcd& g,
                                    bool force = false);

/// Physical samples of the spectrum `coefficients`: sqrt(M) * analysis() * c,
/// i.e. plain exponential sums without the row normalization.
Eigen::VectorXcd sample_signal(const DiscreteModel& model, const Eigen::VectorXcd& coefficients);

/// Inverts sample_signal via the scaled adjoint.  Valid only when the step
/// is sampling for the band (the system is tight); throws NotTight otherwise.
Eigen::VectorXcd reconstruct_closed_form(const DiscreteModel& model,
                                         const Eigen::VectorXcd& samples);

/// Minimum-norm least-squares inversion of sample_signal; works for any
/// model, rank decided with the same loud-tie policy as frame_bounds_numeric.
Eigen::VectorXcd reconstruct_least_squares(const DiscreteModel& model,
                                           const Eigen::VectorXcd& samples);

}  // namespace specfold
