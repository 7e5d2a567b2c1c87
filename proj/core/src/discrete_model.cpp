#include "specfold/discrete_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "specfold/errors.hpp"
#include "specfold/periodization.hpp"

namespace specfold {

namespace {

constexpr double kRankTolerance = 1e-12;

// Count the singular values above rel_tol * largest.  Values inside
// [tol/10, 100*tol] are neither clearly signal nor clearly rounding noise;
// refuse to decide for them.  The window is asymmetric because backward
// errors of the dense solvers sit a decade or two above machine epsilon,
// while genuine spectra in this library stay several orders above the
// threshold.
long long checked_rank(const Eigen::VectorXd& singular_values,
                       double rel_tol = kRankTolerance) {
  if (singular_values.size() == 0) return 0;
  const double largest = singular_values(0);
  if (!(largest > 0)) return 0;
  const double tol = rel_tol * largest;
  long long rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    const double s = singular_values(i);
    if (s > tol / 10 && s < tol * 100)
      throw RankAmbiguity("singular value " + std::to_string(s) +
                          " falls inside the rank ambiguity window around " +
                          std::to_string(tol));
    if (s > tol) ++rank;
  }
  return rank;
}

std::complex<double> unit_phase(long long numerator, long long modulus) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(numerator) /
                             static_cast<double>(modulus));
}

long long mod_reduce(long long n, long long modulus) {
  long long r = n % modulus;
  return r < 0 ? r + modulus : r;
}

void require_same_period(const DiscreteModel& first, const DiscreteModel& second) {
  if (first.period() != second.period())
    throw PeriodMismatch("models have different periods (" + format_rational(first.period()) +
                         " vs " + format_rational(second.period()) + ")");
}

// Orthonormal basis of the column space, rank decided loudly.
Eigen::MatrixXcd range_basis(const Eigen::MatrixXcd& matrix) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeThinU);
  long long rank = checked_rank(svd.singularValues());
  return svd.matrixU().leftCols(rank);
}

// Minimum-norm least squares with the loud-tie rank policy.
Eigen::VectorXcd solve_least_squares(const Eigen::MatrixXcd& matrix,
                                     const Eigen::VectorXcd& rhs) {
  checked_rank(Eigen::BDCSVD<Eigen::MatrixXcd>(matrix).singularValues());
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(matrix);
  cod.setThreshold(kRankTolerance);
  return cod.solve(rhs);
}

double relative_error(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& recovered) {
  const double scale = reference.norm();
  const double err = (recovered - reference).norm();
  return scale > 0 ? err / scale : err;
}

}  // namespace

DiscreteModel::DiscreteModel(BandSet band, Rational step, Rational period)
    : band_(std::move(band)), step_(std::move(step)), period_(std::move(period)) {
  if (band_.dim() != 1)
    throw DimensionMismatch("the discrete model handles one-dimensional bands only (got dim=" +
                            std::to_string(band_.dim()) + ")");
  if (step_ <= 0) throw ValidationError("step must be positive");
  if (period_ <= 0) throw ValidationError("period must be positive");

  const Rational ratio = period_ / step_;
  if (boost::multiprecision::denominator(ratio) != 1)
    throw Incommensurable("period/step = " + format_rational(ratio) +
                          " is not an integer; the grid does not close up");
  sample_count_ = to_longlong_checked(boost::multiprecision::numerator(ratio));

  for (const RationalBox& box : band_.boxes()) {
    // n/period in [lo, hi)  <=>  n in [period*lo, period*hi).
    const Integer first = rational_ceil(period_ * box.lo(0));
    const Integer last = rational_ceil(period_ * box.hi(0)) - 1;
    for (Integer n = first; n <= last; ++n)
      frequencies_.push_back(to_longlong_checked(n));
  }
  std::sort(frequencies_.begin(), frequencies_.end());

  if (frequencies_.empty()) {
    // Find the smallest commensurable period m*step whose grid meets the band.
    Rational widest = 0;
    for (const RationalBox& box : band_.boxes()) {
      const Rational width = box.hi(0) - box.lo(0);
      if (width > widest) widest = width;
    }
    if (widest == 0) throw EmptyBand("cannot build a model over an empty band");
    const long long scan_limit = to_longlong_checked(rational_ceil(1 / (step_ * widest))) + 1;
    for (long long m = 1; m <= scan_limit; ++m) {
      const Rational candidate = step_ * m;
      for (const RationalBox& box : band_.boxes()) {
        if (rational_ceil(candidate * box.lo(0)) < candidate * box.hi(0))
          throw EmptyBandGrid("no frequency n/" + format_rational(period_) +
                                  " lies in the band; the smallest workable period is " +
                                  format_rational(candidate),
                              format_rational(candidate));
      }
    }
    throw EmptyBandGrid("no frequency lies in the band for any scanned period",
                        format_rational(step_ * (scan_limit + 1)));
  }

  const auto M = sample_count_;
  analysis_.resize(M, static_cast<Eigen::Index>(frequencies_.size()));
  const double row_scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t j = 0; j < frequencies_.size(); ++j) {
    const long long residue = mod_reduce(frequencies_[j], M);
    for (long long z = 0; z < M; ++z)
      analysis_(z, static_cast<Eigen::Index>(j)) =
          row_scale * unit_phase(mod_reduce(residue * z, M), M);
  }
}

Eigen::MatrixXcd DiscreteModel::extended_analysis(long long rows) const {
  if (rows <= 0 || rows % sample_count_ != 0)
    throw ValidationError("extension length must be a positive multiple of the sample count (" +
                          std::to_string(sample_count_) + ")");
  Eigen::MatrixXcd extended(rows, analysis_.cols());
  const double column_scale =
      1.0 / std::sqrt(static_cast<double>(rows) * to_double(step_));
  for (std::size_t j = 0; j < frequencies_.size(); ++j) {
    const long long residue = mod_reduce(frequencies_[j], sample_count_);
    for (long long z = 0; z < rows; ++z)
      extended(z, static_cast<Eigen::Index>(j)) =
          column_scale * unit_phase(mod_reduce(residue * z, sample_count_), sample_count_);
  }
  return extended;
}

std::string DiscreteModel::dump_json() const {
  nlohmann::json doc;
  doc["M"] = sample_count_;
  doc["P"] = format_rational(period_);
  doc["a"] = format_rational(step_);
  doc["frequencies"] = frequencies_;
  doc["norm_convention"] =
      "analysis rows carry 1/sqrt(M) so squared singular values equal fold multiplicities "
      "at grid frequencies; frame bounds divide by the step; extended columns carry "
      "1/sqrt(rows*step)";
  return doc.dump();
}

long long common_extension(const DiscreteModel& first, const DiscreteModel& second) {
  require_same_period(first, second);
  return std::lcm(first.sample_count(), second.sample_count());
}

std::pair<double, double> frame_bounds_numeric(const DiscreteModel& model) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(model.analysis());
  const Eigen::VectorXd& singular = svd.singularValues();
  const long long rank = checked_rank(singular);
  const double step = to_double(model.step());
  const double upper = singular(0) * singular(0) / step;
  const double lower = singular(rank - 1) * singular(rank - 1) / step;
  return {lower, upper};
}

double cross_gram(const DiscreteModel& first, const DiscreteModel& second) {
  const long long rows = common_extension(first, second);
  const Eigen::MatrixXcd gram =
      second.extended_analysis(rows).adjoint() * first.extended_analysis(rows);
  return Eigen::BDCSVD<Eigen::MatrixXcd>(gram).singularValues()(0);
}

double projections_commutator(const DiscreteModel& first, const DiscreteModel& second) {
  const long long rows = common_extension(first, second);
  const Eigen::MatrixXcd basis_first = range_basis(first.extended_analysis(rows));
  const Eigen::MatrixXcd basis_second = range_basis(second.extended_analysis(rows));
  const Eigen::MatrixXcd projector_first = basis_first * basis_first.adjoint();
  const Eigen::MatrixXcd projector_second = basis_second * basis_second.adjoint();
  const Eigen::MatrixXcd commutator =
      projector_first * projector_second - projector_second * projector_first;
  // The commutator of two orthogonal projections is skew-Hermitian, so i*C is
  // Hermitian and its extreme eigenvalues give the spectral norm exactly.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen(
      std::complex<double>(0.0, 1.0) * commutator, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = eigen.eigenvalues();
  return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
}

MultiplexResult multiplex_roundtrip(const DiscreteModel& first, const Eigen::VectorXcd& f,
                                    const DiscreteModel& second, const Eigen::VectorXcd& g,
                                    bool force) {
  if (f.size() != static_cast<Eigen::Index>(first.frequencies().size()))
    throw LengthMismatch("first spectrum has wrong length");
  if (g.size() != static_cast<Eigen::Index>(second.frequencies().size()))
    throw LengthMismatch("second spectrum has wrong length");
  if (!force) {
    const double leakage = cross_gram(first, second);
    if (leakage > 1e-10)
      throw NotDisjoint("cross gram norm " + std::to_string(leakage) +
                        " exceeds 1e-10; recovery from the shared channel is not guaranteed "
                        "(pass force to attempt it anyway)");
  }

  const long long rows = common_extension(first, second);
  const Eigen::MatrixXcd analysis_first = first.extended_analysis(rows);
  const Eigen::MatrixXcd analysis_second = second.extended_analysis(rows);
  const Eigen::VectorXcd channel = analysis_first * f + analysis_second * g;

  MultiplexResult result;
  result.first = solve_least_squares(analysis_first, channel);
  result.second = solve_least_squares(analysis_second, channel);
  result.crosstalk =
      std::max(relative_error(f, result.first), relative_error(g, result.second));
  return result;
}

Eigen::VectorXcd sample_signal(const DiscreteModel& model, const Eigen::VectorXcd& coefficients) {
  if (coefficients.size() != static_cast<Eigen::Index>(model.frequencies().size()))
    throw LengthMismatch("spectrum has wrong length");
  return std::sqrt(static_cast<double>(model.sample_count())) *
         (model.analysis() * coefficients);
}

Eigen::VectorXcd reconstruct_closed_form(const DiscreteModel& model,
                                         const Eigen::VectorXcd& samples) {
  if (samples.size() != model.sample_count())
    throw LengthMismatch("sample vector has wrong length");
  if (!is_sampling_matrix(model.band(), Lattice(model.step())).is_sampling)
    throw NotTight("the step is not sampling for this band, so the closed-form dual is "
                   "invalid; use the least-squares path");
  return model.analysis().adjoint() * samples /
         std::sqrt(static_cast<double>(model.sample_count()));
}

Eigen::VectorXcd reconstruct_least_squares(const DiscreteModel& model,
                                           const Eigen::VectorXcd& samples) {
  if (samples.size() != model.sample_count())
    throw LengthMismatch("sample vector has wrong length");
  return solve_least_squares(
      std::sqrt(static_cast<double>(model.sample_count())) * model.analysis(), samples);
}

}  // namespace specfold
