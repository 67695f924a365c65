#ifndef SOLWALK_HARMONIC_HPP_
#define SOLWALK_HARMONIC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solwalk/solenoid.hpp"
#include "solwalk/walk.hpp"

namespace solwalk {

// Indicator observable on the domain: finitely many digit constraints on the
// p-adic coordinate and an optional half-open window on the real coordinate.
// Values are exactly 0 or 1, which keeps every estimator an exact count.
class BoundaryObservable {
 public:
  struct DigitRequirement {
    long index = 0;          // digit position, >= 0 on domain points
    std::uint32_t value = 0; // required digit
  };

  static BoundaryObservable constant_one();
  // Indicator of a vanishing unit digit, the observable of the closing
  // worked example: 1 exactly when x_p lies in p Z_p.
  static BoundaryObservable unit_digit_zero();
  static BoundaryObservable cylinder(std::vector<DigitRequirement> digits,
                                     std::optional<std::pair<double, double>> x_inf_window = {});

  bool evaluate(const SolenoidPoint& s) const;
  // Largest digit index read; -1 when no digit constraint exists.
  long max_digit_index() const;
  std::string to_string() const;

 private:
  BoundaryObservable() = default;
  std::vector<DigitRequirement> digits_;
  std::optional<std::pair<double, double>> window_;
};

struct HarmonicEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  long resampled = 0; // degenerate draws replaced by fresh ones
};

// Certified depth a boundary sample needs so that projecting it through an
// element with the given exponent leaves phi's digits readable.
long required_sample_depth(const BoundaryObservable& phi, long exponent,
                           const ProjectionOptions& popt = {});

// Monte Carlo Poisson transform: mean of phi over projections of n boundary
// samples. Deterministic given the seed and independent of worker count.
HarmonicEstimate poisson_transform(const BoundaryObservable& phi, const AffineReal& g,
                                   const StepMeasure& mu, long n, std::uint64_t seed,
                                   const SamplerOptions& sopt = {},
                                   const ProjectionOptions& popt = {}, int workers = 1);

struct HarmonicityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double threshold = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  // Per-sample deterministic check project(g gamma, x) = project(g, gamma x);
  // any failure is a bug signal, not a statistical fluctuation.
  long reduction_failures = 0;
  long resampled = 0;
  bool pass = false;
};

// Mean-value identity check with common random numbers: the same samples feed
// the transform at g and at every g gamma, so the paired differences carry
// only the genuine discrepancy.
HarmonicityReport check_harmonicity(const BoundaryObservable& phi, const AffineReal& g,
                                    const StepMeasure& mu, long n, std::uint64_t seed,
                                    const SamplerOptions& sopt = {},
                                    const ProjectionOptions& popt = {}, int workers = 1);

// Same check with the boundary drawn from one measure and the averaging done
// over another. The averaging measure only needs valid weights.
HarmonicityReport check_harmonicity_mixed(const BoundaryObservable& phi, const AffineReal& g,
                                          const StepMeasure& boundary_mu,
                                          const StepMeasure& averaging_mu, long n,
                                          std::uint64_t seed, const SamplerOptions& sopt = {},
                                          const ProjectionOptions& popt = {}, int workers = 1);

struct ExampleRow {
  double b = 0.0;
  long m = 0;
  double estimate = 0.0;
  double stderr_value = 0.0;
  double nu_hat = 0.0;        // cylinder mass at threshold 1 - m
  double nu_stderr = 0.0;
  double lower_bound = 0.0;   // nu_hat when b in [0,1), else 0
  double upper_bound = 0.0;   // 1{b in [0,1)+pZ} + (1 - nu_hat)
  bool inside = false;        // b in [0,1) + pZ
  bool pass = false;          // estimate within [lower, upper] widened by 3 sigma
};

struct ExampleTable {
  std::vector<ExampleRow> rows; // ordered by b, then m
  long n_samples = 0;
  std::uint64_t seed = 0;
  long resampled = 0;
  // Bounded-search confirmations that at most one fundamental-domain
  // representative exists per checked sample; mismatches signal a bug.
  long beta_checks = 0;
  long beta_mismatches = 0;
  bool all_pass = false;
};

// Reproduces the closing example: estimates f(b, p^m) for the unit-digit
// observable on a grid, with the two-sided cylinder-mass bounds.
ExampleTable worked_example_table(const StepMeasure& mu, const std::vector<double>& b_grid,
                                  const std::vector<long>& m_values, long n,
                                  std::uint64_t seed, const SamplerOptions& sopt = {},
                                  const ProjectionOptions& popt = {}, int workers = 1);

struct MartingaleCheckpoint {
  long step = 0;
  double estimate = 0.0;
  double stderr_value = 0.0;
};

struct MartingalePathResult {
  std::uint64_t path_seed = 0;
  std::vector<MartingaleCheckpoint> checkpoints;
  double boundary_value = 0.0; // phi at the projection of this path's limit
  double tolerance = 0.0;
  bool agrees = false;
};

struct MartingaleReport {
  std::vector<MartingalePathResult> paths;
  long n_paths = 0;
  long agreeing = 0;
  double agreement_fraction = 0.0;
  long horizon = 0;
  long inner_samples = 0;
  std::uint64_t seed = 0;
  bool pass = false; // agreement fraction >= 0.95
};

// Follows f(g r_k) along sampled paths and compares the terminal value with
// phi at the path's own boundary limit. Each path's boundary sample reuses
// the path seed, so the limit extends the observed prefix.
MartingaleReport martingale_limit_probe(const BoundaryObservable& phi, const AffineReal& g,
                                        const StepMeasure& mu, long horizon, long n_paths,
                                        std::uint64_t seed, long inner_samples = 1000,
                                        const SamplerOptions& sopt = {},
                                        const ProjectionOptions& popt = {}, int workers = 1);

} // namespace solwalk

#endif // SOLWALK_HARMONIC_HPP_
