#ifndef SOLWALK_WALK_HPP_
#define SOLWALK_WALK_HPP_

#include <cstdint>
#include <vector>

#include "solwalk/measure.hpp"

namespace solwalk {

struct SamplerOptions {
  // Confirmation window for digit certification and for the real-boundary
  // stopping rule.
  long window = 32;
  long max_steps = 10000;
  // When set, a digit at index i is only certified while S_n >= i + slack,
  // which bounds the odds that a later excursion of S revisits the digit.
  bool conservative = true;
  long slack = 24;
  // Keep walking at least this far even if the target is already certified
  // (used to pair a boundary sample with a finite trajectory prefix).
  long min_steps = 0;
};

struct WalkTrajectory {
  std::uint64_t seed = 0;
  std::vector<AffineExact> steps;     // omega_1 .. omega_n
  std::vector<AffineExact> partials;  // r_0 = id, r_1, .., r_n
};

WalkTrajectory run_walk(const StepMeasure& mu, long n, std::uint64_t seed);

struct BoundarySample {
  TruncatedPadic value;
  long certified_digits = 0;
  long steps_used = 0;
  std::uint64_t seed = 0;
};

// First target_digits certified digits of Z_inf = sum p^(S_{k-1}) b_k,
// anchored at its valuation. Requires phi_p < 0 (exact sign).
BoundarySample sample_boundary_padic(const StepMeasure& mu, long target_digits,
                                     const SamplerOptions& opt, std::uint64_t seed);

// Certifies every digit at index < depth_end instead of a fixed count; the
// returned window may extend further if certification overshoots.
BoundarySample sample_boundary_to_depth(const StepMeasure& mu, long depth_end,
                                        const SamplerOptions& opt, std::uint64_t seed);

// Real boundary limit for the contracting case phi_inf < 0.
double sample_boundary_real(const StepMeasure& mu, double tolerance,
                            const SamplerOptions& opt, std::uint64_t seed);

struct CylinderEstimate {
  long threshold = 0;  // cylinder p^threshold Z_p
  double estimate = 0.0;
  double stderr_value = 0.0;
  long hits = 0;
  long samples = 0;
};

// Fraction of boundary samples with vp(Z_inf) >= threshold.
CylinderEstimate estimate_cylinder_mass(const StepMeasure& mu, long threshold, long n_samples,
                                        std::uint64_t seed, const SamplerOptions& opt,
                                        int workers = 1);

// Same, over several thresholds with common random numbers: every threshold
// is evaluated on the same sample set, so nesting is exact.
std::vector<CylinderEstimate> cylinder_mass_curve(const StepMeasure& mu,
                                                  const std::vector<long>& thresholds,
                                                  long n_samples, std::uint64_t seed,
                                                  const SamplerOptions& opt, int workers = 1);

}  // namespace solwalk

#endif  // SOLWALK_WALK_HPP_
