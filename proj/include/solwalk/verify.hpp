#ifndef SOLWALK_VERIFY_HPP_
#define SOLWALK_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "solwalk/harmonic.hpp"

namespace solwalk {

struct SuiteResult {
  std::string name;
  bool pass = false;
  long checks = 0;
  long failures = 0;
  std::string detail; // deterministic summary, no timing or machine info
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool all_pass = false;

  // Stable key order and float rendering; identical (config, seed) runs
  // serialize to identical bytes regardless of worker count.
  std::string to_json() const;
};

// Ultrametric inequality, norm multiplicativity, and the fractional-part
// contract on randomized exact values for p in {2, 3}.
SuiteResult verify_arithmetic_laws(std::uint64_t seed, long iterations = 10000);

// Bounded exhaustive search finds exactly one translate moving each random
// non-degenerate pair into the fundamental domain, matching the projection.
SuiteResult verify_projection_uniqueness(std::uint64_t seed, long cases = 1000);

// project(g gamma^-1, gamma x) = project(g, x) over random triples with
// gamma drawn from support words of the measure.
SuiteResult verify_star_invariance(const StepMeasure& mu, std::uint64_t seed,
                                   long cases = 10000);

// Exact drift coefficients and the boundary spectrum of the reference
// rational measure.
SuiteResult verify_drift_exactness();

// Replaying each seed with a quadrupled step budget must reproduce every
// certified digit; two independent batches agree on the unit-digit frequency.
SuiteResult verify_sampler_soundness(const StepMeasure& mu, std::uint64_t seed,
                                     long seed_count = 1000, long digits = 8);

// The projected boundary law is stationary for the induced action.
SuiteResult verify_stationarity(const StepMeasure& mu, std::uint64_t seed, long n = 20000,
                                int workers = 1);

// Mean-value identity at the worked-example elements with common random
// numbers plus the per-sample exact reduction.
SuiteResult verify_harmonicity(const StepMeasure& mu, std::uint64_t seed, long n = 100000,
                               int workers = 1);

// Bit-identical estimates under b -> b + p with common seeds.
SuiteResult verify_periodicity(const StepMeasure& mu, std::uint64_t seed, long pairs = 20,
                               long n = 2000, int workers = 1);

// Worked-example table bounds, cylinder-mass monotonicity, and the
// at-most-one-representative search.
SuiteResult verify_limit_dichotomy(const StepMeasure& mu, std::uint64_t seed, long n = 100000,
                                   int workers = 1);

// Terminal martingale values against each path's own boundary point.
SuiteResult verify_martingale(const StepMeasure& mu, std::uint64_t seed, long horizon = 200,
                              long paths = 100, long inner = 1000, int workers = 1);

// Every suite at acceptance scale; scale < 1 shrinks the statistical suites
// proportionally for quick runs.
VerifySummary run_all_suites(const StepMeasure& mu, std::uint64_t seed, int workers = 1,
                             double scale = 1.0);

} // namespace solwalk

#endif // SOLWALK_VERIFY_HPP_
