#include "solwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "solwalk/rng.hpp"
#include "solwalk/stats.hpp"

namespace solwalk {

WalkTrajectory run_walk(const StepMeasure& mu, long n, std::uint64_t seed) {
  if (n < 0) throw DomainError("walk length must be nonnegative");
  WalkTrajectory t;
  t.seed = seed;
  t.steps.reserve(static_cast<std::size_t>(n));
  t.partials.reserve(static_cast<std::size_t>(n) + 1);
  t.partials.push_back(identity_exact(mu.prime()));
  Rng rng(seed);
  for (long k = 0; k < n; ++k) {
    const AffineExact& w = mu.sample(rng.next_u64());
    t.steps.push_back(w);
    t.partials.push_back(compose(t.partials.back(), w));
  }
  return t;
}

namespace {

void require_padic_contracting(const StepMeasure& mu) {
  if (mu.drift_p().sign() >= 0) {
    throw NotContractingError("phi_p = " + mu.drift_p().to_string() +
                              " is not negative; Z_inf does not converge in Q_p");
  }
}

bool all_translations_zero(const StepMeasure& mu) {
  for (const auto& a : mu.atoms()) {
    if (!a.step.translation.is_zero()) return false;
  }
  return true;
}

enum class StopMode { kDigitCount, kDepth };

// Shared accumulation loop. Walks the series B_n = sum p^(S_{k-1}) b_k
// exactly while maintaining the certified digit frontier.
BoundarySample accumulate(const StepMeasure& mu, StopMode mode, long target,
                          const SamplerOptions& opt, std::uint64_t seed) {
  require_padic_contracting(mu);
  long p = mu.prime();
  if (opt.window < 1) throw DomainError("certification window must be >= 1");

  if (all_translations_zero(mu)) {
    // Z_inf is exactly 0; any window is certified for free.
    return BoundarySample{TruncatedPadic::zero_class(p, target), target - std::min(0L, target),
                          0, seed};
  }

  Rng rng(seed);
  PadicRational b_sum(p);
  long s_exp = 0;  // S_n = sum of step exponents
  bool have_cert = false;
  long cert = 0;  // digits at index < cert are certified once have_cert
  bool have_prev_min = false;
  long prev_win_min = 0;

  // Ring of (increment valuation or kValuationInfinity, S after the step).
  std::deque<std::pair<long, long>> ring;

  for (long n = 1; n <= opt.max_steps; ++n) {
    const AffineExact& w = mu.sample(rng.next_u64());
    long inc_val = kValuationInfinity;
    if (!w.translation.is_zero()) {
      PadicRational inc = mul_by_power(w.translation, s_exp);
      inc_val = inc.valuation();
      b_sum = b_sum + inc;
    }
    s_exp += w.exponent;
    ring.emplace_back(inc_val, s_exp);
    if (static_cast<long>(ring.size()) > opt.window) ring.pop_front();

    if (static_cast<long>(ring.size()) == opt.window) {
      long win_min_s = ring.front().second;
      long win_min_val = ring.front().first;
      for (const auto& [v, s] : ring) {
        win_min_s = std::min(win_min_s, s);
        win_min_val = std::min(win_min_val, v);
      }
      if (!have_prev_min || win_min_s >= prev_win_min) {
        // Candidate frontier: everything below the smallest increment
        // valuation in the window, capped so it never outruns S itself.
        long cand = std::min(win_min_val, s_exp + 1);
        if (opt.conservative) cand = std::min(cand, s_exp - opt.slack + 1);
        if (!have_cert || cand > cert) {
          cert = cand;
          have_cert = true;
        }
      }
      prev_win_min = win_min_s;
      have_prev_min = true;
    }

    if (!have_cert || n < opt.min_steps) continue;

    if (mode == StopMode::kDigitCount) {
      if (b_sum.is_zero()) continue;
      long v = b_sum.valuation();
      if (cert >= v + target) {
        return BoundarySample{truncate(b_sum, v + target), target, n, seed};
      }
    } else {
      if (cert >= target) {
        TruncatedPadic value = (!b_sum.is_zero() && b_sum.valuation() < cert)
                                   ? truncate(b_sum, cert)
                                   : TruncatedPadic::zero_class(p, cert);
        return BoundarySample{value, cert - value.display_low(), n, seed};
      }
    }
  }
  throw MaxStepsError("certification did not reach the target within " +
                      std::to_string(opt.max_steps) + " steps (seed " + std::to_string(seed) +
                      ")");
}

}  // namespace

BoundarySample sample_boundary_padic(const StepMeasure& mu, long target_digits,
                                     const SamplerOptions& opt, std::uint64_t seed) {
  if (target_digits < 1) throw DomainError("target digit count must be >= 1");
  return accumulate(mu, StopMode::kDigitCount, target_digits, opt, seed);
}

BoundarySample sample_boundary_to_depth(const StepMeasure& mu, long depth_end,
                                        const SamplerOptions& opt, std::uint64_t seed) {
  return accumulate(mu, StopMode::kDepth, depth_end, opt, seed);
}

double sample_boundary_real(const StepMeasure& mu, double tolerance, const SamplerOptions& opt,
                            std::uint64_t seed) {
  if (mu.drift_inf().sign() >= 0) {
    throw NotContractingError("phi_inf = " + mu.drift_inf().to_string() +
                              " is not negative; Z_inf does not converge in R");
  }
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  double max_b = mu.max_abs_translation().get_d();
  if (max_b == 0.0) return 0.0;

  Rng rng(seed);
  double acc = 0.0;
  long s_exp = 0;
  long quiet = 0;
  for (long n = 1; n <= opt.max_steps; ++n) {
    const AffineExact& w = mu.sample(rng.next_u64());
    acc += pow_prime_double(mu.prime(), s_exp) * w.translation.to_double();
    s_exp += w.exponent;
    if (pow_prime_double(mu.prime(), s_exp) * max_b < tolerance) {
      if (++quiet >= opt.window) return acc;
    } else {
      quiet = 0;
    }
  }
  throw MaxStepsError("real boundary sum did not settle below tolerance within " +
                      std::to_string(opt.max_steps) + " steps (seed " + std::to_string(seed) +
                      ")");
}

std::vector<CylinderEstimate> cylinder_mass_curve(const StepMeasure& mu,
                                                  const std::vector<long>& thresholds,
                                                  long n_samples, std::uint64_t seed,
                                                  const SamplerOptions& opt, int workers) {
  if (thresholds.empty()) throw DomainError("no thresholds given");
  if (n_samples < 1) throw DomainError("need at least one sample");
  // Deciding vp >= v needs every digit below index v, so certification must
  // reach the largest threshold.
  long depth = *std::max_element(thresholds.begin(), thresholds.end());

  // One shared sample set: hit indicators per (sample, threshold).
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(n_samples) * thresholds.size());
  parallel_for_indexed(n_samples, workers, [&](long i) {
    auto s = sample_boundary_to_depth(mu, depth, opt, derive_seed(seed, static_cast<std::uint64_t>(i)));
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      hits[static_cast<std::size_t>(i) * thresholds.size() + t] =
          s.value.valuation_at_least(thresholds[t]) ? 1 : 0;
    }
  });

  std::vector<CylinderEstimate> out;
  out.reserve(thresholds.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    long count = 0;
    for (long i = 0; i < n_samples; ++i) {
      count += hits[static_cast<std::size_t>(i) * thresholds.size() + t];
    }
    CylinderEstimate e;
    e.threshold = thresholds[t];
    e.hits = count;
    e.samples = n_samples;
    e.estimate = static_cast<double>(count) / static_cast<double>(n_samples);
    e.stderr_value = binomial_stderr(count, n_samples);
    out.push_back(e);
  }
  return out;
}

CylinderEstimate estimate_cylinder_mass(const StepMeasure& mu, long threshold, long n_samples,
                                        std::uint64_t seed, const SamplerOptions& opt,
                                        int workers) {
  return cylinder_mass_curve(mu, {threshold}, n_samples, seed, opt, workers).front();
}

}  // namespace solwalk
