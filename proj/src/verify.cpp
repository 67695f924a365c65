#include "solwalk/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solwalk/format.hpp"
#include "solwalk/rng.hpp"
#include "solwalk/stats.hpp"

namespace solwalk {

namespace {

PadicRational random_value(Rng& rng, long p) {
  long num = static_cast<long>(rng.next_u64() % 2000001) - 1000000;
  long exp = static_cast<long>(rng.next_u64() % 9);
  return PadicRational(p, mpz_class(num), exp);
}

TruncatedPadic random_window(Rng& rng, long p, long end) {
  long num = static_cast<long>(rng.next_u64() % 8191) - 4095;
  long exp = static_cast<long>(rng.next_u64() % 4);
  PadicRational v(p, mpz_class(num), exp);
  if (v.is_zero() || v.valuation() >= end) return TruncatedPadic::zero_class(p, end);
  return truncate(v, end);
}

AffineExact random_word(Rng& rng, const StepMeasure& mu, int max_len) {
  AffineExact g = identity_exact(mu.prime());
  int len = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_len));
  for (int i = 0; i < len; ++i) g = compose(g, mu.sample(rng.next_u64()));
  return g;
}

std::string pass_word(bool pass) { return pass ? "pass" : "FAIL"; }

} // namespace

SuiteResult verify_arithmetic_laws(std::uint64_t seed, long iterations) {
  SuiteResult r;
  r.name = "arithmetic-laws";
  Rng rng(derive_seed(seed, 1));
  for (long p : {2L, 3L}) {
    for (long it = 0; it < iterations; ++it) {
      PadicRational a = random_value(rng, p);
      PadicRational b = random_value(rng, p);

      // Ultrametric: vp(a + b) >= min(vp a, vp b), with equality off the
      // diagonal vp a == vp b.
      PadicRational s = a + b;
      long va = a.valuation(), vb = b.valuation();
      long lo = std::min(va, vb);
      ++r.checks;
      if (s.valuation() < lo || (va != vb && s.valuation() != lo)) ++r.failures;

      // Norm multiplicativity, exact in mpq.
      ++r.checks;
      if ((a * b).padic_norm() != a.padic_norm() * b.padic_norm()) ++r.failures;

      // Fractional part: alpha in [0,1) and x - alpha a p-adic integer.
      PadicRational alpha = a.frac_part();
      mpq_class q = alpha.to_mpq();
      PadicRational diff = a - alpha;
      ++r.checks;
      if (q < 0 || q >= 1 || (!diff.is_zero() && diff.valuation() < 0)) ++r.failures;
    }
  }
  r.pass = r.failures == 0;
  r.detail = std::to_string(r.checks) + " randomized exact checks over Z[1/2] and Z[1/3]: " +
             pass_word(r.pass);
  return r;
}

SuiteResult verify_projection_uniqueness(std::uint64_t seed, long cases) {
  SuiteResult r;
  r.name = "projection-uniqueness";
  const long p = 2;
  Rng rng(derive_seed(seed, 2));
  long guard = 0;
  while (r.checks < cases && guard < cases * 20) {
    ++guard;
    long e = static_cast<long>(rng.next_u64() % 7);
    mpz_class den = prime_power(p, e);
    long u = static_cast<long>(rng.next_u64() % den.get_ui());
    long m = static_cast<long>(rng.next_u64() % 7) - 3;
    PadicRational b(p, mpz_class(u), e);
    long xnum = static_cast<long>(rng.next_u64() % 8191) - 4095;
    PadicRational x(p, mpz_class(xnum), static_cast<long>(rng.next_u64() % 4));

    // Redraw exactly degenerate pairs; the uniqueness claim is almost-sure.
    mpq_class seam = b.to_mpq() + mul_by_power(x, m).frac_part().to_mpq();
    if (seam.get_den() == 1) continue;

    AffineExact g{b, m};
    auto matches = fundamental_domain_matches(g, x);
    auto xt = x.is_zero() ? TruncatedPadic::zero_class(p, 12) : truncate(x, 12);
    auto pr = project(to_real(g), xt);
    ++r.checks;
    if (matches.size() != 1 || pr.gamma.translation != matches[0] || pr.gamma.exponent != m) {
      ++r.failures;
    }
  }
  r.pass = r.failures == 0 && r.checks == cases;
  r.detail = "bounded search over " + std::to_string(r.checks) +
             " non-degenerate pairs, unique hit matching the projection: " + pass_word(r.pass);
  return r;
}

SuiteResult verify_star_invariance(const StepMeasure& mu, std::uint64_t seed, long cases) {
  SuiteResult r;
  r.name = "star-invariance";
  long p = mu.prime();
  Rng rng(derive_seed(seed, 3));
  long guard = 0;
  while (r.checks < cases && guard < cases * 20) {
    ++guard;
    AffineReal g{p, rng.next_unit() * 4 - 2, static_cast<long>(rng.next_u64() % 7) - 3};
    auto x = random_window(rng, p, 12);
    auto gamma = random_word(rng, mu, 5);
    try {
      bool ok = star_invariance_check(g, x, gamma);
      ++r.checks;
      if (!ok) ++r.failures;
    } catch (const DegenerateBoundaryError&) {
      // Measure-zero rejection set; redraw.
    }
  }
  r.pass = r.failures == 0 && r.checks == cases;
  r.detail = std::to_string(r.checks) + " random (g, x, gamma) with words of length <= 5: " +
             pass_word(r.pass);
  return r;
}

SuiteResult verify_drift_exactness() {
  SuiteResult r;
  r.name = "drift-exactness";
  mpq_class third(1, 3);
  for (long p : {2L, 3L, 5L}) {
    auto d = mu_star(p).drift_p();
    ++r.checks;
    if (d.coeff != -third || d.log_base != p || d.sign() >= 0) ++r.failures;
  }

  // Reference rational measure: a = 3/2 with weight 2/3, a = 2/3 with 1/3.
  RationalStepMeasure ref({{mpq_class(0), mpq_class(3, 2), mpq_class(2, 3)},
                           {mpq_class(0), mpq_class(2, 3), mpq_class(1, 3)}});
  auto spec = boundary_spectrum(ref);
  ++r.checks;
  bool spectrum_ok = spec.boundary_places == std::vector<long>{3};
  for (const auto& pd : spec.drifts) {
    if (pd.place == 2 && (pd.drift.coeff != third || pd.drift.log_base != 2)) spectrum_ok = false;
    if (pd.place == 3 && (pd.drift.coeff != -third || pd.drift.log_base != 3)) spectrum_ok = false;
    if (pd.place == kArchimedeanPlace &&
        (pd.drift.coeff != third || pd.drift.log_base != mpq_class(3, 2))) {
      spectrum_ok = false;
    }
  }
  if (!spectrum_ok) ++r.failures;

  r.pass = r.failures == 0;
  r.detail = "drift_p coefficient -1/3 for p in {2,3,5}; reference spectrum boundary {Q_3}: " +
             pass_word(r.pass);
  return r;
}

SuiteResult verify_sampler_soundness(const StepMeasure& mu, std::uint64_t seed, long seed_count,
                                     long digits) {
  SuiteResult r;
  r.name = "sampler-soundness";
  SamplerOptions opt;

  long replay_failures = 0;
  for (long i = 0; i < seed_count; ++i) {
    std::uint64_t s = derive_seed(seed, 4, static_cast<std::uint64_t>(i) + 1);
    auto first = sample_boundary_padic(mu, digits, opt, s);
    SamplerOptions longer = opt;
    longer.min_steps = first.steps_used * 4;
    auto replay = sample_boundary_padic(mu, digits, longer, s);
    ++r.checks;
    if (!congruent(first.value, replay.value)) ++replay_failures;
  }
  r.failures += replay_failures;

  // Two independent batches must agree on the unit-digit frequency. Depth
  // mode keeps digit 0 decidable even for zero classes.
  long n = seed_count;
  long hits_a = 0, hits_b = 0;
  for (long i = 0; i < n; ++i) {
    auto a = sample_boundary_to_depth(mu, 1, opt, derive_seed(seed, 5, static_cast<std::uint64_t>(i)));
    auto b = sample_boundary_to_depth(mu, 1, opt, derive_seed(seed, 6, static_cast<std::uint64_t>(i)));
    hits_a += a.value.digit_at(0) == 0 ? 1 : 0;
    hits_b += b.value.digit_at(0) == 0 ? 1 : 0;
  }
  double pa = static_cast<double>(hits_a) / static_cast<double>(n);
  double pb = static_cast<double>(hits_b) / static_cast<double>(n);
  double se = std::sqrt(binomial_stderr(hits_a, n) * binomial_stderr(hits_a, n) +
                        binomial_stderr(hits_b, n) * binomial_stderr(hits_b, n));
  ++r.checks;
  bool freq_ok = std::fabs(pa - pb) <= 3.0 * se;
  if (!freq_ok) ++r.failures;

  r.pass = r.failures == 0;
  r.detail = std::to_string(seed_count) + " replayed seeds with 4x budget, " +
             std::to_string(replay_failures) + " digit changes; unit-digit frequency gap " +
             format_double(std::fabs(pa - pb)) + " vs 3se " + format_double(3.0 * se) + ": " +
             pass_word(r.pass);
  return r;
}

SuiteResult verify_stationarity(const StepMeasure& mu, std::uint64_t seed, long n, int workers) {
  SuiteResult r;
  r.name = "stationarity";
  auto phi = BoundaryObservable::unit_digit_zero();
  SamplerOptions sopt;

  // Paired comparison: phi at a nu-tilde sample against phi after one
  // measure step acting on the same sample.
  std::vector<std::int8_t> delta(static_cast<std::size_t>(n), 0);
  parallel_for_indexed(n, workers, [&](long i) {
    for (long attempt = 0; attempt < 32; ++attempt) {
      std::uint64_t sub = static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(attempt) *
                                                              static_cast<std::uint64_t>(n);
      try {
        auto s = sample_nu_tilde(mu, 8, sopt, derive_seed(seed, 7, sub));
        Rng gamma_rng(derive_seed(seed, 8, sub));
        const auto& gamma = mu.sample(gamma_rng.next_u64());
        int before = phi.evaluate(s) ? 1 : 0;
        int after = phi.evaluate(act(to_real(gamma), s)) ? 1 : 0;
        delta[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(after - before);
        return;
      } catch (const DegenerateBoundaryError&) {
        // Measure-zero float coincidence; redraw deterministically.
      }
    }
    throw DegenerateBoundaryError("stationarity check exhausted degenerate redraws");
  });

  long sum = 0, sum_sq = 0;
  for (long i = 0; i < n; ++i) {
    sum += delta[static_cast<std::size_t>(i)];
    sum_sq += delta[static_cast<std::size_t>(i)] * delta[static_cast<std::size_t>(i)];
  }
  double mean = static_cast<double>(sum) / static_cast<double>(n);
  double var = (static_cast<double>(sum_sq) - static_cast<double>(n) * mean * mean) /
               static_cast<double>(n - 1);
  double threshold = 3.0 * std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  r.checks = n;
  bool ok = std::fabs(mean) <= threshold || sum == 0;
  if (!ok) ++r.failures;
  r.pass = ok;
  r.detail = "paired one-step shift of the projected boundary law, gap " +
             format_double(std::fabs(mean)) + " vs 3se " + format_double(threshold) + ": " +
             pass_word(r.pass);
  return r;
}

SuiteResult verify_harmonicity(const StepMeasure& mu, std::uint64_t seed, long n, int workers) {
  SuiteResult r;
  r.name = "harmonicity";
  auto phi = BoundaryObservable::unit_digit_zero();
  long p = mu.prime();
  std::vector<AffineReal> elements{{p, 0.3, 0}, {p, 0.5, 1}, {p, 1.7, -1}};
  std::ostringstream detail;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    auto rep = check_harmonicity(phi, elements[i], mu, n,
                                 derive_seed(seed, 9, static_cast<std::uint64_t>(i)), {}, {},
                                 workers);
    ++r.checks;
    if (!rep.pass) ++r.failures;
    if (i > 0) detail << "; ";
    detail << "g=(" << format_double(elements[i].translation) << ",m=" << elements[i].exponent
           << ") gap " << format_double(rep.gap) << " vs " << format_double(rep.threshold)
           << " reductions " << rep.reduction_failures;
  }
  r.pass = r.failures == 0;
  r.detail = detail.str() + ": " + pass_word(r.pass);
  return r;
}

SuiteResult verify_periodicity(const StepMeasure& mu, std::uint64_t seed, long pairs, long n,
                               int workers) {
  SuiteResult r;
  r.name = "periodicity";
  auto phi = BoundaryObservable::unit_digit_zero();
  long p = mu.prime();
  Rng rng(derive_seed(seed, 10));
  for (long i = 0; i < pairs; ++i) {
    double b = rng.next_unit();
    long m = static_cast<long>(rng.next_u64() % 7) - 2;
    std::uint64_t s = derive_seed(seed, 11, static_cast<std::uint64_t>(i));
    auto lo = poisson_transform(phi, AffineReal{p, b, m}, mu, n, s, {}, {}, workers);
    auto hi = poisson_transform(phi, AffineReal{p, b + static_cast<double>(p), m}, mu, n, s,
                                {}, {}, workers);
    ++r.checks;
    if (lo.value != hi.value || lo.stderr_value != hi.stderr_value) ++r.failures;
  }
  r.pass = r.failures == 0;
  r.detail = std::to_string(pairs) + " random (b, m) pairs, estimates bit-identical under b+" +
             std::to_string(p) + ": " + pass_word(r.pass);
  return r;
}

SuiteResult verify_limit_dichotomy(const StepMeasure& mu, std::uint64_t seed, long n,
                                   int workers) {
  SuiteResult r;
  r.name = "limit-dichotomy";
  std::vector<long> m_values{1, 2, 3, 4, 5, 6, 7, 8};
  auto table = worked_example_table(mu, {0.25, 0.5, 0.75, 1.5}, m_values, n,
                                    derive_seed(seed, 12), {}, {}, workers);
  r.checks = static_cast<long>(table.rows.size()) + table.beta_checks;
  for (const auto& row : table.rows) {
    if (!row.pass) ++r.failures;
  }
  r.failures += table.beta_mismatches;

  // Shared samples make the cylinder masses exactly nested.
  double last = 0.0;
  bool monotone = true;
  for (std::size_t im = 0; im < m_values.size(); ++im) {
    double nu = table.rows[im].nu_hat;
    if (nu < last) monotone = false;
    last = nu;
  }
  bool saturated = last >= 0.99;
  ++r.checks;
  if (!monotone || !saturated) ++r.failures;

  r.pass = r.failures == 0;
  r.detail = std::to_string(table.rows.size()) + " grid rows within the two-sided bounds, " +
             std::to_string(table.beta_checks) + " representative searches, final mass " +
             format_double(last) + ": " + pass_word(r.pass);
  return r;
}

SuiteResult verify_martingale(const StepMeasure& mu, std::uint64_t seed, long horizon,
                              long paths, long inner, int workers) {
  SuiteResult r;
  r.name = "martingale-limit";
  auto phi = BoundaryObservable::unit_digit_zero();
  auto rep = martingale_limit_probe(phi, AffineReal{mu.prime(), 0.3, 0}, mu, horizon, paths,
                                    derive_seed(seed, 13), inner, {}, {}, workers);
  r.checks = paths;
  r.failures = paths - rep.agreeing;
  r.pass = rep.pass;
  r.detail = std::to_string(rep.agreeing) + "/" + std::to_string(paths) +
             " paths agree at horizon " + std::to_string(horizon) + " (fraction " +
             format_double(rep.agreement_fraction) + "): " + pass_word(r.pass);
  return r;
}

VerifySummary run_all_suites(const StepMeasure& mu, std::uint64_t seed, int workers,
                             double scale) {
  if (!(scale > 0.0) || scale > 1.0) throw DomainError("scale must lie in (0, 1]");
  auto scaled = [scale](long full, long floor_at) {
    return std::max(floor_at, static_cast<long>(std::lround(static_cast<double>(full) * scale)));
  };

  VerifySummary s;
  s.seed = seed;
  s.suites.push_back(verify_arithmetic_laws(seed, scaled(10000, 100)));
  s.suites.push_back(verify_projection_uniqueness(seed, scaled(1000, 50)));
  s.suites.push_back(verify_star_invariance(mu, seed, scaled(10000, 100)));
  s.suites.push_back(verify_drift_exactness());
  s.suites.push_back(verify_sampler_soundness(mu, seed, scaled(1000, 50)));
  s.suites.push_back(verify_stationarity(mu, seed, scaled(20000, 500), workers));
  s.suites.push_back(verify_harmonicity(mu, seed, scaled(100000, 1000), workers));
  s.suites.push_back(verify_periodicity(mu, seed, scaled(20, 5), scaled(2000, 200), workers));
  s.suites.push_back(verify_limit_dichotomy(mu, seed, scaled(100000, 1000), workers));
  // Floors keep each probe statistically meaningful: below horizon ~120 the
  // walk exponent is often not deep enough for the terminal estimate to have
  // settled, and 20 paths let the 95% threshold absorb one unlucky path.
  s.suites.push_back(
      verify_martingale(mu, seed, scaled(200, 120), scaled(100, 20), scaled(1000, 100), workers));
  s.all_pass = true;
  for (const auto& suite : s.suites) s.all_pass = s.all_pass && suite.pass;
  return s;
}

std::string VerifySummary::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& suite : suites) {
    nlohmann::ordered_json js;
    js["name"] = suite.name;
    js["pass"] = suite.pass;
    js["checks"] = suite.checks;
    js["failures"] = suite.failures;
    js["detail"] = suite.detail;
    j["suites"].push_back(js);
  }
  j["all_pass"] = all_pass;
  return j.dump(2) + "\n";
}

} // namespace solwalk
