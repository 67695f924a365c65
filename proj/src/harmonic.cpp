#include "solwalk/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "solwalk/rng.hpp"
#include "solwalk/stats.hpp"

namespace solwalk {

BoundaryObservable BoundaryObservable::constant_one() { return BoundaryObservable(); }

BoundaryObservable BoundaryObservable::unit_digit_zero() {
  BoundaryObservable o;
  o.digits_.push_back({0, 0});
  return o;
}

BoundaryObservable BoundaryObservable::cylinder(
    std::vector<DigitRequirement> digits, std::optional<std::pair<double, double>> x_inf_window) {
  for (const auto& d : digits) {
    if (d.index < 0) throw DomainError("cylinder digit indices must be nonnegative");
  }
  if (x_inf_window) {
    auto [u, v] = *x_inf_window;
    if (!(u < v) || u < 0.0 || v > 1.0) {
      throw DomainError("x_inf window must be a nonempty subinterval of [0,1)");
    }
  }
  BoundaryObservable o;
  o.digits_ = std::move(digits);
  o.window_ = x_inf_window;
  return o;
}

bool BoundaryObservable::evaluate(const SolenoidPoint& s) const {
  for (const auto& d : digits_) {
    if (s.x_p.digit_at(d.index) != d.value) return false;
  }
  if (window_ && (s.x_inf < window_->first || s.x_inf >= window_->second)) return false;
  return true;
}

long BoundaryObservable::max_digit_index() const {
  long m = -1;
  for (const auto& d : digits_) m = std::max(m, d.index);
  return m;
}

std::string BoundaryObservable::to_string() const {
  if (digits_.empty() && !window_) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& d : digits_) {
    if (!first) out << ",";
    out << "d" << d.index << "=" << d.value;
    first = false;
  }
  if (window_) {
    if (!first) out << ";";
    out << "xinf=[" << window_->first << "," << window_->second << ")";
  }
  return out.str();
}

long required_sample_depth(const BoundaryObservable& phi, long exponent,
                           const ProjectionOptions& popt) {
  return std::max(phi.max_digit_index() + 1, popt.guard_digits) - exponent;
}

namespace {

constexpr long kMaxResampleAttempts = 64;

TruncatedPadic draw_sample(const StepMeasure& mu, long depth, std::uint64_t seed, long i,
                           long attempt, const SamplerOptions& sopt) {
  return sample_boundary_to_depth(mu, depth, sopt,
                                  derive_seed(seed, static_cast<std::uint64_t>(i),
                                              static_cast<std::uint64_t>(attempt)))
      .value;
}

// Runs eval(i, x) over n seed-split boundary samples, deterministically
// replacing draws the evaluation rejects as degenerate. Returns the number of
// replacements. eval must write only to per-index slots.
long run_resampled(const StepMeasure& mu, long depth, long n, std::uint64_t seed,
                   const SamplerOptions& sopt, int workers,
                   const std::function<void(long, const TruncatedPadic&)>& eval) {
  std::vector<long> attempts(static_cast<std::size_t>(n), 0);
  parallel_for_indexed(n, workers, [&](long i) {
    for (long a = 0; a < kMaxResampleAttempts; ++a) {
      auto x = draw_sample(mu, depth, seed, i, a, sopt);
      try {
        eval(i, x);
        attempts[static_cast<std::size_t>(i)] = a;
        return;
      } catch (const DegenerateBoundaryError&) {
      }
    }
    throw DegenerateBoundaryError("sample " + std::to_string(i) + " stayed degenerate after " +
                                  std::to_string(kMaxResampleAttempts) + " redraws");
  });
  long total = 0;
  for (long a : attempts) total += a;
  return total;
}

// Weights as exact integers over a common denominator.
struct ScaledWeights {
  mpz_class denom;
  std::vector<mpz_class> scaled;
};

ScaledWeights integer_weights(const StepMeasure& mu) {
  ScaledWeights w;
  w.denom = 1;
  for (const auto& a : mu.atoms()) {
    mpz_lcm(w.denom.get_mpz_t(), w.denom.get_mpz_t(), a.weight.get_den().get_mpz_t());
  }
  for (const auto& a : mu.atoms()) {
    mpq_class s = a.weight * mpq_class(w.denom);
    s.canonicalize();
    w.scaled.push_back(s.get_num());
  }
  return w;
}

}  // namespace

HarmonicEstimate poisson_transform(const BoundaryObservable& phi, const AffineReal& g,
                                   const StepMeasure& mu, long n, std::uint64_t seed,
                                   const SamplerOptions& sopt, const ProjectionOptions& popt,
                                   int workers) {
  if (n < 1) throw DomainError("need at least one sample");
  if (g.prime != mu.prime()) throw DomainError("prime mismatch between element and measure");
  long depth = std::max(1L, required_sample_depth(phi, g.exponent, popt));

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n), 0);
  long resampled = run_resampled(mu, depth, n, seed, sopt, workers,
                                 [&](long i, const TruncatedPadic& x) {
                                   hit[static_cast<std::size_t>(i)] =
                                       phi.evaluate(project(g, x, popt).point) ? 1 : 0;
                                 });
  long count = 0;
  for (long i = 0; i < n; ++i) count += hit[static_cast<std::size_t>(i)];

  HarmonicEstimate e;
  e.value = static_cast<double>(count) / static_cast<double>(n);
  e.stderr_value = binomial_stderr(count, n);
  e.n_samples = n;
  e.seed = seed;
  e.resampled = resampled;
  return e;
}

HarmonicityReport check_harmonicity_mixed(const BoundaryObservable& phi, const AffineReal& g,
                                          const StepMeasure& boundary_mu,
                                          const StepMeasure& averaging_mu, long n,
                                          std::uint64_t seed, const SamplerOptions& sopt,
                                          const ProjectionOptions& popt, int workers) {
  if (n < 1) throw DomainError("need at least one sample");
  long p = boundary_mu.prime();
  if (averaging_mu.prime() != p || g.prime != p) {
    throw DomainError("prime mismatch between element and measures");
  }
  const auto& atoms = averaging_mu.atoms();
  const long A = static_cast<long>(atoms.size());

  // One batch serves g and every g.gamma; depth covers both evaluation paths.
  long depth = required_sample_depth(phi, g.exponent, popt);
  std::vector<AffineReal> args;
  args.reserve(atoms.size());
  for (const auto& a : atoms) {
    args.push_back(compose(g, a.step));
    depth = std::max(depth, required_sample_depth(phi, g.exponent + a.step.exponent, popt));
  }
  depth = std::max(depth, 1L);

  // Per-sample indicator values for g (column 0) and each g.gamma, plus a
  // flag recording any failure of the exact reduction.
  std::vector<std::uint8_t> values(static_cast<std::size_t>(n) * (A + 1));
  std::vector<std::uint8_t> reduction_bad(static_cast<std::size_t>(n), 0);

  long resampled = run_resampled(
      boundary_mu, depth, n, seed, sopt, workers, [&](long i, const TruncatedPadic& x) {
        std::vector<std::uint8_t> row(static_cast<std::size_t>(A) + 1);
        std::uint8_t bad = 0;
        row[0] = phi.evaluate(project(g, x, popt).point) ? 1 : 0;
        for (long j = 0; j < A; ++j) {
          auto direct = project(args[static_cast<std::size_t>(j)], x, popt);
          auto reduced = project(g, act_on_padic(atoms[static_cast<std::size_t>(j)].step, x), popt);
          if (!points_match(direct.point, reduced.point)) bad = 1;
          row[static_cast<std::size_t>(j) + 1] = phi.evaluate(direct.point) ? 1 : 0;
        }
        std::memcpy(&values[static_cast<std::size_t>(i) * (A + 1)], row.data(), row.size());
        reduction_bad[static_cast<std::size_t>(i)] = bad;
      });

  ScaledWeights w = integer_weights(averaging_mu);
  // Paired difference per sample, exact as an integer multiple of 1/denom.
  mpz_class sum = 0, sum_sq = 0;
  long count_g = 0;
  mpz_class rhs_num = 0;
  long failures = 0;
  for (long i = 0; i < n; ++i) {
    const std::uint8_t* row = &values[static_cast<std::size_t>(i) * (A + 1)];
    mpz_class slot = row[0] ? w.denom : mpz_class(0);
    for (long j = 0; j < A; ++j) {
      if (row[j + 1]) {
        slot -= w.scaled[static_cast<std::size_t>(j)];
        rhs_num += w.scaled[static_cast<std::size_t>(j)];
      }
    }
    count_g += row[0];
    sum += slot;
    sum_sq += slot * slot;
    failures += reduction_bad[static_cast<std::size_t>(i)];
  }

  mpq_class scale(w.denom * n);
  mpq_class gap_exact(abs(sum));
  gap_exact /= scale;
  mpq_class rhs_exact(rhs_num);
  rhs_exact /= scale;

  HarmonicityReport r;
  r.lhs = static_cast<double>(count_g) / static_cast<double>(n);
  r.rhs = rhs_exact.get_d();
  r.gap = gap_exact.get_d();
  r.n_samples = n;
  r.seed = seed;
  r.reduction_failures = failures;
  r.resampled = resampled;
  double denom_d = w.denom.get_d();
  double mean = mpq_class(mpq_class(sum) / scale).get_d();
  if (n > 1) {
    double var = (sum_sq.get_d() / (denom_d * denom_d) -
                  static_cast<double>(n) * mean * mean) /
                 static_cast<double>(n - 1);
    r.threshold = 3.0 * std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  r.pass = failures == 0 && r.gap <= r.threshold;
  return r;
}

HarmonicityReport check_harmonicity(const BoundaryObservable& phi, const AffineReal& g,
                                    const StepMeasure& mu, long n, std::uint64_t seed,
                                    const SamplerOptions& sopt, const ProjectionOptions& popt,
                                    int workers) {
  return check_harmonicity_mixed(phi, g, mu, mu, n, seed, sopt, popt, workers);
}

namespace {

// b mod p lands in [0,1): membership in [0,1) + pZ.
bool in_unit_interval_mod_p(double b, long p) {
  double pd = static_cast<double>(p);
  double r = b - pd * std::floor(b / pd);
  return r < 1.0;
}

}  // namespace

ExampleTable worked_example_table(const StepMeasure& mu, const std::vector<double>& b_grid,
                                  const std::vector<long>& m_values, long n, std::uint64_t seed,
                                  const SamplerOptions& sopt, const ProjectionOptions& popt,
                                  int workers) {
  if (b_grid.empty() || m_values.empty()) throw DomainError("empty worked-example grid");
  if (n < 2) throw DomainError("need at least two samples");
  long p = mu.prime();
  auto phi = BoundaryObservable::unit_digit_zero();

  const long M = static_cast<long>(m_values.size());
  const long R = static_cast<long>(b_grid.size()) * M;
  std::vector<AffineReal> args;
  args.reserve(static_cast<std::size_t>(R));
  long depth = 1;
  for (double b : b_grid) {
    for (long m : m_values) {
      args.push_back(AffineReal{p, b, m});
      depth = std::max(depth, required_sample_depth(phi, m, popt));
    }
  }

  // One shared batch across every row keeps the periodicity comparison exact
  // and the rows maximally correlated.
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(n) * R);
  const long kBetaPrefix = std::min<long>(5, n);
  std::vector<mpq_class> reps(static_cast<std::size_t>(kBetaPrefix));
  long resampled = run_resampled(
      mu, depth, n, seed, sopt, workers, [&](long i, const TruncatedPadic& x) {
        std::vector<std::uint8_t> row(static_cast<std::size_t>(R));
        for (long r = 0; r < R; ++r) {
          row[static_cast<std::size_t>(r)] =
              phi.evaluate(project(args[static_cast<std::size_t>(r)], x, popt).point) ? 1 : 0;
        }
        std::memcpy(&hits[static_cast<std::size_t>(i) * R], row.data(), row.size());
        if (i < kBetaPrefix) reps[static_cast<std::size_t>(i)] = x.representative();
      });

  // Cylinder masses from their own common-seed batch; sharing one sample set
  // across thresholds makes the mass exactly nondecreasing in m.
  std::vector<long> thresholds;
  thresholds.reserve(static_cast<std::size_t>(M));
  for (long m : m_values) thresholds.push_back(1 - m);
  auto curve = cylinder_mass_curve(mu, thresholds, n, derive_seed(seed, (1ULL << 40) + 1), sopt,
                                   workers);

  ExampleTable table;
  table.n_samples = n;
  table.seed = seed;
  table.resampled = resampled;
  table.all_pass = true;

  for (long ib = 0; ib < static_cast<long>(b_grid.size()); ++ib) {
    for (long im = 0; im < M; ++im) {
      long r = ib * M + im;
      long count = 0;
      for (long i = 0; i < n; ++i) count += hits[static_cast<std::size_t>(i) * R + r];

      ExampleRow row;
      row.b = b_grid[static_cast<std::size_t>(ib)];
      row.m = m_values[static_cast<std::size_t>(im)];
      row.estimate = static_cast<double>(count) / static_cast<double>(n);
      row.stderr_value = binomial_stderr(count, n);
      row.nu_hat = curve[static_cast<std::size_t>(im)].estimate;
      row.nu_stderr = curve[static_cast<std::size_t>(im)].stderr_value;
      row.inside = in_unit_interval_mod_p(row.b, p);
      bool in_unit = row.b >= 0.0 && row.b < 1.0;
      row.lower_bound = in_unit ? row.nu_hat : 0.0;
      row.upper_bound = (row.inside ? 1.0 : 0.0) + (1.0 - row.nu_hat);
      double sigma = 3.0 * std::sqrt(row.stderr_value * row.stderr_value +
                                     row.nu_stderr * row.nu_stderr);
      row.pass = row.estimate >= row.lower_bound - sigma &&
                 row.estimate <= row.upper_bound + sigma;
      table.all_pass = table.all_pass && row.pass;
      table.rows.push_back(row);
    }
  }

  // The collapse of the boundary integral to at most one translate rests on
  // uniqueness of the fundamental-domain representative; confirm it by
  // bounded search on a sample prefix wherever the exact data stays inside
  // the search box.
  for (const auto& row : table.rows) {
    mpq_class qb(row.b);
    qb.canonicalize();
    PadicRational b_exact(p);
    try {
      b_exact = PadicRational::from_mpq(p, qb);
    } catch (const DomainError&) {
      continue;  // grid value not in Z[1/p]
    }
    for (long i = 0; i < kBetaPrefix; ++i) {
      PadicRational x_exact = PadicRational::from_mpq(p, reps[static_cast<std::size_t>(i)]);
      auto shifted = mul_by_power(x_exact, row.m);
      if (!shifted.is_zero() && shifted.valuation() < -5) continue;
      mpq_class seam = qb + shifted.frac_part().to_mpq();
      if (seam.get_den() == 1) continue;  // exactly degenerate, excluded
      auto matches =
          fundamental_domain_matches(AffineExact{b_exact, row.m}, x_exact,
                                     UniquenessSearch{192, 6});
      ++table.beta_checks;
      if (matches.size() != 1) ++table.beta_mismatches;
    }
  }
  table.all_pass = table.all_pass && table.beta_mismatches == 0;
  return table;
}

MartingaleReport martingale_limit_probe(const BoundaryObservable& phi, const AffineReal& g,
                                        const StepMeasure& mu, long horizon, long n_paths,
                                        std::uint64_t seed, long inner_samples,
                                        const SamplerOptions& sopt,
                                        const ProjectionOptions& popt, int workers) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (n_paths < 1) throw DomainError("need at least one path");
  if (inner_samples < 2) throw DomainError("need at least two inner samples");
  if (g.prime != mu.prime()) throw DomainError("prime mismatch between element and measure");

  std::vector<long> checkpoints{std::max(1L, horizon / 4), std::max(1L, horizon / 2), horizon};
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  const long C = static_cast<long>(checkpoints.size());

  long depth_bnd = std::max(1L, required_sample_depth(phi, g.exponent, popt));
  SamplerOptions bopt = sopt;
  bopt.min_steps = std::max(bopt.min_steps, horizon);

  std::vector<MartingalePathResult> paths(static_cast<std::size_t>(n_paths));
  parallel_for_indexed(n_paths, workers, [&](long j) {
    MartingalePathResult res;
    WalkTrajectory traj;
    bool have_path = false;
    for (long att = 0; att < 32 && !have_path; ++att) {
      std::uint64_t ps = att == 0
                             ? derive_seed(seed, static_cast<std::uint64_t>(j))
                             : derive_seed(seed, static_cast<std::uint64_t>(j),
                                           900000ULL + static_cast<std::uint64_t>(att));
      // The boundary draw reuses the path seed, so its walk extends this
      // trajectory step for step.
      traj = run_walk(mu, horizon, ps);
      auto bnd = sample_boundary_to_depth(mu, depth_bnd, bopt, ps).value;
      try {
        res.boundary_value = phi.evaluate(project(g, bnd, popt).point) ? 1.0 : 0.0;
        res.path_seed = ps;
        have_path = true;
      } catch (const DegenerateBoundaryError&) {
      }
    }
    if (!have_path) {
      throw DegenerateBoundaryError("path " + std::to_string(j) +
                                    " kept hitting the degenerate set");
    }

    long depth_inner = 1;
    for (long k : checkpoints) {
      long s_k = traj.partials[static_cast<std::size_t>(k)].exponent;
      depth_inner = std::max(depth_inner, required_sample_depth(phi, g.exponent + s_k, popt));
    }

    // f(g r_k) by inner Monte Carlo; the reduced evaluation keeps every
    // translation small regardless of how far the walk has dilated.
    std::vector<long> counts(static_cast<std::size_t>(C), 0);
    for (long i = 0; i < inner_samples; ++i) {
      for (long att = 0;; ++att) {
        if (att >= 32) {
          throw DegenerateBoundaryError("inner sample stayed degenerate after 32 redraws");
        }
        std::uint64_t sub = 1 + static_cast<std::uint64_t>(inner_samples) *
                                    static_cast<std::uint64_t>(att) +
                            static_cast<std::uint64_t>(i);
        auto x = sample_boundary_to_depth(mu, depth_inner, sopt,
                                          derive_seed(seed, static_cast<std::uint64_t>(j), sub))
                     .value;
        std::vector<std::uint8_t> vals(static_cast<std::size_t>(C));
        try {
          for (long c = 0; c < C; ++c) {
            const auto& r_k = traj.partials[static_cast<std::size_t>(checkpoints[c])];
            vals[static_cast<std::size_t>(c)] =
                phi.evaluate(project(g, act_on_padic(r_k, x), popt).point) ? 1 : 0;
          }
        } catch (const DegenerateBoundaryError&) {
          continue;
        }
        for (long c = 0; c < C; ++c) counts[static_cast<std::size_t>(c)] += vals[c];
        break;
      }
    }

    for (long c = 0; c < C; ++c) {
      MartingaleCheckpoint cp;
      cp.step = checkpoints[static_cast<std::size_t>(c)];
      cp.estimate = static_cast<double>(counts[static_cast<std::size_t>(c)]) /
                    static_cast<double>(inner_samples);
      cp.stderr_value = binomial_stderr(counts[static_cast<std::size_t>(c)], inner_samples);
      res.checkpoints.push_back(cp);
    }
    const auto& terminal = res.checkpoints.back();
    res.tolerance = 3.0 * terminal.stderr_value + 0.02;
    res.agrees = std::fabs(terminal.estimate - res.boundary_value) <= res.tolerance;
    paths[static_cast<std::size_t>(j)] = std::move(res);
  });

  MartingaleReport report;
  report.paths = std::move(paths);
  report.n_paths = n_paths;
  for (const auto& pr : report.paths) report.agreeing += pr.agrees ? 1 : 0;
  report.agreement_fraction =
      static_cast<double>(report.agreeing) / static_cast<double>(n_paths);
  report.horizon = horizon;
  report.inner_samples = inner_samples;
  report.seed = seed;
  report.pass = report.agreement_fraction >= 0.95;
  return report;
}

}  // namespace solwalk
