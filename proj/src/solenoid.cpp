#include "solwalk/solenoid.hpp"

#include <cmath>

namespace solwalk {

SolenoidPoint make_solenoid_point(double x_inf, TruncatedPadic x_p) {
  if (!(x_inf >= 0.0 && x_inf < 1.0)) {
    throw DomainError("x_inf = " + std::to_string(x_inf) + " outside [0,1)");
  }
  if (!x_p.valuation_at_least(0)) {
    throw DomainError("p-adic part of a domain point must lie in Z_p");
  }
  return SolenoidPoint{x_inf, std::move(x_p)};
}

ProjectionResult project(const AffineReal& g, const TruncatedPadic& x,
                         const ProjectionOptions& opt) {
  if (g.prime != x.prime()) throw DomainError("prime mismatch in projection");
  long m = g.exponent;
  if (x.end() + m < std::max(opt.guard_digits, 0L)) {
    throw PrecisionError("projection at exponent " + std::to_string(m) +
                         " needs digits certified through index " +
                         std::to_string(std::max(opt.guard_digits, 0L) - m) + ", have " +
                         std::to_string(x.end()));
  }
  TruncatedPadic shifted = shift(x, m);
  PadicRational alpha = shifted.frac_part();
  double t = g.translation + alpha.to_double();
  if (!(std::fabs(t) < 9e15)) throw DomainError("translation too large for exact floor");
  double nearest = std::nearbyint(t);
  double dist = std::fabs(t - nearest);
  if (dist != 0.0 && dist < opt.degenerate_eps) {
    throw DegenerateBoundaryError("b + alpha = " + std::to_string(t) +
                                  " within eps of an integer");
  }
  double fl = std::floor(t);
  PadicRational k =
      PadicRational(x.prime(), static_cast<long>(fl)) - alpha;
  double x_inf = t - fl;
  if (x_inf >= 1.0) x_inf = 0.0;  // only reachable through rounding at the seam
  TruncatedPadic x_p = add_rational(shifted, k);
  return ProjectionResult{make_solenoid_point(x_inf, std::move(x_p)),
                          AffineExact{std::move(k), m}};
}

ProjectionResult project(const AffineExact& g, const TruncatedPadic& x,
                         const ProjectionOptions& opt) {
  return project(to_real(g), x, opt);
}

bool points_match(const SolenoidPoint& a, const SolenoidPoint& b) {
  if (!congruent(a.x_p, b.x_p)) return false;
  double d = std::fabs(a.x_inf - b.x_inf);
  // The real coordinate lives on a circle; 0 and 1-eps are neighbours.
  return d <= kXInfTolerance || d >= 1.0 - kXInfTolerance;
}

bool star_invariance_check(const AffineReal& g, const TruncatedPadic& x,
                           const AffineExact& gamma, const ProjectionOptions& opt) {
  ProjectionResult direct = project(g, x, opt);
  ProjectionResult moved =
      project(compose(g, inverse(gamma)), act_on_padic(gamma, x), opt);
  if (!points_match(direct.point, moved.point)) return false;
  return moved.gamma == compose(direct.gamma, inverse(gamma));
}

SolenoidPoint act(const AffineReal& g0, const SolenoidPoint& s, const ProjectionOptions& opt) {
  AffineReal combined = compose(g0, AffineReal{g0.prime, s.x_inf, 0});
  return project(combined, s.x_p, opt).point;
}

SolenoidPoint sample_nu_tilde(const StepMeasure& mu, long precision, const SamplerOptions& sopt,
                              std::uint64_t seed, const ProjectionOptions& popt) {
  long depth = std::max(precision, popt.guard_digits);
  BoundarySample sample = sample_boundary_to_depth(mu, depth, sopt, seed);
  return project(identity_real(mu.prime()), sample.value, popt).point;
}

std::vector<PadicRational> fundamental_domain_matches(const AffineExact& g,
                                                      const PadicRational& x,
                                                      const UniquenessSearch& bounds) {
  long p = g.prime();
  if (x.prime() != p) throw DomainError("prime mismatch in fundamental domain search");
  mpq_class b = g.translation.to_mpq();
  std::vector<PadicRational> matches;
  for (long e = 0; e <= bounds.max_denom_exp; ++e) {
    for (long j = -bounds.max_numerator; j <= bounds.max_numerator; ++j) {
      if (e > 0 && j % p == 0) continue;  // canonical representatives only
      PadicRational k(p, mpz_class(j), e);
      // gamma * (g, x) = ((b - k, p^0 after matching exponents), p^m x + k):
      // real part must land in [0,1), p-adic part in Z_p; both checks exact.
      mpq_class real_part = b - k.to_mpq();
      if (real_part < 0 || real_part >= 1) continue;
      PadicRational moved = mul_by_power(x, g.exponent) + k;
      if (!moved.is_zero() && moved.valuation() < 0) continue;
      matches.push_back(std::move(k));
    }
  }
  return matches;
}

}  // namespace solwalk
