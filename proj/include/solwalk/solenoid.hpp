#ifndef SOLWALK_SOLENOID_HPP_
#define SOLWALK_SOLENOID_HPP_

#include <cstdint>
#include <vector>

#include "solwalk/affine.hpp"
#include "solwalk/walk.hpp"

namespace solwalk {

// Point of the fundamental domain [0,1) x Z_p of the p-solenoid.
struct SolenoidPoint {
  double x_inf = 0.0;
  TruncatedPadic x_p;
};

// Validates the domain invariants (0 <= x_inf < 1, certified |x_p|_p <= 1).
SolenoidPoint make_solenoid_point(double x_inf, TruncatedPadic x_p);

struct ProjectionOptions {
  // Reject when b + alpha lands strictly inside (0, eps) of an integer; an
  // exact integer hit is kept (x_inf = 0), since with dyadic inputs it is a
  // genuine point of the domain, not a float artifact.
  double degenerate_eps = 1e-9;
  // Certified digits the projected p-adic part must retain.
  long guard_digits = 2;
};

struct ProjectionResult {
  SolenoidPoint point;
  // The unique gamma = (k, p^m) with gamma * (g, x) in the domain; its
  // exponent always matches the input's.
  AffineExact gamma;
};

// k = floor(b + alpha(p^m x)) - alpha(p^m x); point (b - k, p^m x + k).
// alpha is read off the certified digits below index 0, so x needs
// end + m >= guard_digits.
ProjectionResult project(const AffineReal& g, const TruncatedPadic& x,
                         const ProjectionOptions& opt = {});
ProjectionResult project(const AffineExact& g, const TruncatedPadic& x,
                         const ProjectionOptions& opt = {});

// Tolerance for comparing the real coordinates of two projections computed
// along different floating-point paths.
inline constexpr double kXInfTolerance = 1e-9;

bool points_match(const SolenoidPoint& a, const SolenoidPoint& b);

// Verifies project(g gamma^-1, gamma.x) = project(g, x): same point and the
// composed-gamma relation, exact on the p-adic side.
bool star_invariance_check(const AffineReal& g, const TruncatedPadic& x,
                           const AffineExact& gamma, const ProjectionOptions& opt = {});

// Induced left action on the domain: project(compose(g0, (x_inf, 1)), x_p).
SolenoidPoint act(const AffineReal& g0, const SolenoidPoint& s,
                  const ProjectionOptions& opt = {});

// One draw of the stationary measure pushed to the domain:
// (alpha(x), x - alpha(x)) for x ~ boundary law, with at least `precision`
// certified digits on the p-adic part.
SolenoidPoint sample_nu_tilde(const StepMeasure& mu, long precision, const SamplerOptions& sopt,
                              std::uint64_t seed, const ProjectionOptions& popt = {});

struct UniquenessSearch {
  long max_numerator = 64;  // |j| bound for k = j/p^e
  long max_denom_exp = 6;   // e bound
};

// Exhaustively counts k = j/p^e in the search box such that (k, p^m) moves
// the exact pair (g, x) into the domain; the contract away from the
// degenerate set is exactly one hit. Returns every matching k.
std::vector<PadicRational> fundamental_domain_matches(const AffineExact& g,
                                                      const PadicRational& x,
                                                      const UniquenessSearch& bounds = {});

}  // namespace solwalk

#endif  // SOLWALK_SOLENOID_HPP_
