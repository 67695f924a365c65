#include "solwalk/solenoid.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "solwalk/rng.hpp"

using namespace solwalk;

namespace {

PadicRational q(long p, const char* text) { return PadicRational::parse(p, text); }

// mu*-support word of length <= max_len.
AffineExact random_word(Rng& rng, const StepMeasure& mu, int max_len) {
  AffineExact g = identity_exact(mu.prime());
  int len = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_len));
  for (int i = 0; i < len; ++i) g = compose(g, mu.sample(rng.next_u64()));
  return g;
}

TruncatedPadic random_truncated(Rng& rng, long p, long end) {
  long num = static_cast<long>(rng.next_u64() % 8191) - 4095;
  long exp = static_cast<long>(rng.next_u64() % 4);  // valuation >= -3
  PadicRational v(p, mpz_class(num), exp);
  if (v.is_zero() || v.valuation() >= end) return TruncatedPadic::zero_class(p, end);
  return truncate(v, end);
}

// Domain points need a p-adic integer coordinate.
TruncatedPadic random_zp(Rng& rng, long p, long end) {
  long num = static_cast<long>(rng.next_u64() % 8191) - 4095;
  PadicRational v(p, mpz_class(num), 0);
  if (v.is_zero() || v.valuation() >= end) return TruncatedPadic::zero_class(p, end);
  return truncate(v, end);
}

}  // namespace

TEST_CASE("projection of known points") {
  // Already in the domain: k = 0.
  auto in_domain = project(AffineReal{2, 0.37, 0}, truncate(q(2, "5"), 8));
  CHECK(in_domain.gamma == identity_exact(2));
  CHECK(in_domain.point.x_inf == 0.37);
  CHECK(congruent(in_domain.point.x_p, truncate(q(2, "5"), 8)));

  auto a = project(AffineReal{2, 0.3, 0}, truncate(q(2, "1/2"), 8));
  CHECK(a.gamma.translation == q(2, "-1/2"));
  CHECK(a.gamma.exponent == 0);
  CHECK(a.point.x_inf == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(a.point.x_p.is_zero_class());

  auto b = project(AffineReal{2, 1.7, 0}, TruncatedPadic::zero_class(2, 8));
  CHECK(b.gamma.translation == q(2, "1"));
  CHECK(b.point.x_inf == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(congruent(b.point.x_p, truncate(q(2, "1"), 8)));

  // Exact integer hit of b + alpha keeps the point with x_inf = 0.
  auto seam = project(AffineReal{2, 0.5, 0}, truncate(q(2, "1/2"), 8));
  CHECK(seam.point.x_inf == 0.0);
  CHECK(seam.gamma.translation == q(2, "1/2"));
  CHECK(congruent(seam.point.x_p, truncate(q(2, "1"), 8)));
}

TEST_CASE("projection guard rails") {
  CHECK_THROWS_AS(project(AffineReal{2, 0.5 - 1e-12, 0}, truncate(q(2, "1/2"), 8)),
                  DegenerateBoundaryError);
  // end + m below the guard.
  CHECK_THROWS_AS(project(AffineReal{2, 0.3, -8}, truncate(q(2, "1"), 6)), PrecisionError);
  CHECK_THROWS_AS(project(AffineReal{2, 0.3, 0}, TruncatedPadic::zero_class(2, 1)),
                  PrecisionError);
  CHECK_THROWS_AS(project(AffineReal{3, 0.3, 0}, truncate(q(2, "1"), 6)), DomainError);
}

TEST_CASE("projection agrees with the bounded search oracle") {
  Rng rng(2024);
  ProjectionOptions popt;
  for (int iter = 0; iter < 300; ++iter) {
    long p = (iter % 2 == 0) ? 2 : 3;
    long e = static_cast<long>(rng.next_u64() % 4);
    mpz_class den = prime_power(p, e);
    long u = static_cast<long>(rng.next_u64() % den.get_ui());
    long m = static_cast<long>(rng.next_u64() % 7) - 3;
    AffineExact g{PadicRational(p, mpz_class(u), e), m};

    // Keep vp(p^m x) >= -3 for p=3 (and >= -6 for p=2) so the true k has
    // numerator within the default |j| <= 64 search box.
    long max_exp = (p == 2) ? 3 : std::min<long>(3, m + 3);
    long xnum = static_cast<long>(rng.next_u64() % 2001) - 1000;
    PadicRational x(p, mpz_class(xnum),
                    max_exp <= 0 ? 0 : static_cast<long>(rng.next_u64() % (max_exp + 1)));

    // Skip the measure-zero degenerate set b + alpha(p^m x) in Z.
    mpq_class seam = g.translation.to_mpq() + mul_by_power(x, m).frac_part().to_mpq();
    if (seam.get_den() == 1) continue;

    auto matches = fundamental_domain_matches(g, x);
    REQUIRE(matches.size() == 1);

    // Widening the search box finds nothing new.
    auto wide = fundamental_domain_matches(g, x, UniquenessSearch{128, 7});
    CHECK(wide.size() == 1);
    CHECK(wide[0] == matches[0]);

    auto xt = (x.is_zero() || x.valuation() >= 9) ? TruncatedPadic::zero_class(p, 12)
                                                  : truncate(x, 12);
    auto pr = project(to_real(g), xt, popt);
    CHECK(pr.gamma.translation == matches[0]);
    CHECK(pr.gamma.exponent == g.exponent);
  }
}

TEST_CASE("star invariance") {
  auto mu = mu_star(2);
  Rng rng(555);
  CHECK(star_invariance_check(AffineReal{2, 0.37, 1}, random_truncated(rng, 2, 10),
                              identity_exact(2)));
  long failures = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    AffineReal g{2, rng.next_unit() * 4 - 2, static_cast<long>(rng.next_u64() % 7) - 3};
    auto gamma = random_word(rng, mu, 5);
    auto x = random_truncated(rng, 2, 12);
    if (!star_invariance_check(g, x, gamma)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("induced action on the domain") {
  auto s = make_solenoid_point(0.25, TruncatedPadic::zero_class(2, 10));
  auto id_act = act(identity_real(2), s);
  CHECK(id_act.x_inf == s.x_inf);
  CHECK(id_act.x_p == s.x_p);

  auto moved = act(AffineReal{2, 1.0, 1}, s);
  CHECK(moved.x_inf == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(congruent(moved.x_p, truncate(q(2, "1"), 11)));

  // Left action law on random triples.
  Rng rng(777);
  for (int iter = 0; iter < 2000; ++iter) {
    AffineReal g1{2, rng.next_unit() * 4 - 2, static_cast<long>(rng.next_u64() % 5) - 2};
    AffineReal g2{2, rng.next_unit() * 4 - 2, static_cast<long>(rng.next_u64() % 5) - 2};
    auto sp = make_solenoid_point(rng.next_unit(), random_zp(rng, 2, 14));
    auto lhs = act(g1, act(g2, sp));
    auto rhs = act(compose(g1, g2), sp);
    CHECK(points_match(lhs, rhs));
  }
}

TEST_CASE("boundary equivariance") {
  auto mu = mu_star(2);
  Rng rng(888);
  for (int iter = 0; iter < 1000; ++iter) {
    auto gamma = random_word(rng, mu, 4);
    auto x = random_truncated(rng, 2, 12);
    auto via_domain = act(to_real(gamma), project(identity_real(2), x).point);
    auto direct = project(identity_real(2), act_on_padic(gamma, x)).point;
    CHECK(points_match(via_domain, direct));
  }
}

TEST_CASE("nu-tilde sampling") {
  SamplerOptions sopt;
  // Point mass at (1, 2): the boundary value is a p-adic integer, so the
  // real coordinate must be exactly zero.
  std::vector<WeightedStep> one{{make_exact(2, "1", 1), mpq_class(1)}};
  auto integral = StepMeasure(2, std::move(one));
  auto s0 = sample_nu_tilde(integral, 8, sopt, 9);
  CHECK(s0.x_inf == 0.0);
  for (long i = 0; i < 8; ++i) CHECK(s0.x_p.digit_at(i) == 1);

  auto mu = mu_star(2);
  long zero_atoms = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto s = sample_nu_tilde(mu, 6, sopt, derive_seed(4242, i));
    CHECK(s.x_inf >= 0.0);
    CHECK(s.x_inf < 1.0);
    CHECK(s.x_p.valuation_at_least(0));
    if (s.x_inf == 0.0) ++zero_atoms;
  }
  // The real marginal is atomic; the atom at 0 carries the mass of Z_p,
  // about 2/3 here, so exact collisions at 0.0 must dominate.
  CHECK(zero_atoms > 1100);
}

TEST_CASE("nu-tilde stationarity for a digit observable") {
  auto mu = mu_star(2);
  SamplerOptions sopt;
  auto phi = [](const SolenoidPoint& s) { return s.x_p.digit_at(0) == 0 ? 1.0 : 0.0; };
  const long n = 4000;
  long base_hits = 0, moved_hits = 0;
  Rng gamma_rng(615);
  for (long i = 0; i < n; ++i) {
    auto s = sample_nu_tilde(mu, 8, sopt, derive_seed(10101, static_cast<std::uint64_t>(i)));
    base_hits += phi(s) == 1.0 ? 1 : 0;
    auto gamma = mu.sample(gamma_rng.next_u64());
    moved_hits += phi(act(to_real(gamma), s)) == 1.0 ? 1 : 0;
  }
  double pb = static_cast<double>(base_hits) / n;
  double pm = static_cast<double>(moved_hits) / n;
  double se = std::sqrt((pb * (1 - pb) + pm * (1 - pm)) / n);
  CHECK(std::fabs(pb - pm) <= 3.0 * se + 1e-12);
}
