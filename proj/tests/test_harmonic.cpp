#include "solwalk/harmonic.hpp"

#include <doctest.h>

#include <cmath>

#include "solwalk/rng.hpp"

using namespace solwalk;

namespace {

StepMeasure point_mass(long p, const char* b, long m) {
  std::vector<WeightedStep> atoms{{make_exact(p, b, m), mpq_class(1)}};
  return StepMeasure(p, std::move(atoms));
}

}  // namespace

TEST_CASE("observable evaluation") {
  auto one = BoundaryObservable::constant_one();
  auto star = BoundaryObservable::unit_digit_zero();
  auto s_even = make_solenoid_point(0.25, truncate(PadicRational(2, 4), 6));
  auto s_odd = make_solenoid_point(0.25, truncate(PadicRational(2, 3), 6));
  CHECK(one.evaluate(s_even));
  CHECK(one.evaluate(s_odd));
  CHECK(star.evaluate(s_even));
  CHECK(!star.evaluate(s_odd));
  CHECK(one.max_digit_index() == -1);
  CHECK(star.max_digit_index() == 0);

  auto cyl = BoundaryObservable::cylinder({{0, 0}, {1, 0}}, {{0.0, 0.5}});
  CHECK(cyl.evaluate(s_even));
  CHECK(!cyl.evaluate(make_solenoid_point(0.75, truncate(PadicRational(2, 4), 6))));
  CHECK(!cyl.evaluate(make_solenoid_point(0.25, truncate(PadicRational(2, 2), 6))));
  CHECK(cyl.max_digit_index() == 1);

  CHECK_THROWS_AS(BoundaryObservable::cylinder({{-1, 0}}), DomainError);
  CHECK_THROWS_AS(BoundaryObservable::cylinder({}, {{0.5, 0.5}}), DomainError);

  // Depth planning: the unit-digit observable needs the guard digits minus
  // the applied exponent.
  CHECK(required_sample_depth(star, 0) == 2);
  CHECK(required_sample_depth(star, 3) == -1);
  CHECK(required_sample_depth(BoundaryObservable::cylinder({{4, 1}}), 0) == 5);
}

TEST_CASE("poisson transform basics") {
  auto mu = mu_star(2);
  auto one = BoundaryObservable::constant_one();
  auto star = BoundaryObservable::unit_digit_zero();

  auto c = poisson_transform(one, identity_real(2), mu, 500, 11);
  CHECK(c.value == 1.0);
  CHECK(c.stderr_value == 0.0);
  CHECK(c.n_samples == 500);

  // Deterministic boundary: the point mass at (1,2) has Z_inf = -1 exactly,
  // whose unit digit is 1.
  auto pm = point_mass(2, "1", 1);
  auto f0 = poisson_transform(star, identity_real(2), pm, 200, 3);
  CHECK(f0.value == 0.0);
  auto d1 = BoundaryObservable::cylinder({{0, 1}});
  CHECK(poisson_transform(d1, identity_real(2), pm, 200, 3).value == 1.0);

  // Batch self-consistency at the identity.
  auto a = poisson_transform(star, identity_real(2), mu, 20000, 101);
  auto b = poisson_transform(star, identity_real(2), mu, 20000, 202);
  double se = std::sqrt(a.stderr_value * a.stderr_value + b.stderr_value * b.stderr_value);
  CHECK(std::fabs(a.value - b.value) <= 3.0 * se);
  CHECK(a.resampled == 0);

  // Same seed, same result; worker fan-out cannot change the bytes.
  auto r1 = poisson_transform(star, AffineReal{2, 0.3, 1}, mu, 5000, 77, {}, {}, 1);
  auto r4 = poisson_transform(star, AffineReal{2, 0.3, 1}, mu, 5000, 77, {}, {}, 4);
  CHECK(r1.value == r4.value);
  CHECK(r1.stderr_value == r4.stderr_value);

  CHECK_THROWS_AS(poisson_transform(star, AffineReal{3, 0.3, 0}, mu, 10, 1), DomainError);
  CHECK_THROWS_AS(poisson_transform(star, identity_real(2), mu, 0, 1), DomainError);
}

TEST_CASE("poisson transform periodicity") {
  auto mu = mu_star(2);
  auto star = BoundaryObservable::unit_digit_zero();
  // Identical per-sample digits: shifting b by p moves k by exactly p, which
  // never touches the unit digit.
  for (long m : {-1L, 0L, 1L, 3L}) {
    auto lo = poisson_transform(star, AffineReal{2, 0.3, m}, mu, 4000, 99);
    auto hi = poisson_transform(star, AffineReal{2, 2.3, m}, mu, 4000, 99);
    CHECK(lo.value == hi.value);
    CHECK(lo.stderr_value == hi.stderr_value);
  }
}

TEST_CASE("harmonicity identity") {
  auto mu = mu_star(2);
  auto star = BoundaryObservable::unit_digit_zero();
  auto one = BoundaryObservable::constant_one();

  // Averaging over the identity point mass pairs each sample with itself.
  auto paired = check_harmonicity_mixed(star, AffineReal{2, 0.3, 0}, mu, point_mass(2, "0", 0),
                                        2000, 5);
  CHECK(paired.gap == 0.0);
  CHECK(paired.reduction_failures == 0);
  CHECK(paired.pass);

  // Constant observables are harmonic with gap exactly zero.
  auto constant = check_harmonicity(one, AffineReal{2, 1.7, -1}, mu, 2000, 6);
  CHECK(constant.gap == 0.0);
  CHECK(constant.pass);

  // The worked-example observable at the example elements.
  for (auto g : {AffineReal{2, 0.3, 0}, AffineReal{2, 0.5, 1}, AffineReal{2, 1.7, -1}}) {
    auto rep = check_harmonicity(star, g, mu, 20000, 7);
    CHECK(rep.reduction_failures == 0);
    CHECK(rep.resampled == 0);
    CHECK(rep.gap <= rep.threshold);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.lhs - rep.rhs) == doctest::Approx(rep.gap).epsilon(1e-12));
  }

  // Deterministic given (seed, workers).
  auto w1 = check_harmonicity(star, AffineReal{2, 0.5, 0}, mu, 4000, 8, {}, {}, 1);
  auto w4 = check_harmonicity(star, AffineReal{2, 0.5, 0}, mu, 4000, 8, {}, {}, 4);
  CHECK(w1.lhs == w4.lhs);
  CHECK(w1.rhs == w4.rhs);
  CHECK(w1.gap == w4.gap);
}

TEST_CASE("worked example table") {
  auto mu = mu_star(2);
  auto table =
      worked_example_table(mu, {0.25, 0.5, 0.75, 1.5}, {1, 2, 3, 4, 5, 6, 7, 8}, 4000, 31);
  REQUIRE(table.rows.size() == 32);
  CHECK(table.all_pass);
  CHECK(table.beta_checks > 0);
  CHECK(table.beta_mismatches == 0);

  // Cylinder masses are exactly nondecreasing in m and reach near 1.
  for (std::size_t i = 0; i + 1 < 8; ++i) {
    CHECK(table.rows[i].nu_hat <= table.rows[i + 1].nu_hat);
  }
  CHECK(table.rows[7].nu_hat >= 0.99);

  // Inside points climb toward 1, the outside point falls toward 0.
  const auto& inside_deep = table.rows[7];   // b = 0.25, m = 8
  const auto& outside_deep = table.rows[31]; // b = 1.5, m = 8
  CHECK(inside_deep.estimate >= inside_deep.nu_hat - 3 * inside_deep.stderr_value);
  CHECK(outside_deep.estimate <= 1.0 - outside_deep.nu_hat + 3 * outside_deep.stderr_value);
  CHECK(inside_deep.inside);
  CHECK(!outside_deep.inside);

  // Periodicity across the grid: b and b + p rows are identical.
  auto per = worked_example_table(mu, {0.25, 2.25}, {1, 2, 3}, 2000, 77);
  for (int im = 0; im < 3; ++im) {
    CHECK(per.rows[static_cast<std::size_t>(im)].estimate ==
          per.rows[static_cast<std::size_t>(3 + im)].estimate);
  }

  CHECK_THROWS_AS(worked_example_table(mu, {}, {1}, 100, 1), DomainError);
  CHECK_THROWS_AS(worked_example_table(mu, {0.5}, {1}, 1, 1), DomainError);
}

TEST_CASE("martingale limit probe") {
  auto mu = mu_star(2);
  auto star = BoundaryObservable::unit_digit_zero();
  auto one = BoundaryObservable::constant_one();

  // Constant observable: every path agrees exactly.
  auto c = martingale_limit_probe(one, AffineReal{2, 0.3, 0}, mu, 40, 5, 13, 50);
  CHECK(c.agreement_fraction == 1.0);
  for (const auto& pr : c.paths) {
    CHECK(pr.boundary_value == 1.0);
    CHECK(pr.checkpoints.back().estimate == 1.0);
  }

  // Point mass at (1,2): x = -1 is a fixed point of every r_k, so the inner
  // estimates and the boundary value coincide exactly.
  auto pm = point_mass(2, "1", 1);
  auto fixed = martingale_limit_probe(star, AffineReal{2, 0.3, 0}, pm, 30, 3, 17, 40);
  CHECK(fixed.agreement_fraction == 1.0);
  for (const auto& pr : fixed.paths) {
    CHECK(pr.checkpoints.back().stderr_value == 0.0);
    CHECK(pr.checkpoints.back().estimate == pr.boundary_value);
  }

  // Generic case at reduced scale.
  auto rep = martingale_limit_probe(star, AffineReal{2, 0.3, 0}, mu, 60, 20, 23, 300, {}, {}, 4);
  CHECK(rep.n_paths == 20);
  CHECK(rep.agreement_fraction >= 0.95);
  CHECK(rep.pass);
  for (const auto& pr : rep.paths) {
    REQUIRE(pr.checkpoints.size() == 3);
    CHECK(pr.checkpoints[0].step == 15);
    CHECK(pr.checkpoints[2].step == 60);
  }

  // Deterministic under worker fan-out.
  auto s1 = martingale_limit_probe(star, AffineReal{2, 0.3, 0}, mu, 40, 6, 29, 100, {}, {}, 1);
  auto s4 = martingale_limit_probe(star, AffineReal{2, 0.3, 0}, mu, 40, 6, 29, 100, {}, {}, 4);
  REQUIRE(s1.paths.size() == s4.paths.size());
  for (std::size_t i = 0; i < s1.paths.size(); ++i) {
    CHECK(s1.paths[i].checkpoints.back().estimate == s4.paths[i].checkpoints.back().estimate);
    CHECK(s1.paths[i].boundary_value == s4.paths[i].boundary_value);
  }

  CHECK_THROWS_AS(martingale_limit_probe(star, AffineReal{2, 0.3, 0}, mu, 0, 5, 1, 50),
                  DomainError);
}
