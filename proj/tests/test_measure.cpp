#include "solwalk/measure.hpp"

#include <doctest.h>

#include <cmath>

#include "solwalk/rng.hpp"

using namespace solwalk;

namespace {

StepMeasure uniform_pm(long p) {
  std::vector<WeightedStep> atoms;
  atoms.push_back({make_exact(p, "1", 1), mpq_class(1, 2)});
  atoms.push_back({make_exact(p, "1", -1), mpq_class(1, 2)});
  return StepMeasure(p, std::move(atoms));
}

const PlaceDrift& drift_at(const SpectrumResult& s, long place) {
  for (const auto& d : s.drifts) {
    if (d.place == place) return d;
  }
  REQUIRE(false);
  return s.drifts.front();
}

}  // namespace

TEST_CASE("drift of the worked-example measure") {
  for (long p : {2L, 3L, 5L}) {
    auto mu = mu_star(p);
    auto dp = mu.drift_p();
    CHECK(dp.coeff == mpq_class(-1, 3));
    CHECK(dp.log_base == p);
    CHECK(dp.sign() == -1);
    CHECK(dp.value() == doctest::Approx(-std::log(static_cast<double>(p)) / 3).epsilon(1e-15));

    auto di = mu.drift_inf();
    CHECK(di.coeff == mpq_class(1, 3));
    CHECK(di.sign() == 1);
    CHECK(dp.coeff + di.coeff == 0);  // BS(1,p): phi_inf = -phi_p
  }
  CHECK(mu_star(2).drift_p().to_string() == "-1/3*log(2)");
}

TEST_CASE("degenerate drifts") {
  CHECK(uniform_pm(2).drift_p().sign() == 0);
  CHECK(uniform_pm(2).drift_p().to_string() == "0");

  std::vector<WeightedStep> one{{make_exact(2, "5/8", 0), mpq_class(1)}};
  auto point = StepMeasure(2, std::move(one));
  CHECK(point.drift_p().sign() == 0);
  CHECK(point.validate().regime == "zero drift (no contracting boundary)");
}

TEST_CASE("weight validation") {
  std::vector<WeightedStep> bad{{make_exact(2, "0", 1), mpq_class(-1, 2)},
                                {make_exact(2, "1", -1), mpq_class(3, 2)}};
  CHECK_THROWS_AS(StepMeasure(2, std::move(bad)), DomainError);

  std::vector<WeightedStep> short_sum{{make_exact(2, "0", 1), mpq_class(99, 100)}};
  CHECK_THROWS_AS(StepMeasure(2, std::move(short_sum)), DomainError);

  auto report = mu_star(2).validate();
  CHECK(report.weights_positive);
  CHECK(report.weights_sum_to_one);
  CHECK(report.has_expanding_step);
  CHECK(report.has_contracting_step);
  CHECK(report.drift_p_sign == -1);
  CHECK(report.regime == "boundary on Q_p (phi_p < 0)");
}

TEST_CASE("drift is linear in the measure") {
  // (1/4) mu1 + (3/4) mu2 assembled as a single atom list.
  auto mu1 = mu_star(2);
  auto mu2 = uniform_pm(2);
  std::vector<WeightedStep> mix;
  for (const auto& a : mu1.atoms()) mix.push_back({a.step, a.weight * mpq_class(1, 4)});
  for (const auto& a : mu2.atoms()) mix.push_back({a.step, a.weight * mpq_class(3, 4)});
  auto mixed = StepMeasure(2, std::move(mix));
  CHECK(mixed.drift_p().coeff ==
        mpq_class(1, 4) * mu1.drift_p().coeff + mpq_class(3, 4) * mu2.drift_p().coeff);
}

TEST_CASE("inverse CDF sampling") {
  std::vector<WeightedStep> one{{make_exact(2, "1", 1), mpq_class(1)}};
  auto point = StepMeasure(2, std::move(one));
  Rng r0(99);
  for (int i = 0; i < 100; ++i) CHECK(point.sample_index(r0.next_u64()) == 0);

  auto mu = uniform_pm(2);
  Rng rng(31337);
  long hits = 0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) {
    if (mu.sample_index(rng.next_u64()) == 0) ++hits;
  }
  double freq = static_cast<double>(hits) / n;
  CHECK(std::fabs(freq - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("boundary spectrum of a rational a-marginal") {
  std::vector<RationalAtom> atoms{{mpq_class(0), mpq_class(3, 2), mpq_class(2, 3)},
                                  {mpq_class(0), mpq_class(2, 3), mpq_class(1, 3)}};
  auto s = boundary_spectrum(RationalStepMeasure(std::move(atoms)));

  const auto& d2 = drift_at(s, 2);
  CHECK(d2.drift.coeff == mpq_class(1, 3));
  CHECK(d2.drift.log_base == 2);
  CHECK(!d2.negative);

  const auto& d3 = drift_at(s, 3);
  CHECK(d3.drift.coeff == mpq_class(-1, 3));
  CHECK(d3.negative);

  const auto& dinf = drift_at(s, kArchimedeanPlace);
  CHECK(dinf.drift.coeff == mpq_class(1, 3));
  CHECK(dinf.drift.log_base == mpq_class(3, 2));
  CHECK(!dinf.negative);
  CHECK(dinf.drift.value() == doctest::Approx(std::log(1.5) / 3).epsilon(1e-15));

  CHECK(s.boundary_places == std::vector<long>{3});
}

TEST_CASE("spectrum edge cases") {
  std::vector<RationalAtom> triv{{mpq_class(7), mpq_class(1), mpq_class(1)}};
  auto s = boundary_spectrum(RationalStepMeasure(std::move(triv)));
  CHECK(s.boundary_places.empty());
  CHECK(drift_at(s, kArchimedeanPlace).drift.sign() == 0);

  auto star = boundary_spectrum(to_rational(mu_star(2)));
  CHECK(star.boundary_places == std::vector<long>{2});
  CHECK(drift_at(star, 2).drift.coeff == mpq_class(-1, 3));
  CHECK(drift_at(star, kArchimedeanPlace).drift.sign() == 1);
}

TEST_CASE("spectrum is invariant under atom refinement") {
  std::vector<RationalAtom> base{{mpq_class(1), mpq_class(3, 2), mpq_class(2, 3)},
                                 {mpq_class(0), mpq_class(2, 3), mpq_class(1, 3)}};
  std::vector<RationalAtom> refined{{mpq_class(1), mpq_class(3, 2), mpq_class(1, 3)},
                                    {mpq_class(1), mpq_class(3, 2), mpq_class(1, 3)},
                                    {mpq_class(0), mpq_class(2, 3), mpq_class(1, 3)}};
  auto a = boundary_spectrum(RationalStepMeasure(std::move(base)));
  auto b = boundary_spectrum(RationalStepMeasure(std::move(refined)));
  REQUIRE(a.drifts.size() == b.drifts.size());
  for (std::size_t i = 0; i < a.drifts.size(); ++i) {
    CHECK(a.drifts[i].place == b.drifts[i].place);
    CHECK(a.drifts[i].drift.coeff == b.drifts[i].drift.coeff);
    CHECK(a.drifts[i].drift.log_base == b.drifts[i].drift.log_base);
  }
  CHECK(a.boundary_places == b.boundary_places);
}

TEST_CASE("config parsing") {
  const char* text =
      "# worked example, p=2\n"
      "p=2\n"
      "atom b=0 m=1 w=1/3\n"
      "atom b=1 m=1 w=1/3\n"
      "atom b=0 m=-1 w=1/6\n"
      "atom b=1 m=-1 w=1/6\n";
  auto cfg = parse_measure_config(text);
  REQUIRE(cfg.bs_measure.has_value());
  const auto& mu = *cfg.bs_measure;
  CHECK(mu.prime() == 2);
  REQUIRE(mu.atoms().size() == 4);
  const auto& ref = mu_star(2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(mu.atoms()[i].step == ref.atoms()[i].step);
    CHECK(mu.atoms()[i].weight == ref.atoms()[i].weight);
  }
  CHECK(cfg.normalized ==
        "p=2\natom b=0 m=1 w=1/3\natom b=1 m=1 w=1/3\natom b=0 m=-1 w=1/6\natom b=1 m=-1 "
        "w=1/6\n");
  // Parsing the normalized form is a fixed point.
  CHECK(parse_measure_config(cfg.normalized).normalized == cfg.normalized);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_measure_config(""), ConfigError);
  CHECK_THROWS_AS(parse_measure_config("atom b=0 m=1 w=1\n"), ConfigError);  // no p=
  CHECK_THROWS_AS(parse_measure_config("p=2\natom b=0 m=1 w=0.5\natom b=1 m=-1 w=0.5\n"),
                  ConfigError);  // float weights rejected
  CHECK_THROWS_AS(parse_measure_config("p=2\natom b=0 m=1 w=1/2\n"), ConfigError);  // sum != 1
  CHECK_THROWS_AS(parse_measure_config("p=2\nstep b=0 m=1 w=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_measure_config("p=2\natom b=1/3 m=1 w=1\n"), ConfigError);  // b not Z[1/2]
  CHECK_THROWS_AS(parse_measure_config("p=2\natom b=0 m=1 w=1\nratom b=0 a=2 w=1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_measure_config("p=4\natom b=0 m=1 w=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_measure_config("p=2\np=3\natom b=0 m=1 w=1\n"), ConfigError);

  auto rat = parse_measure_config("ratom b=0 a=3/2 w=2/3\nratom b=1 a=2/3 w=1/3\n");
  CHECK(!rat.bs_measure.has_value());
  REQUIRE(rat.rational_measure.has_value());
  CHECK(boundary_spectrum(*rat.rational_measure).boundary_places == std::vector<long>{3});
}
