#include "solwalk/padic.hpp"

#include <doctest.h>

#include <vector>

#include "solwalk/rng.hpp"

using namespace solwalk;

namespace {

PadicRational q(long p, const char* text) { return PadicRational::parse(p, text); }

// Uniform-ish element of Z[1/p] with small numerator and denominator exponent.
PadicRational random_element(Rng& rng, long p) {
  long num = static_cast<long>(rng.next_u64() % 4001) - 2000;
  long exp = static_cast<long>(rng.next_u64() % 7);
  return PadicRational(p, mpz_class(num), exp);
}

// Greedy digit extraction oracle: repeatedly peel the lowest digit of the
// exact rational x, starting at its valuation.
std::vector<std::uint32_t> greedy_digits(PadicRational x, long from, long end) {
  std::vector<std::uint32_t> out;
  long p = x.prime();
  for (long i = from; i < end; ++i) {
    PadicRational scaled = mul_by_power(x, -i);
    // Lowest digit of scaled: its fractional part after dividing by p, scaled back.
    PadicRational digit_part = mul_by_power(mul_by_power(scaled, -1).frac_part(), 1);
    mpq_class d = digit_part.to_mpq();
    REQUIRE(d.get_den() == 1);
    unsigned long dv = d.get_num().get_ui();
    out.push_back(static_cast<std::uint32_t>(dv));
    x = x - mul_by_power(PadicRational(p, static_cast<long>(dv)), i);
  }
  return out;
}

}  // namespace

TEST_CASE("valuation and norm") {
  CHECK(q(2, "12").valuation() == 2);
  CHECK(q(2, "3/4").valuation() == -2);
  CHECK(q(2, "0").valuation() == kValuationInfinity);
  CHECK(q(2, "12").padic_norm() == mpq_class(1, 4));
  CHECK(q(2, "3/4").padic_norm() == mpq_class(4));
  CHECK(q(5, "1").padic_norm() == mpq_class(1));
  CHECK(q(3, "0").padic_norm() == 0);
}

TEST_CASE("fractional part representative") {
  CHECK(q(2, "3/4").frac_part() == q(2, "3/4"));
  auto a = q(2, "7/4").frac_part();
  CHECK(a == q(2, "3/4"));
  CHECK((q(2, "7/4") - a).valuation() >= 0);
  CHECK(a.to_mpq() >= 0);
  CHECK(a.to_mpq() < 1);
  CHECK(q(2, "5").frac_part() == q(2, "0"));
  CHECK(q(3, "-1/3").frac_part() == q(3, "2/3"));
}

TEST_CASE("exact ring operations") {
  CHECK(q(2, "1/2") + q(2, "1/2") == q(2, "1"));
  CHECK(mul_by_power(q(2, "3"), -2) == q(2, "3/4"));
  auto prod = q(2, "3/4") * q(2, "2");
  CHECK(prod.to_mpq() == mpq_class(3, 2));
  CHECK(prod == q(2, "3/2"));
  CHECK(-q(2, "3/4") + q(2, "3/4") == q(2, "0"));
  CHECK_THROWS_AS(q(2, "1") + q(3, "1"), DomainError);
}

TEST_CASE("parsing and serialization") {
  CHECK(q(2, " -5 ").to_string() == "-5");
  CHECK(q(2, "3/4").to_string() == "3/4");
  CHECK(q(2, "3/2^2") == q(2, "3/4"));
  CHECK(q(2, "6/4") == q(2, "3/2"));
  CHECK(q(3, "4/9").to_string() == "4/9");
  CHECK_THROWS_AS(q(2, "1/3"), DomainError);
  CHECK_THROWS_AS(q(2, "1/0"), DomainError);
  CHECK_THROWS_AS(q(2, "x"), DomainError);
  CHECK_THROWS_AS(PadicRational::parse(4, "1"), DomainError);
  CHECK(PadicRational::from_mpq(2, mpq_class(6, 4)) == q(2, "3/2"));
}

TEST_CASE("truncate known expansions") {
  auto t = truncate(q(2, "3/4"), 3);
  CHECK(t.low() == -2);
  CHECK(t.end() == 3);
  std::vector<std::uint32_t> want{1, 1, 0, 0, 0};
  for (long i = -2; i < 3; ++i) CHECK(t.digit_at(i) == want[static_cast<std::size_t>(i + 2)]);
  CHECK(t.to_string() == "p=2 v=-2 digits=1,1,0,0,0");
  // Oracle: greedy extraction agrees and the representative matches mod 2^3.
  CHECK(greedy_digits(q(2, "3/4"), -2, 3) == want);
  mpq_class diff = t.representative() - mpq_class(3, 4);
  CHECK(diff == 0);

  auto z = truncate(q(2, "0"), 4);
  CHECK(z.is_zero_class());
  CHECK(z.end() == 4);
  CHECK(z.to_string() == "p=2 v=0 digits=0,0,0,0");

  auto neg = truncate(q(2, "-1"), 3);
  CHECK(neg.low() == 0);
  for (long i = 0; i < 3; ++i) CHECK(neg.digit_at(i) == 1);
  CHECK(neg.representative() == 7);  // -1 = 2^3 - 1 mod 2^3

  CHECK_THROWS_AS(truncate(q(2, "4"), 2), PrecisionError);
  CHECK_THROWS_AS(truncate(q(2, "4"), 1), PrecisionError);
  CHECK_NOTHROW(truncate(q(2, "4"), 3));
}

TEST_CASE("digit string round trip") {
  auto t = truncate(q(2, "3/4"), 3);
  CHECK(TruncatedPadic::parse(t.to_string()) == t);
  auto z = TruncatedPadic::parse("p=2 v=0 digits=0,0,0,0");
  CHECK(z.is_zero_class());
  CHECK(z.end() == 4);
  auto shifted = TruncatedPadic::parse("p=3 v=2 digits=2,0,1");
  CHECK(shifted.low() == 2);
  CHECK(shifted.end() == 5);
  CHECK_THROWS_AS(TruncatedPadic::parse("p=2 digits=1"), DomainError);
  CHECK_THROWS_AS(TruncatedPadic::parse("p=2 v=0 digits=5"), DomainError);
}

TEST_CASE("truncated shift and rational addition") {
  auto x = truncate(q(2, "1"), 4);
  CHECK(shift(x, 0) == x);
  auto four = shift(x, 2);
  CHECK(four.representative() == 4);
  CHECK(four.end() == 6);

  auto half = truncate(q(2, "1/2"), 4);
  auto one = add_rational(half, q(2, "1/2"));
  CHECK(one.end() == 4);
  CHECK(congruent(one, truncate(q(2, "3/2") + q(2, "-1/2"), 4)));
  CHECK(one.representative() == 1);

  // Adding something that vanishes mod 2^end leaves the value untouched.
  CHECK(add_rational(x, q(2, "16")) == x);
  CHECK(add_rational(x, q(2, "0")) == x);

  // Cancellation down to the zero class keeps the certified window.
  auto cancel = add_rational(x, q(2, "-1"));
  CHECK(cancel.is_zero_class());
  CHECK(cancel.end() == 4);
}

TEST_CASE("truncated addition tracks the common window") {
  auto a = truncate(q(2, "3/4"), 6);
  auto b = truncate(q(2, "5/2"), 4);
  auto s = add(a, b);
  CHECK(s.end() == 4);
  CHECK(congruent(s, truncate(q(2, "3/4") + q(2, "5/2"), 4)));

  auto zz = add(truncate(q(2, "0"), 5), truncate(q(2, "0"), 3));
  CHECK(zz.is_zero_class());
  CHECK(zz.end() == 3);
}

TEST_CASE("zero class valuation queries") {
  auto z = TruncatedPadic::zero_class(2, 4);
  CHECK_THROWS_AS(z.valuation(), PrecisionError);
  CHECK(z.valuation_at_least(4));
  CHECK(z.valuation_at_least(-1));
  CHECK_THROWS_AS(z.valuation_at_least(5), PrecisionError);
  auto t = truncate(q(2, "3/4"), 3);
  CHECK(t.valuation() == -2);
  CHECK(t.valuation_at_least(-2));
  CHECK(!t.valuation_at_least(0));
  CHECK(!t.in_unit_ball());
  CHECK(truncate(q(2, "6"), 4).in_unit_ball());
}

TEST_CASE("randomized arithmetic laws") {
  for (long p : {2L, 3L}) {
    Rng rng(derive_seed(0x5eedULL, static_cast<std::uint64_t>(p)));
    for (int iter = 0; iter < 2000; ++iter) {
      auto x = random_element(rng, p);
      auto y = random_element(rng, p);

      // Ultrametric inequality, with equality when the norms differ.
      mpq_class nx = x.padic_norm(), ny = y.padic_norm(), ns = (x + y).padic_norm();
      mpq_class mx = std::max(nx, ny);
      CHECK(ns <= mx);
      if (nx != ny) CHECK(ns == mx);

      // Multiplicativity is exact.
      CHECK((x * y).padic_norm() == nx * ny);

      // alpha contract.
      auto a = x.frac_part();
      CHECK(a.to_mpq() >= 0);
      CHECK(a.to_mpq() < 1);
      CHECK((x - a).denom_exp() == 0);

      // Truncated arithmetic commutes with exact arithmetic mod p^N.
      long N = 5;
      if (!x.is_zero() && x.valuation() >= N) continue;
      if (!y.is_zero() && y.valuation() >= N) continue;
      auto ts = add(truncate(x, N), truncate(y, N));
      auto sum = x + y;
      auto want = (!sum.is_zero() && sum.valuation() < N) ? truncate(sum, N)
                                                          : TruncatedPadic::zero_class(p, N);
      CHECK(congruent(ts, want));
    }
  }
}
