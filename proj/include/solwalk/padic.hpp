#ifndef SOLWALK_PADIC_HPP_
#define SOLWALK_PADIC_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "solwalk/errors.hpp"

namespace solwalk {

inline constexpr long kValuationInfinity = std::numeric_limits<long>::max();

bool is_supported_prime(long p);
void require_prime(long p);
mpz_class prime_power(long p, long e);  // p^e for e >= 0

// Element of Z[1/p], stored as num / p^exp with exp >= 0 and p coprime to num
// unless exp == 0. Zero is 0 / p^0.
class PadicRational {
 public:
  PadicRational() : PadicRational(2) {}
  explicit PadicRational(long prime);
  PadicRational(long prime, long value);
  PadicRational(long prime, mpz_class numerator, long denom_exp);

  long prime() const { return prime_; }
  const mpz_class& numerator() const { return num_; }
  long denom_exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  // kValuationInfinity for zero.
  long valuation() const;
  // p^(-valuation); 0 for zero.
  mpq_class padic_norm() const;
  // The representative alpha in [0,1) with x - alpha an integer.
  PadicRational frac_part() const;
  mpz_class floor_to_mpz() const;
  mpq_class to_mpq() const;
  double to_double() const;

  // "n" for integers, "n/d" with d = p^exp otherwise.
  std::string to_string() const;
  // Accepts "n", "n/d" with d a positive power of p, and "n/p^e".
  static PadicRational parse(long prime, std::string_view text);
  static PadicRational from_mpq(long prime, const mpq_class& q);

 private:
  void canonicalize();

  long prime_;
  mpz_class num_;
  long exp_;
};

PadicRational operator+(const PadicRational& a, const PadicRational& b);
PadicRational operator-(const PadicRational& a, const PadicRational& b);
PadicRational operator*(const PadicRational& a, const PadicRational& b);
PadicRational operator-(const PadicRational& a);
bool operator==(const PadicRational& a, const PadicRational& b);
bool operator!=(const PadicRational& a, const PadicRational& b);

// x * p^m, m of either sign.
PadicRational mul_by_power(const PadicRational& x, long m);

// A congruence class c + p^end Z_p, i.e. an element of Q_p known exactly on
// the digit window (-inf, end). Stored digits cover [low, end) with the first
// one nonzero; digits below low are certified zero. The class of zero keeps
// low == end and no digits.
class TruncatedPadic {
 public:
  TruncatedPadic(long prime, long low, std::vector<std::uint32_t> digits);
  static TruncatedPadic zero_class(long prime, long end);

  long prime() const { return prime_; }
  bool is_zero_class() const { return digits_.empty(); }
  long low() const { return low_; }
  long end() const { return end_; }
  long certified_digit_count() const { return end_ - display_low(); }

  // Certified zero below low; PrecisionError at or beyond end.
  std::uint32_t digit_at(long i) const;
  // Exact valuation for a nonzero class; PrecisionError for the zero class
  // (only a lower bound, end, is known there).
  long valuation() const;
  // Decides vp >= v when the window allows it, else PrecisionError.
  bool valuation_at_least(long v) const;
  // Certified membership in Z_p.
  bool in_unit_ball() const { return valuation_at_least(0); }

  // Sum of the digits at negative indices, an element of [0,1) in Z[1/p].
  // Requires end >= 0 so those digits are all certified.
  PadicRational frac_part() const;
  // The canonical representative sum d_i p^i as an exact rational.
  mpq_class representative() const;

  // Start index used for printing: low, or min(0, end) for the zero class.
  long display_low() const;
  std::string to_string() const;
  static TruncatedPadic parse(std::string_view text);

 private:
  long prime_;
  long low_;
  long end_;
  std::vector<std::uint32_t> digits_;
};

// Structural equality (same prime, window, digits).
bool operator==(const TruncatedPadic& a, const TruncatedPadic& b);
bool operator!=(const TruncatedPadic& a, const TruncatedPadic& b);
// Agreement as congruence classes mod p^min(a.end, b.end).
bool congruent(const TruncatedPadic& a, const TruncatedPadic& b);

// Digit expansion of x on (-inf, end). Requires end > vp(x) for nonzero x;
// negative x lands in the complement representation mod p^end.
TruncatedPadic truncate(const PadicRational& x, long end);

TruncatedPadic add(const TruncatedPadic& a, const TruncatedPadic& b);
// x * p^m: shifts the window by m.
TruncatedPadic shift(const TruncatedPadic& x, long m);
// x + k for exact k; the certified window end is preserved.
TruncatedPadic add_rational(const TruncatedPadic& x, const PadicRational& k);

}  // namespace solwalk

#endif  // SOLWALK_PADIC_HPP_
