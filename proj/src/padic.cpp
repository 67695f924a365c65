#include "solwalk/padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace solwalk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_mpz(std::string_view s, const char* what) {
  s = trim(s);
  if (s.empty()) throw DomainError(std::string("empty ") + what);
  try {
    return mpz_class(std::string(s), 10);
  } catch (const std::invalid_argument&) {
    throw DomainError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
}

long parse_long(std::string_view s, const char* what) {
  mpz_class z = parse_mpz(s, what);
  if (!z.fits_slong_p()) throw DomainError(std::string(what) + " out of range");
  return z.get_si();
}

// Number of factors of p in n, for n != 0.
long valuation_of_mpz(const mpz_class& n, long p) {
  mpz_class unit;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

// Little-endian base-p digits of r, exactly count of them. Requires
// 0 <= r < p^count.
std::vector<std::uint32_t> digits_of(mpz_class r, long count, long p) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    unsigned long d = mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p));
    out.push_back(static_cast<std::uint32_t>(d));
  }
  return out;
}

}  // namespace

bool is_supported_prime(long p) {
  if (p < 2) return false;
  mpz_class z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

void require_prime(long p) {
  if (!is_supported_prime(p)) {
    throw DomainError("p must be a prime >= 2, got " + std::to_string(p));
  }
}

mpz_class prime_power(long p, long e) {
  if (e < 0) throw DomainError("negative prime power exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

PadicRational::PadicRational(long prime) : prime_(prime), num_(0), exp_(0) {
  require_prime(prime);
}

PadicRational::PadicRational(long prime, long value) : prime_(prime), num_(value), exp_(0) {
  require_prime(prime);
}

PadicRational::PadicRational(long prime, mpz_class numerator, long denom_exp)
    : prime_(prime), num_(std::move(numerator)), exp_(denom_exp) {
  require_prime(prime);
  canonicalize();
}

void PadicRational::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ < 0) {
    num_ *= prime_power(prime_, -exp_);
    exp_ = 0;
    return;
  }
  if (exp_ > 0) {
    long v = valuation_of_mpz(num_, prime_);
    long cancel = std::min(v, exp_);
    if (cancel > 0) {
      mpz_class q = prime_power(prime_, cancel);
      mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), q.get_mpz_t());
      exp_ -= cancel;
    }
  }
}

long PadicRational::valuation() const {
  if (num_ == 0) return kValuationInfinity;
  if (exp_ > 0) return -exp_;  // canonical: p does not divide num_
  return valuation_of_mpz(num_, prime_);
}

mpq_class PadicRational::padic_norm() const {
  if (num_ == 0) return mpq_class(0);
  long v = valuation();
  mpq_class r;
  if (v >= 0) {
    r = mpq_class(1, 1);
    r /= prime_power(prime_, v);
  } else {
    r = mpq_class(prime_power(prime_, -v));
  }
  r.canonicalize();
  return r;
}

PadicRational PadicRational::frac_part() const {
  if (exp_ == 0) return PadicRational(prime_);
  mpz_class den = prime_power(prime_, exp_);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), num_.get_mpz_t(), den.get_mpz_t());
  return PadicRational(prime_, r, exp_);
}

mpz_class PadicRational::floor_to_mpz() const {
  if (exp_ == 0) return num_;
  mpz_class den = prime_power(prime_, exp_);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den.get_mpz_t());
  return q;
}

mpq_class PadicRational::to_mpq() const {
  mpq_class r(num_);
  if (exp_ > 0) r /= prime_power(prime_, exp_);
  r.canonicalize();
  return r;
}

double PadicRational::to_double() const { return to_mpq().get_d(); }

std::string PadicRational::to_string() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/" + prime_power(prime_, exp_).get_str();
}

PadicRational PadicRational::parse(long prime, std::string_view text) {
  require_prime(prime);
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return PadicRational(prime, parse_mpz(text, "numerator"), 0);
  }
  mpz_class num = parse_mpz(text.substr(0, slash), "numerator");
  std::string_view den = trim(text.substr(slash + 1));
  long e = 0;
  auto caret = den.find('^');
  if (caret != std::string_view::npos) {
    long base = parse_long(den.substr(0, caret), "denominator base");
    e = parse_long(den.substr(caret + 1), "denominator exponent");
    if (base != prime || e < 0) {
      throw DomainError("denominator must be a positive power of " + std::to_string(prime) +
                        ", got '" + std::string(den) + "'");
    }
  } else {
    mpz_class d = parse_mpz(den, "denominator");
    if (d <= 0) throw DomainError("denominator must be positive");
    while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(prime))) {
      mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(prime));
      ++e;
    }
    if (d != 1) {
      throw DomainError("denominator must be a power of " + std::to_string(prime) + ", got '" +
                        std::string(den) + "'");
    }
  }
  return PadicRational(prime, std::move(num), e);
}

PadicRational PadicRational::from_mpq(long prime, const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  std::string text = c.get_num().get_str();
  if (c.get_den() != 1) text += "/" + c.get_den().get_str();
  return parse(prime, text);
}

PadicRational operator+(const PadicRational& a, const PadicRational& b) {
  if (a.prime() != b.prime()) throw DomainError("prime mismatch in addition");
  long e = std::max(a.denom_exp(), b.denom_exp());
  mpz_class n = a.numerator() * prime_power(a.prime(), e - a.denom_exp()) +
                b.numerator() * prime_power(a.prime(), e - b.denom_exp());
  return PadicRational(a.prime(), std::move(n), e);
}

PadicRational operator-(const PadicRational& a) {
  return PadicRational(a.prime(), -a.numerator(), a.denom_exp());
}

PadicRational operator-(const PadicRational& a, const PadicRational& b) { return a + (-b); }

PadicRational operator*(const PadicRational& a, const PadicRational& b) {
  if (a.prime() != b.prime()) throw DomainError("prime mismatch in multiplication");
  return PadicRational(a.prime(), a.numerator() * b.numerator(),
                       a.denom_exp() + b.denom_exp());
}

bool operator==(const PadicRational& a, const PadicRational& b) {
  return a.prime() == b.prime() && a.denom_exp() == b.denom_exp() &&
         a.numerator() == b.numerator();
}

bool operator!=(const PadicRational& a, const PadicRational& b) { return !(a == b); }

PadicRational mul_by_power(const PadicRational& x, long m) {
  return PadicRational(x.prime(), x.numerator(), x.denom_exp() - m);
}

TruncatedPadic::TruncatedPadic(long prime, long low, std::vector<std::uint32_t> digits)
    : prime_(prime), low_(low), end_(low + static_cast<long>(digits.size())),
      digits_(std::move(digits)) {
  require_prime(prime);
  for (std::uint32_t d : digits_) {
    if (d >= static_cast<std::uint64_t>(prime_)) {
      throw DomainError("digit " + std::to_string(d) + " out of range for p=" +
                        std::to_string(prime_));
    }
  }
  std::size_t lead = 0;
  while (lead < digits_.size() && digits_[lead] == 0) ++lead;
  if (lead > 0) {
    digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<long>(lead);
  }
  if (digits_.empty()) low_ = end_;
}

TruncatedPadic TruncatedPadic::zero_class(long prime, long end) {
  return TruncatedPadic(prime, end, {});
}

std::uint32_t TruncatedPadic::digit_at(long i) const {
  if (i >= end_) {
    throw PrecisionError("digit index " + std::to_string(i) + " beyond certified window (end=" +
                         std::to_string(end_) + ")");
  }
  if (i < low_) return 0;
  return digits_[static_cast<std::size_t>(i - low_)];
}

long TruncatedPadic::valuation() const {
  if (is_zero_class()) {
    throw PrecisionError("valuation of a zero class is only bounded below by " +
                         std::to_string(end_));
  }
  return low_;
}

bool TruncatedPadic::valuation_at_least(long v) const {
  if (!is_zero_class()) return low_ >= v;
  if (end_ >= v) return true;
  throw PrecisionError("cannot decide vp >= " + std::to_string(v) +
                       " for a zero class certified only mod p^" + std::to_string(end_));
}

PadicRational TruncatedPadic::frac_part() const {
  if (end_ < 0) {
    throw PrecisionError("fractional digits not fully certified (end=" + std::to_string(end_) +
                         " < 0)");
  }
  if (low_ >= 0) return PadicRational(prime_);
  long count = std::min(end_, 0L) - low_;
  mpz_class acc(0);
  for (long i = count - 1; i >= 0; --i) {
    acc *= prime_;
    acc += digits_[static_cast<std::size_t>(i)];
  }
  return PadicRational(prime_, acc, -low_);
}

mpq_class TruncatedPadic::representative() const {
  mpz_class acc(0);
  for (std::size_t i = digits_.size(); i-- > 0;) {
    acc *= prime_;
    acc += digits_[i];
  }
  mpq_class r(acc);
  if (low_ > 0) {
    r *= prime_power(prime_, low_);
  } else if (low_ < 0) {
    r /= prime_power(prime_, -low_);
  }
  r.canonicalize();
  return r;
}

long TruncatedPadic::display_low() const {
  return is_zero_class() ? std::min(0L, end_) : low_;
}

std::string TruncatedPadic::to_string() const {
  std::ostringstream os;
  os << "p=" << prime_ << " v=" << display_low() << " digits=";
  long from = display_low();
  for (long i = from; i < end_; ++i) {
    if (i > from) os << ',';
    os << digit_at(i);
  }
  return os.str();
}

TruncatedPadic TruncatedPadic::parse(std::string_view text) {
  auto take = [&text](std::string_view key) -> std::string_view {
    auto pos = text.find(key);
    if (pos == std::string_view::npos) {
      throw DomainError("malformed digit string: missing '" + std::string(key) + "'");
    }
    auto start = pos + key.size();
    auto stop = text.find(' ', start);
    if (stop == std::string_view::npos) stop = text.size();
    return text.substr(start, stop - start);
  };
  long p = parse_long(take("p="), "prime");
  long v = parse_long(take("v="), "valuation");
  std::string_view list = take("digits=");
  std::vector<std::uint32_t> digits;
  if (!trim(list).empty()) {
    std::string item;
    std::istringstream is{std::string(list)};
    while (std::getline(is, item, ',')) {
      long d = parse_long(item, "digit");
      if (d < 0) throw DomainError("negative digit");
      digits.push_back(static_cast<std::uint32_t>(d));
    }
  }
  return TruncatedPadic(p, v, std::move(digits));
}

bool operator==(const TruncatedPadic& a, const TruncatedPadic& b) {
  return a.prime() == b.prime() && a.low() == b.low() && a.end() == b.end() &&
         [&] {
           for (long i = a.low(); i < a.end(); ++i) {
             if (a.digit_at(i) != b.digit_at(i)) return false;
           }
           return true;
         }();
}

bool operator!=(const TruncatedPadic& a, const TruncatedPadic& b) { return !(a == b); }

bool congruent(const TruncatedPadic& a, const TruncatedPadic& b) {
  if (a.prime() != b.prime()) throw DomainError("prime mismatch in congruence test");
  long end = std::min(a.end(), b.end());
  long from = std::min(std::min(a.low(), b.low()), end);
  for (long i = from; i < end; ++i) {
    if (a.digit_at(i) != b.digit_at(i)) return false;
  }
  return true;
}

TruncatedPadic truncate(const PadicRational& x, long end) {
  if (x.is_zero()) return TruncatedPadic::zero_class(x.prime(), end);
  long v = x.valuation();
  if (end <= v) {
    throw PrecisionError("precision window empty: end=" + std::to_string(end) +
                         " <= vp(x)=" + std::to_string(v));
  }
  // Unit part u = x / p^v is an integer coprime to p; its digits at indices
  // 0..end-v-1 are the digits of x at v..end-1.
  mpz_class u = x.numerator();
  if (v > 0) {
    mpz_class q = prime_power(x.prime(), v);
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t());
  }
  long count = end - v;
  mpz_class mod = prime_power(x.prime(), count);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return TruncatedPadic(x.prime(), v, digits_of(std::move(r), count, x.prime()));
}

namespace {

// Representative of x scaled by p^(-base) as an integer; requires base <= low.
mpz_class scaled_representative(const TruncatedPadic& x, long base) {
  mpz_class acc(0);
  for (long i = x.end() - 1; i >= x.low(); --i) {
    acc *= x.prime();
    acc += x.digit_at(i);
  }
  if (x.low() > base) acc *= prime_power(x.prime(), x.low() - base);
  return acc;
}

TruncatedPadic from_scaled(long p, long base, long end, mpz_class s) {
  long count = end - base;
  if (count <= 0) return TruncatedPadic::zero_class(p, end);
  mpz_class mod = prime_power(p, count);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
  if (r == 0) return TruncatedPadic::zero_class(p, end);
  return TruncatedPadic(p, base, digits_of(std::move(r), count, p));
}

}  // namespace

TruncatedPadic add(const TruncatedPadic& a, const TruncatedPadic& b) {
  if (a.prime() != b.prime()) throw DomainError("prime mismatch in addition");
  long end = std::min(a.end(), b.end());
  long base = std::min({a.low(), b.low(), end});
  mpz_class s = scaled_representative(a, base) + scaled_representative(b, base);
  return from_scaled(a.prime(), base, end, std::move(s));
}

TruncatedPadic shift(const TruncatedPadic& x, long m) {
  if (x.is_zero_class()) return TruncatedPadic::zero_class(x.prime(), x.end() + m);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(x.end() - x.low()));
  for (long i = x.low(); i < x.end(); ++i) {
    digits[static_cast<std::size_t>(i - x.low())] = x.digit_at(i);
  }
  return TruncatedPadic(x.prime(), x.low() + m, std::move(digits));
}

TruncatedPadic add_rational(const TruncatedPadic& x, const PadicRational& k) {
  if (x.prime() != k.prime()) throw DomainError("prime mismatch in addition");
  if (k.is_zero()) return x;
  long kv = k.valuation();
  if (kv >= x.end()) return x;  // k vanishes mod p^end
  long base = std::min({x.low(), kv, x.end()});
  // k * p^(-base) is an integer because base <= vp(k).
  mpq_class scaled = k.to_mpq();
  if (base > 0) {
    scaled /= prime_power(k.prime(), base);
  } else if (base < 0) {
    scaled *= prime_power(k.prime(), -base);
  }
  scaled.canonicalize();
  mpz_class s = scaled_representative(x, base) + scaled.get_num();
  return from_scaled(x.prime(), base, x.end(), std::move(s));
}

}  // namespace solwalk
