#include "solwalk/affine.hpp"

#include <cmath>

#include "solwalk/format.hpp"

namespace solwalk {

AffineExact identity_exact(long p) { return AffineExact{PadicRational(p), 0}; }

AffineReal identity_real(long p) {
  require_prime(p);
  return AffineReal{p, 0.0, 0};
}

AffineExact make_exact(long p, const std::string& b, long m) {
  return AffineExact{PadicRational::parse(p, b), m};
}

double pow_prime_double(long p, long m) {
  double base = static_cast<double>(p);
  long e = m >= 0 ? m : -m;
  double r = 1.0;
  double acc = base;
  while (e > 0) {
    if (e & 1) r *= acc;
    acc *= acc;
    e >>= 1;
  }
  return m >= 0 ? r : 1.0 / r;
}

AffineExact compose(const AffineExact& g, const AffineExact& h) {
  if (g.prime() != h.prime()) throw DomainError("prime mismatch in composition");
  return AffineExact{g.translation + mul_by_power(h.translation, g.exponent),
                     g.exponent + h.exponent};
}

AffineReal compose(const AffineReal& g, const AffineReal& h) {
  if (g.prime != h.prime) throw DomainError("prime mismatch in composition");
  return AffineReal{g.prime,
                    g.translation + pow_prime_double(g.prime, g.exponent) * h.translation,
                    g.exponent + h.exponent};
}

AffineReal compose(const AffineReal& g, const AffineExact& h) {
  return compose(g, to_real(h));
}

AffineReal compose(const AffineExact& g, const AffineReal& h) {
  return compose(to_real(g), h);
}

AffineExact inverse(const AffineExact& g) {
  return AffineExact{mul_by_power(-g.translation, -g.exponent), -g.exponent};
}

AffineReal inverse(const AffineReal& g) {
  return AffineReal{g.prime, -pow_prime_double(g.prime, -g.exponent) * g.translation,
                    -g.exponent};
}

AffineReal to_real(const AffineExact& g) {
  return AffineReal{g.prime(), g.translation.to_double(), g.exponent};
}

double act_on_real(const AffineReal& g, double t) {
  return pow_prime_double(g.prime, g.exponent) * t + g.translation;
}

double act_on_real(const AffineExact& g, double t) { return act_on_real(to_real(g), t); }

TruncatedPadic act_on_padic(const AffineExact& g, const TruncatedPadic& x) {
  if (g.prime() != x.prime()) throw DomainError("prime mismatch in action");
  return add_rational(shift(x, g.exponent), g.translation);
}

bool operator==(const AffineExact& a, const AffineExact& b) {
  return a.exponent == b.exponent && a.translation == b.translation;
}

bool operator!=(const AffineExact& a, const AffineExact& b) { return !(a == b); }

std::string to_json(const AffineExact& g) {
  return "[\"" + g.translation.to_string() + "\", " + std::to_string(g.exponent) + "]";
}

std::string to_json(const AffineReal& g) {
  return "[" + format_double(g.translation) + ", " + std::to_string(g.exponent) + "]";
}

}  // namespace solwalk
