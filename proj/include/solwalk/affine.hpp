#ifndef SOLWALK_AFFINE_HPP_
#define SOLWALK_AFFINE_HPP_

#include <string>

#include "solwalk/padic.hpp"

namespace solwalk {

// Element (b, p^m) of BS(1,p) = Z[1/p] x| Z, acting as t -> p^m t + b.
struct AffineExact {
  PadicRational translation;
  long exponent = 0;

  long prime() const { return translation.prime(); }
};

// Element of Aff(p,R) = R x| Z: real translation part, dilation still an
// exact power of p.
struct AffineReal {
  long prime = 2;
  double translation = 0.0;
  long exponent = 0;
};

AffineExact identity_exact(long p);
AffineReal identity_real(long p);
AffineExact make_exact(long p, const std::string& b, long m);

// p^m as a double, exact for |result| within the double range.
double pow_prime_double(long p, long m);

AffineExact compose(const AffineExact& g, const AffineExact& h);
AffineReal compose(const AffineReal& g, const AffineReal& h);
AffineReal compose(const AffineReal& g, const AffineExact& h);
AffineReal compose(const AffineExact& g, const AffineReal& h);

AffineExact inverse(const AffineExact& g);
AffineReal inverse(const AffineReal& g);

AffineReal to_real(const AffineExact& g);

double act_on_real(const AffineReal& g, double t);
double act_on_real(const AffineExact& g, double t);

// gamma . x = p^m x + b on truncated values: shift then exact addition.
TruncatedPadic act_on_padic(const AffineExact& g, const TruncatedPadic& x);

bool operator==(const AffineExact& a, const AffineExact& b);
bool operator!=(const AffineExact& a, const AffineExact& b);

// JSON pair [b, m], exact translations as rational strings.
std::string to_json(const AffineExact& g);
std::string to_json(const AffineReal& g);

}  // namespace solwalk

#endif  // SOLWALK_AFFINE_HPP_
