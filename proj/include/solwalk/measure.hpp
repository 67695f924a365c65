#ifndef SOLWALK_MEASURE_HPP_
#define SOLWALK_MEASURE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solwalk/affine.hpp"

namespace solwalk {

// Exact drift functional coeff * log(log_base). Sign decisions never touch
// the float rendering.
struct DriftValue {
  mpq_class coeff;
  mpq_class log_base;  // > 0

  double value() const;
  // -1, 0, +1, decided exactly.
  int sign() const;
  std::string to_string() const;
};

struct WeightedStep {
  AffineExact step;
  mpq_class weight;
};

struct MeasureReport {
  bool weights_positive = false;
  bool weights_sum_to_one = false;
  bool has_expanding_step = false;    // some m > 0
  bool has_contracting_step = false;  // some m < 0
  int drift_p_sign = 0;
  std::string regime;
};

// Finitely supported step distribution on BS(1,p).
class StepMeasure {
 public:
  StepMeasure(long prime, std::vector<WeightedStep> atoms);

  long prime() const { return prime_; }
  const std::vector<WeightedStep>& atoms() const { return atoms_; }

  // Inverse CDF over 64-bit uniforms; atom probabilities match the exact
  // weights to within 2^-64.
  std::size_t sample_index(std::uint64_t r) const;
  const AffineExact& sample(std::uint64_t r) const;

  // phi_p = -(sum w_i m_i) log p.
  DriftValue drift_p() const;
  // phi_inf = (sum w_i m_i) log p = -phi_p on BS(1,p).
  DriftValue drift_inf() const;

  MeasureReport validate() const;

  // max |b_i| as an exact rational; 0 for an empty translation set.
  mpq_class max_abs_translation() const;

 private:
  long prime_;
  std::vector<WeightedStep> atoms_;
  std::vector<mpz_class> thresholds_;
};

// The worked-example measure: (0,p) and (1,p) with weight 1/3 each,
// (0,1/p) and (1,1/p) with weight 1/6 each.
StepMeasure mu_star(long prime);

struct RationalAtom {
  mpq_class b;
  mpq_class a;  // > 0
  mpq_class weight;
};

// Step distribution on rational affinities x -> a x + b, used only by the
// boundary spectrum predictor.
class RationalStepMeasure {
 public:
  explicit RationalStepMeasure(std::vector<RationalAtom> atoms);
  const std::vector<RationalAtom>& atoms() const { return atoms_; }

 private:
  std::vector<RationalAtom> atoms_;
};

inline constexpr long kArchimedeanPlace = 0;

struct PlaceDrift {
  long place = kArchimedeanPlace;  // prime q, or kArchimedeanPlace for R
  DriftValue drift;
  bool negative = false;
  std::string place_name() const;
};

struct SpectrumResult {
  std::vector<PlaceDrift> drifts;      // every finite place seen, then R
  std::vector<long> boundary_places;   // the places with negative drift
};

// Factorizes all dilation parts, computes the drift at every finite place
// that occurs plus the archimedean one, and predicts the boundary as the
// product of the negative-drift places.
SpectrumResult boundary_spectrum(const RationalStepMeasure& mu);

RationalStepMeasure to_rational(const StepMeasure& mu);

// Plain-text measure config:
//   p=2
//   atom b=<rational> m=<int> w=<rational>    (BS(1,p) steps; b in Z[1/p])
//   ratom b=<rational> a=<rational> w=<rational>  (rational affinities,
//                                                  spectrum-only measures)
// '#' starts a comment. atom and ratom lines cannot be mixed.
struct ParsedConfig {
  std::optional<StepMeasure> bs_measure;
  std::optional<RationalStepMeasure> rational_measure;
  // Canonical one-line-per-atom rendering, used for manifest hashing.
  std::string normalized;
};

ParsedConfig parse_measure_config(std::string_view text);
ParsedConfig load_measure_config(const std::string& path);

mpq_class parse_rational(std::string_view text);

}  // namespace solwalk

#endif  // SOLWALK_MEASURE_HPP_
