#ifndef SOLWALK_STATS_HPP_
#define SOLWALK_STATS_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

namespace solwalk {

// Running (sum, sum of squares, count) reduction. Merging is commutative, so
// partial accumulators from index-sharded workers combine deterministically.
struct RunningStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  long count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }

  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }

  double sample_variance() const {
    if (count < 2) return 0.0;
    double n = static_cast<double>(count);
    double v = (sum_sq - sum * sum / n) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }

  double stderr_of_mean() const {
    return count > 0 ? std::sqrt(sample_variance() / static_cast<double>(count)) : 0.0;
  }
};

inline double binomial_stderr(long successes, long n) {
  if (n <= 0) return 0.0;
  double p = static_cast<double>(successes) / static_cast<double>(n);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace detail {

// Regularized lower incomplete gamma P(a, x) by series / continued fraction.
inline double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 0.0;
  if (x == 0.0) return 0.0;
  double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Lentz continued fraction for Q(a, x).
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1.0 - q;
}

}  // namespace detail

// Survival function of the chi-squared distribution with df degrees of freedom.
inline double chi_squared_sf(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return 1.0 - detail::gamma_p(df / 2.0, statistic / 2.0);
}

// Pearson chi-squared homogeneity test between two count vectors over the same
// categories. Categories empty in both samples are dropped. Returns the
// p-value (1.0 when fewer than two non-empty categories remain).
inline double chi_squared_two_sample_pvalue(const std::vector<long>& counts_a,
                                            const std::vector<long>& counts_b) {
  double total_a = 0.0, total_b = 0.0;
  for (long c : counts_a) total_a += static_cast<double>(c);
  for (long c : counts_b) total_b += static_cast<double>(c);
  if (total_a <= 0.0 || total_b <= 0.0) return 1.0;
  double grand = total_a + total_b;
  double stat = 0.0;
  int used = 0;
  for (std::size_t k = 0; k < counts_a.size() && k < counts_b.size(); ++k) {
    double col = static_cast<double>(counts_a[k] + counts_b[k]);
    if (col == 0.0) continue;
    ++used;
    double ea = col * total_a / grand;
    double eb = col * total_b / grand;
    double da = static_cast<double>(counts_a[k]) - ea;
    double db = static_cast<double>(counts_b[k]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  if (used < 2) return 1.0;
  return chi_squared_sf(stat, static_cast<double>(used - 1));
}

}  // namespace solwalk

#endif  // SOLWALK_STATS_HPP_
