#include "solwalk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "solwalk/format.hpp"

namespace solwalk {

double DriftValue::value() const {
  return coeff.get_d() * std::log(log_base.get_d());
}

int DriftValue::sign() const {
  int c = sgn(coeff);
  int b = cmp(log_base, 1);
  if (c == 0 || b == 0) return 0;
  return (b > 0) ? c : -c;
}

std::string DriftValue::to_string() const {
  if (sgn(coeff) == 0 || cmp(log_base, 1) == 0) return "0";
  std::string base = "log(" + log_base.get_str() + ")";
  if (coeff == 1) return base;
  if (coeff == -1) return "-" + base;
  return coeff.get_str() + "*" + base;
}

namespace {

void check_weights(const std::vector<mpq_class>& weights) {
  if (weights.empty()) throw DomainError("measure needs at least one atom");
  mpq_class sum(0);
  for (const auto& w : weights) {
    if (sgn(w) <= 0) throw DomainError("atom weight must be positive, got " + w.get_str());
    sum += w;
  }
  if (sum != 1) throw DomainError("atom weights must sum to 1 exactly, got " + sum.get_str());
}

std::vector<mpz_class> build_thresholds(const std::vector<mpq_class>& weights) {
  mpz_class one_shl_64 = mpz_class(1) << 64;
  std::vector<mpz_class> out;
  out.reserve(weights.size());
  mpq_class cum(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (i + 1 == weights.size()) {
      out.push_back(one_shl_64);
    } else {
      mpq_class scaled = cum * mpq_class(one_shl_64);
      mpz_class t;
      mpz_fdiv_q(t.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
      out.push_back(t);
    }
  }
  return out;
}

std::size_t threshold_pick(const std::vector<mpz_class>& thresholds, std::uint64_t r) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (mpz_cmp_ui(thresholds[i].get_mpz_t(), static_cast<unsigned long>(r)) > 0) return i;
  }
  return thresholds.size() - 1;
}

}  // namespace

StepMeasure::StepMeasure(long prime, std::vector<WeightedStep> atoms)
    : prime_(prime), atoms_(std::move(atoms)) {
  require_prime(prime);
  std::vector<mpq_class> weights;
  weights.reserve(atoms_.size());
  for (auto& a : atoms_) {
    if (a.step.prime() != prime_) throw DomainError("atom prime differs from measure prime");
    a.weight.canonicalize();
    weights.push_back(a.weight);
  }
  check_weights(weights);
  thresholds_ = build_thresholds(weights);
}

std::size_t StepMeasure::sample_index(std::uint64_t r) const {
  return threshold_pick(thresholds_, r);
}

const AffineExact& StepMeasure::sample(std::uint64_t r) const {
  return atoms_[sample_index(r)].step;
}

DriftValue StepMeasure::drift_p() const {
  mpq_class s(0);
  for (const auto& a : atoms_) s += a.weight * a.step.exponent;
  return DriftValue{-s, mpq_class(prime_)};
}

DriftValue StepMeasure::drift_inf() const {
  mpq_class s(0);
  for (const auto& a : atoms_) s += a.weight * a.step.exponent;
  return DriftValue{s, mpq_class(prime_)};
}

MeasureReport StepMeasure::validate() const {
  MeasureReport r;
  r.weights_positive = true;
  mpq_class sum(0);
  for (const auto& a : atoms_) {
    if (sgn(a.weight) <= 0) r.weights_positive = false;
    sum += a.weight;
    if (a.step.exponent > 0) r.has_expanding_step = true;
    if (a.step.exponent < 0) r.has_contracting_step = true;
  }
  r.weights_sum_to_one = (sum == 1);
  r.drift_p_sign = drift_p().sign();
  if (r.drift_p_sign < 0) {
    r.regime = "boundary on Q_p (phi_p < 0)";
  } else if (r.drift_p_sign > 0) {
    r.regime = "boundary on R (phi_inf < 0)";
  } else {
    r.regime = "zero drift (no contracting boundary)";
  }
  return r;
}

mpq_class StepMeasure::max_abs_translation() const {
  mpq_class best(0);
  for (const auto& a : atoms_) {
    mpq_class v = abs(a.step.translation.to_mpq());
    if (v > best) best = v;
  }
  return best;
}

StepMeasure mu_star(long prime) {
  std::vector<WeightedStep> atoms;
  atoms.push_back({AffineExact{PadicRational(prime, 0), 1}, mpq_class(1, 3)});
  atoms.push_back({AffineExact{PadicRational(prime, 1), 1}, mpq_class(1, 3)});
  atoms.push_back({AffineExact{PadicRational(prime, 0), -1}, mpq_class(1, 6)});
  atoms.push_back({AffineExact{PadicRational(prime, 1), -1}, mpq_class(1, 6)});
  return StepMeasure(prime, std::move(atoms));
}

RationalStepMeasure::RationalStepMeasure(std::vector<RationalAtom> atoms)
    : atoms_(std::move(atoms)) {
  std::vector<mpq_class> weights;
  weights.reserve(atoms_.size());
  for (auto& a : atoms_) {
    a.b.canonicalize();
    a.a.canonicalize();
    a.weight.canonicalize();
    if (sgn(a.a) <= 0) throw DomainError("dilation part must be positive, got " + a.a.get_str());
    weights.push_back(a.weight);
  }
  check_weights(weights);
}

std::string PlaceDrift::place_name() const {
  return place == kArchimedeanPlace ? "inf" : std::to_string(place);
}

namespace {

// Trial-division factorization; config-scale integers only.
void factor_into(const mpz_class& value, long sign_exp, std::map<long, mpq_class>& exps,
                 const mpq_class& weight) {
  mpz_class n = abs(value);
  if (n <= 1) return;
  for (long q = 2; mpz_class(q) * q <= n; q = (q == 2 ? 3 : q + 2)) {
    long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(q))) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(q));
      ++e;
    }
    if (e > 0) exps[q] += weight * (sign_exp * e);
  }
  if (n > 1) {
    if (!n.fits_slong_p() || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw DomainError("cannot factor dilation part over word-sized primes: " + value.get_str());
    }
    exps[n.get_si()] += weight * sign_exp;
  }
}

}  // namespace

SpectrumResult boundary_spectrum(const RationalStepMeasure& mu) {
  // e_q = sum_i w_i v_q(a_i); phi_q = -e_q log q and phi_inf = sum_q e_q log q.
  std::map<long, mpq_class> exps;
  for (const auto& atom : mu.atoms()) {
    factor_into(atom.a.get_num(), +1, exps, atom.weight);
    factor_into(atom.a.get_den(), -1, exps, atom.weight);
  }

  SpectrumResult result;
  mpz_class denom_lcm(1);
  bool any_nonzero = false;
  for (auto& [q, e] : exps) {
    e.canonicalize();
    if (sgn(e) != 0) {
      any_nonzero = true;
      mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    }
    DriftValue d{-e, mpq_class(q)};
    result.drifts.push_back(PlaceDrift{q, d, d.sign() < 0});
  }

  // phi_inf in closed form (1/d) log(prod q^(d e_q)).
  DriftValue inf_drift{mpq_class(0), mpq_class(1)};
  if (any_nonzero) {
    mpq_class base(1);
    for (const auto& [q, e] : exps) {
      mpq_class scaled = e * mpq_class(denom_lcm);
      scaled.canonicalize();
      mpz_class k = scaled.get_num();
      if (!k.fits_slong_p()) throw DomainError("spectrum exponent overflow");
      long kk = k.get_si();
      mpz_class pw = prime_power(q, kk >= 0 ? kk : -kk);
      if (kk >= 0) {
        base *= mpq_class(pw);
      } else {
        base /= mpq_class(pw);
      }
    }
    base.canonicalize();
    inf_drift = DriftValue{mpq_class(mpz_class(1), denom_lcm), base};
  }
  result.drifts.push_back(PlaceDrift{kArchimedeanPlace, inf_drift, inf_drift.sign() < 0});

  for (const auto& d : result.drifts) {
    if (d.negative) result.boundary_places.push_back(d.place);
  }
  return result;
}

RationalStepMeasure to_rational(const StepMeasure& mu) {
  std::vector<RationalAtom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) {
    long m = a.step.exponent;
    mpq_class dil = m >= 0 ? mpq_class(prime_power(mu.prime(), m))
                           : mpq_class(mpz_class(1), prime_power(mu.prime(), -m));
    dil.canonicalize();
    atoms.push_back(RationalAtom{a.step.translation.to_mpq(), dil, a.weight});
  }
  return RationalStepMeasure(std::move(atoms));
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw DomainError("empty rational");
  s = s.substr(first, last - first + 1);
  if (s.find_first_not_of("0123456789+-/") != std::string::npos) {
    throw DomainError("rational must be integer or n/d, got '" + s + "'");
  }
  try {
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + s + "'");
  }
}

namespace {

std::map<std::string, std::string> parse_kv(std::istringstream& rest, long line_no) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (rest >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" + tok +
                        "'");
    }
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string require_key(std::map<std::string, std::string>& kv, const std::string& key,
                        long line_no) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw ConfigError("line " + std::to_string(line_no) + ": missing " + key + "=");
  }
  std::string v = it->second;
  kv.erase(it);
  return v;
}

}  // namespace

ParsedConfig parse_measure_config(std::string_view text) {
  long prime = 0;
  struct BsLine {
    std::string b;
    long m;
    mpq_class w;
  };
  std::vector<BsLine> bs_lines;
  std::vector<RationalAtom> rational_atoms;

  std::istringstream in{std::string(text)};
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    try {
      if (head.rfind("p=", 0) == 0) {
        long p = std::stol(head.substr(2));
        if (prime != 0 && prime != p) {
          throw ConfigError("line " + std::to_string(line_no) + ": conflicting p= lines");
        }
        require_prime(p);
        prime = p;
      } else if (head == "atom") {
        auto kv = parse_kv(ls, line_no);
        BsLine a;
        a.b = require_key(kv, "b", line_no);
        a.m = std::stol(require_key(kv, "m", line_no));
        a.w = parse_rational(require_key(kv, "w", line_no));
        if (!kv.empty()) {
          throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                            kv.begin()->first + "'");
        }
        bs_lines.push_back(std::move(a));
      } else if (head == "ratom") {
        auto kv = parse_kv(ls, line_no);
        RationalAtom a;
        a.b = parse_rational(require_key(kv, "b", line_no));
        a.a = parse_rational(require_key(kv, "a", line_no));
        a.weight = parse_rational(require_key(kv, "w", line_no));
        if (!kv.empty()) {
          throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                            kv.begin()->first + "'");
        }
        rational_atoms.push_back(std::move(a));
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unrecognized directive '" +
                          head + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (!bs_lines.empty() && !rational_atoms.empty()) {
    throw ConfigError("config mixes atom and ratom lines");
  }
  if (bs_lines.empty() && rational_atoms.empty()) {
    throw ConfigError("config defines no atoms");
  }

  ParsedConfig out;
  std::ostringstream norm;
  try {
    if (!bs_lines.empty()) {
      if (prime == 0) throw ConfigError("config with atom lines needs a p= line");
      std::vector<WeightedStep> steps;
      steps.reserve(bs_lines.size());
      norm << "p=" << prime << "\n";
      for (const auto& l : bs_lines) {
        AffineExact g{PadicRational::parse(prime, l.b), l.m};
        norm << "atom b=" << g.translation.to_string() << " m=" << l.m << " w=" << l.w.get_str()
             << "\n";
        steps.push_back(WeightedStep{std::move(g), l.w});
      }
      out.bs_measure = StepMeasure(prime, std::move(steps));
      out.rational_measure = to_rational(*out.bs_measure);
    } else {
      for (const auto& a : rational_atoms) {
        norm << "ratom b=" << a.b.get_str() << " a=" << a.a.get_str() << " w="
             << a.weight.get_str() << "\n";
      }
      out.rational_measure = RationalStepMeasure(rational_atoms);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid measure: ") + e.what());
  }
  out.normalized = norm.str();
  return out;
}

ParsedConfig load_measure_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_measure_config(buf.str());
}

}  // namespace solwalk
