#include "gapshift/entropy.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gapshift/errors.hpp"
#include "gapshift/language.hpp"

namespace gapshift {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack applied to enclosure ends in place of interval
// arithmetic.  Kahan summation keeps accumulated round-off near machine
// epsilon, ~50x below this, so the slack dominates every rounding source.
const double kSlack = std::ldexp(1.0, -40);
// Absolute pad covering per-term underflow to subnormals.
constexpr double kUnderflowPad = 1e-290;
// Extra relative widening for quantities that pass through log space
// (log_big, the submultiplicative gamma).
constexpr double kLogSpaceSlack = 1e-9;
constexpr double kLn2 = 0.6931471805599453094;

double down_ulps(double x, int n = 4) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double up_ulps(double x, int n = 4) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, kInf);
  return x;
}

struct KahanSum {
  double total = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = total + y;
    carry = (t - total) - y;
    total = t;
  }
};

// lambda^-e without intermediate overflow, in extended precision so the
// relative error stays far below kSlack even for exponents ~2^14.
double pow_neg(double lambda, long long e) {
  long double x = -static_cast<long double>(e) *
                  std::log(static_cast<long double>(lambda));
  return static_cast<double>(std::exp(x));
}

// One term phi_w(n) lambda^-(n+1).  Sets `widened` for terms that had to
// go through log space.
double series_term(const ShiftSpec& spec, double lambda, long long n,
                   bool* widened) {
  if (spec.factor_source.kind() == FactorSource::Kind::FullShift) {
    long double lk = std::log(
        static_cast<long double>(spec.factor_source.alphabet_size()));
    long double ll = std::log(static_cast<long double>(lambda));
    return static_cast<double>(
        std::exp(static_cast<long double>(n) * lk -
                 static_cast<long double>(n + 1) * ll));
  }
  BigInt phi = spec.factor_source.complexity(static_cast<std::size_t>(n));
  if (phi < (BigInt(1) << 53)) {
    return phi.convert_to<double>() * pow_neg(lambda, n + 1);
  }
  *widened = true;
  return std::exp(log_big(phi) - static_cast<double>(n + 1) * std::log(lambda));
}

struct TailBound {
  double value = 0.0;  // upper bound on the sum over n > N, +inf if none
  TailBoundKind kind = TailBoundKind::ExactPolynomial;
};

TailBound tail_bound(const ShiftSpec& spec, double lambda, long long N) {
  TailBound tail;
  switch (spec.factor_source.kind()) {
    case FactorSource::Kind::Periodic: {
      // phi_w(n) <= p for every n, so the tail is dominated by the
      // geometric series p sum_{n>N} lambda^-(n+1).
      tail.kind = TailBoundKind::GeometricTail;
      if (lambda <= 1.0) {
        tail.value = kInf;
        return tail;
      }
      double p = static_cast<double>(spec.factor_source.minimal_period());
      tail.value = p * pow_neg(lambda, N + 2) / (1.0 - 1.0 / lambda) *
                   (1.0 + kLogSpaceSlack);
      return tail;
    }
    case FactorSource::Kind::FullShift: {
      // phi_w(n) = k^n exactly; the general submultiplicative bound
      // degenerates here (its growth estimate meets lambda at the root),
      // so the exact geometric form is required, not just faster.
      tail.kind = TailBoundKind::GeometricTail;
      double k = static_cast<double>(spec.factor_source.alphabet_size());
      if (lambda <= k) {
        tail.value = kInf;
        return tail;
      }
      long double lr = std::log(static_cast<long double>(k)) -
                       std::log(static_cast<long double>(lambda));
      double head = static_cast<double>(
          std::exp(static_cast<long double>(N + 1) * lr -
                   std::log(static_cast<long double>(lambda))));
      tail.value = head / (1.0 - k / lambda) * (1.0 + kLogSpaceSlack);
      return tail;
    }
    case FactorSource::Kind::Substitution: {
      // Submultiplicativity gives phi(qN+r) <= phi(N)^(q+1), hence with
      // gamma = phi(N)^(1/N) the bound phi(n) <= phi(N) gamma^n for all
      // n >= N.  (The sharper-looking phi(N) gamma^(n-N) does not follow
      // from submultiplicativity alone, so it is not used.)
      tail.kind = TailBoundKind::SubmultiplicativeTail;
      if (N < 1) {
        tail.value = kInf;
        return tail;
      }
      double log_phi = log_big(spec.factor_source.complexity(
          static_cast<std::size_t>(N)));
      double gamma =
          std::exp(log_phi / static_cast<double>(N)) * (1.0 + kLogSpaceSlack);
      if (lambda <= gamma) {
        tail.value = kInf;
        return tail;
      }
      double log_ratio = std::log(gamma) - std::log(lambda);
      double head = std::exp(log_phi - std::log(lambda) +
                             static_cast<double>(N + 1) * log_ratio);
      tail.value =
          head / (1.0 - gamma / lambda) * (1.0 + 2.0 * kLogSpaceSlack);
      return tail;
    }
  }
  throw WrongVariant("unreachable factor source kind");
}

long long depth_cap(const ShiftSpec& spec, long long max_depth) {
  if (spec.gap_set.kind() == GapSet::Kind::Predicate) {
    return std::min(max_depth, spec.gap_set.enumeration_bound());
  }
  return max_depth;
}

}  // namespace

std::string to_string(TailBoundKind kind) {
  switch (kind) {
    case TailBoundKind::ExactPolynomial:
      return "exact_polynomial";
    case TailBoundKind::GeometricTail:
      return "geometric_tail";
    case TailBoundKind::SubmultiplicativeTail:
      return "submultiplicative_tail";
  }
  return "unknown";
}

double log_big(const BigInt& value) {
  if (value <= 0) throw Error("log of a non-positive count");
  if (value < (BigInt(1) << 53)) {
    return std::log(value.convert_to<double>());
  }
  const unsigned b = boost::multiprecision::msb(value);
  BigInt top = value >> (b - 52);
  return std::log(top.convert_to<double>()) +
         static_cast<double>(b - 52) * kLn2;
}

CertifiedValue characteristic_sum(const ShiftSpec& spec, double lambda,
                                  long long N) {
  if (!(lambda > 0.0)) throw Error("lambda must be positive");

  CertifiedValue out;
  out.truncation_depth = N;

  KahanSum sum;
  double widen = 0.0;
  bool widened = false;
  for (long long n : spec.gap_set.elements_upto(N)) {
    bool w = false;
    double t = series_term(spec, lambda, n, &w);
    sum.add(t);
    if (w) widen += t * 2.0 * kLogSpaceSlack;
    widened = widened || w;
  }
  (void)widened;

  double tail = 0.0;
  if (spec.gap_set.certainly_finite()) {
    // Everything past N is finitely many exact terms.
    out.tail_bound_kind = TailBoundKind::ExactPolynomial;
    long long max_s = *spec.gap_set.max_element();
    if (max_s > N) {
      KahanSum rest;
      for (long long n : spec.gap_set.elements_upto(max_s)) {
        if (n <= N) continue;
        bool w = false;
        double t = series_term(spec, lambda, n, &w);
        rest.add(t);
        if (w) widen += t * 2.0 * kLogSpaceSlack;
      }
      tail = rest.total;
    }
  } else {
    TailBound tb = tail_bound(spec, lambda, N);
    out.tail_bound_kind = tb.kind;
    tail = tb.value;
  }

  out.lo = (sum.total - widen) * (1.0 - kSlack);
  if (out.lo < 0.0) out.lo = 0.0;
  if (tail == kInf) {
    out.hi = kInf;
  } else {
    out.hi = (sum.total + widen + tail) * (1.0 + kSlack) + kUnderflowPad;
  }
  return out;
}

CertifiedValue periodic_characteristic(const ShiftSpec& spec, double lambda,
                                       long long max_depth) {
  if (spec.factor_source.kind() != FactorSource::Kind::Periodic) {
    throw WrongVariant("two-part evaluation needs a periodic factor source");
  }
  if (!(lambda > 0.0)) throw Error("lambda must be positive");
  const long long p =
      static_cast<long long>(spec.factor_source.minimal_period());
  const GapSet& S = spec.gap_set;

  CertifiedValue out;
  KahanSum sum;
  // Low part: n < p-1 keeps its exact phi_w(n).
  for (long long n : S.elements_upto(p - 2)) {
    bool w = false;
    sum.add(series_term(spec, lambda, n, &w));
  }

  // High part: phi_w(n) = p for n >= p-1, so each class contributes a
  // geometric series that closes in lambda.
  double tail = 0.0;
  out.tail_bound_kind = TailBoundKind::ExactPolynomial;
  switch (S.kind()) {
    case GapSet::Kind::Finite: {
      out.truncation_depth = *S.max_element();
      for (long long n : S.elements_upto(*S.max_element())) {
        if (n >= p - 1) sum.add(static_cast<double>(p) * pow_neg(lambda, n + 1));
      }
      break;
    }
    case GapSet::Kind::EventuallyPeriodic: {
      out.truncation_depth = S.threshold();
      if (lambda <= 1.0) {
        tail = kInf;
        break;
      }
      for (long long n : S.elements_upto(S.threshold() - 1)) {
        if (n >= p - 1) sum.add(static_cast<double>(p) * pow_neg(lambda, n + 1));
      }
      const long long D = S.modulus();
      const double class_denominator = 1.0 - pow_neg(lambda, D);
      for (long long f : S.residue_firsts()) {
        long long first = f;
        if (first < p - 1) first += D * ((p - 1 - first + D - 1) / D);
        sum.add(static_cast<double>(p) * pow_neg(lambda, first + 1) /
                class_denominator);
      }
      break;
    }
    case GapSet::Kind::Predicate: {
      const long long N = std::min(max_depth, S.enumeration_bound());
      out.truncation_depth = N;
      out.tail_bound_kind = TailBoundKind::GeometricTail;
      for (long long n : S.elements_upto(N)) {
        if (n >= p - 1) sum.add(static_cast<double>(p) * pow_neg(lambda, n + 1));
      }
      if (lambda <= 1.0) {
        tail = kInf;
      } else {
        tail = static_cast<double>(p) * pow_neg(lambda, N + 2) /
               (1.0 - 1.0 / lambda) * (1.0 + kLogSpaceSlack);
      }
      break;
    }
  }

  out.lo = sum.total * (1.0 - kSlack);
  if (out.lo < 0.0) out.lo = 0.0;
  out.hi = tail == kInf
               ? kInf
               : (sum.total + tail) * (1.0 + kSlack) + kUnderflowPad;
  return out;
}

EntropyResult solve_entropy(const ShiftSpec& spec, const SolverConfig& config) {
  if (!(config.tol >= 1e-12)) {
    throw SpecParseError("solver tolerance must be at least 1e-12");
  }
  if (config.max_depth < 1) {
    throw SpecParseError("solver depth must be positive");
  }

  EntropyResult result;

  // Singleton S = {m}: the characteristic equation collapses to
  // phi_w(m) lambda^-(m+1) = 1 with the closed-form root phi_w(m)^(1/(m+1)).
  if (spec.gap_set.certainly_finite()) {
    std::vector<long long> elems =
        spec.gap_set.elements_upto(*spec.gap_set.max_element());
    if (elems.size() == 1) {
      const long long m = elems.front();
      BigInt phi = spec.factor_source.complexity(static_cast<std::size_t>(m));
      result.lambda.truncation_depth = m;
      result.lambda.tail_bound_kind = TailBoundKind::ExactPolynomial;
      if (phi == 1) {
        result.lambda.lo = result.lambda.hi = 1.0;
        result.h_lo = result.h_hi = 0.0;
        return result;
      }
      // log_big is exact below 2^53 and within ~4 eps relative above, the
      // exponent after division is at most log(k+1) < 5, and exp adds one
      // ulp, so the relative error stays below 32 ulps.
      double root = std::exp(log_big(phi) / static_cast<double>(m + 1));
      result.lambda.lo = down_ulps(root, 32);
      result.lambda.hi = up_ulps(root, 32);
      result.h_lo = down_ulps(std::log(result.lambda.lo));
      result.h_hi = up_ulps(std::log(result.lambda.hi));
      return result;
    }
  }

  const long long cap = depth_cap(spec, config.max_depth);
  long long depth = std::min<long long>(32, cap);
  TailBoundKind last_kind = TailBoundKind::ExactPolynomial;

  // Bisect on [1, k+1]; f(k+1) <= 1 because phi_w(n) <= k^n term-by-term,
  // and the loop keeps the weak sandwich f(left).hi >= 1 >= f(right).lo.
  double left = 1.0;
  double right = static_cast<double>(spec.alphabet_size()) + 1.0;
  while (right - left > config.tol) {
    const double mid = 0.5 * (left + right);
    CertifiedValue e = characteristic_sum(spec, mid, depth);
    while (e.lo <= 1.0 && e.hi >= 1.0 && e.width() > 0.25 * config.tol &&
           depth < cap) {
      depth = std::min(2 * depth, cap);
      e = characteristic_sum(spec, mid, depth);
    }
    last_kind = e.tail_bound_kind;
    if (e.lo > 1.0) {
      left = mid;
    } else if (e.hi < 1.0) {
      right = mid;
    } else {
      // Enclosure straddles 1.  Within tol/4 that is the expected state
      // near the root and either side preserves the sandwich; with a
      // wider enclosure the depth cap (e.g. a predicate bound) blocked
      // certification.
      if (e.width() > 0.25 * config.tol) result.certified = false;
      if (e.mid() >= 1.0) {
        left = mid;
      } else {
        right = mid;
      }
    }
  }

  result.lambda.lo = left;
  result.lambda.hi = right;
  result.lambda.truncation_depth = depth;
  result.lambda.tail_bound_kind = last_kind;
  result.h_lo = down_ulps(std::log(left));
  result.h_hi = up_ulps(std::log(right));
  return result;
}

EntropyResult sgap_entropy(const GapSet& gap_set, const SolverConfig& config) {
  ShiftSpec spec{gap_set, FactorSource::periodic(Word(1, static_cast<char>(1)), 1)};
  return solve_entropy(spec, config);
}

double empirical_entropy(const ShiftSpec& spec, std::size_t n) {
  if (n == 0) throw Error("empirical entropy needs a positive length");
  return log_big(count_words(spec, n)) / static_cast<double>(n);
}

}  // namespace gapshift
