#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "gapshift/entropy.hpp"
#include "gapshift/errors.hpp"
#include "gapshift/language.hpp"
#include "gapshift/shift_spec.hpp"
#include "gapshift/word.hpp"

using namespace gapshift;

namespace {

ShiftSpec sgap(GapSet s) {
  return {std::move(s), FactorSource::periodic(parse_word("1", 1), 1)};
}

const double kGoldenRatio = 1.6180339887498949;
const double kSilverRatio = 2.4142135623730951;  // 1 + sqrt 2

// Plain long-double partial sum, an oracle independent of the certified
// evaluator's slack machinery.
long double naive_sum(const ShiftSpec& spec, long double lambda,
                      long long N) {
  long double total = 0;
  for (long long n : spec.gap_set.elements_upto(N)) {
    long double phi = static_cast<long double>(
        spec.factor_source.complexity(static_cast<std::size_t>(n))
            .convert_to<double>());
    total += phi * std::pow(lambda, static_cast<long double>(-(n + 1)));
  }
  return total;
}

}  // namespace

TEST_CASE("characteristic sum closed forms") {
  // S = Z>=0, w = 1^inf, lambda = 2: geometric sum is exactly 1.
  ShiftSpec all = sgap(GapSet::eventually_periodic({}, {{0, 1}}));
  CertifiedValue e = characteristic_sum(all, 2.0, 40);
  CHECK(e.lo <= 1.0);
  CHECK(e.hi >= 1.0);
  CHECK(e.width() < 1e-8);

  // golden ratio zeroes lambda^-1 + lambda^-2 - 1
  ShiftSpec golden = sgap(GapSet::finite({0, 1}));
  CertifiedValue g = characteristic_sum(golden, kGoldenRatio, 2);
  CHECK(g.lo <= 1.0);
  CHECK(g.hi >= 1.0);
  // The evaluator pads each end by an absolute 2^-40, so about 1.8e-12 is
  // the narrowest any enclosure gets.
  CHECK(g.width() < 4e-12);
  CHECK(g.tail_bound_kind == TailBoundKind::ExactPolynomial);

  // full shift: sum k^n (k+1)^-(n+1) = 1
  ShiftSpec full = {GapSet::eventually_periodic({}, {{0, 1}}),
                    FactorSource::full_shift(3)};
  CertifiedValue f = characteristic_sum(full, 4.0, 200);
  CHECK(f.lo <= 1.0);
  CHECK(f.hi >= 1.0);
  CHECK(f.width() < 1e-9);
  CHECK(f.tail_bound_kind == TailBoundKind::GeometricTail);
}

TEST_CASE("enclosures contain deeper partial sums") {
  std::vector<ShiftSpec> specs = {
      sgap(GapSet::eventually_periodic({}, {{0, 1}})),
      sgap(GapSet::eventually_periodic({}, {{1, 2}})),
      {GapSet::eventually_periodic({}, {{0, 1}}),
       FactorSource::periodic(parse_word("12", 2), 2)},
      {GapSet::eventually_periodic({0}, {{2, 3}}),
       FactorSource::substitution({{1, parse_word("12", 2)},
                                   {2, parse_word("21", 2)}},
                                  1, true, 2)},
  };
  for (const auto& spec : specs) {
    for (double lambda : {1.6, 2.1, 3.0}) {
      for (long long N : {16LL, 32LL}) {
        CertifiedValue e = characteristic_sum(spec, lambda, N);
        long double deeper = naive_sum(spec, lambda, 4 * N);
        CHECK(static_cast<double>(deeper) >= e.lo * (1 - 1e-13));
        CHECK(static_cast<double>(deeper) <= e.hi * (1 + 1e-13));
      }
    }
  }
}

TEST_CASE("monotonicity of the characteristic sum") {
  ShiftSpec spec = {GapSet::eventually_periodic({}, {{0, 1}}),
                    FactorSource::periodic(parse_word("12", 2), 2)};
  double prev_lo = 1e300;
  for (double lambda = 2.2; lambda < 3.4; lambda += 0.2) {
    CertifiedValue e = characteristic_sum(spec, lambda, 64);
    CHECK(e.hi <= prev_lo + 1e-9);
    prev_lo = e.lo;
  }
}

TEST_CASE("solve_entropy closed-form roots") {
  EntropyResult golden = solve_entropy(sgap(GapSet::finite({0, 1})));
  CHECK(golden.certified);
  CHECK(golden.lambda.lo <= kGoldenRatio);
  CHECK(golden.lambda.hi >= kGoldenRatio);
  CHECK(golden.lambda.width() <= 1e-10);
  CHECK(golden.h_lo <= 0.4812118250596035);
  CHECK(golden.h_hi >= 0.4812118250596034);

  EntropyResult silver = solve_entropy(
      {GapSet::eventually_periodic({}, {{0, 1}}),
       FactorSource::periodic(parse_word("12", 2), 2)});
  CHECK(silver.certified);
  CHECK(silver.lambda.lo <= kSilverRatio);
  CHECK(silver.lambda.hi >= kSilverRatio);
  CHECK(std::log(silver.lambda.hi) >= 0.88137358701954302);

  // S={1}: exact h = 0
  EntropyResult one = solve_entropy(sgap(GapSet::finite({1})));
  CHECK(one.lambda.lo == 1.0);
  CHECK(one.lambda.hi == 1.0);
  CHECK(one.h_lo == 0.0);
  CHECK(one.h_hi == 0.0);

  // S={2}, w=(12)^inf: cube root of 2
  EntropyResult cbrt = solve_entropy(
      {GapSet::finite({2}), FactorSource::periodic(parse_word("12", 2), 2)});
  double target = std::cbrt(2.0);
  CHECK(cbrt.certified);
  CHECK(cbrt.lambda.lo <= target);
  CHECK(cbrt.lambda.hi >= target);
  CHECK(cbrt.lambda.width() < 1e-12);
}

TEST_CASE("full shift reductions hit k+1 exactly") {
  for (int k : {1, 2, 3}) {
    ShiftSpec spec = {GapSet::eventually_periodic({}, {{0, 1}}),
                      FactorSource::full_shift(k)};
    EntropyResult r = solve_entropy(spec);
    double target = k + 1.0;
    CHECK(r.certified);
    CHECK(r.lambda.lo <= target);
    CHECK(r.lambda.hi >= target - 1e-9);
    CHECK(r.lambda.hi - target <= 1e-9);
    CHECK(std::abs(r.h_hi - std::log(target)) < 1e-9);
  }
}

TEST_CASE("sgap wrapper and powers of two") {
  GapSet p2 = GapSet::predicate(
      [](long long n) { return n >= 1 && (n & (n - 1)) == 0; }, 1 << 20,
      "powers-of-2", true);
  EntropyResult r = sgap_entropy(p2);
  CHECK(r.certified);
  CHECK(r.lambda.width() <= 1e-9);
  CHECK(r.lambda.lo > 1.0);
  CHECK(r.lambda.hi < 2.0);

  EntropyResult all = sgap_entropy(GapSet::eventually_periodic({}, {{0, 1}}));
  CHECK(all.lambda.lo <= 2.0);
  CHECK(all.lambda.hi >= 2.0 - 1e-9);

  // w=1^inf: the wrapper and the general solver agree
  EntropyResult direct = solve_entropy(sgap(GapSet::finite({0, 2})));
  EntropyResult wrapped = sgap_entropy(GapSet::finite({0, 2}));
  CHECK(std::abs(direct.lambda.mid() - wrapped.lambda.mid()) < 1e-10);
}

TEST_CASE("periodic evaluator agrees with the generic one") {
  std::vector<ShiftSpec> specs = {
      {GapSet::eventually_periodic({}, {{0, 1}}),
       FactorSource::periodic(parse_word("12", 2), 2)},
      {GapSet::eventually_periodic({0}, {{3, 3}}),
       FactorSource::periodic(parse_word("123", 3), 3)},
      {GapSet::finite({0, 1, 4}),
       FactorSource::periodic(parse_word("12", 2), 2)},
      sgap(GapSet::eventually_periodic({}, {{1, 2}})),
  };
  for (const auto& spec : specs) {
    for (double lambda : {1.7, 2.0, 2.6, 3.1}) {
      CertifiedValue a = periodic_characteristic(spec, lambda);
      CertifiedValue b = characteristic_sum(spec, lambda, 2000);
      CHECK(a.lo <= b.hi);
      CHECK(b.lo <= a.hi);
    }
  }
}

TEST_CASE("periodic evaluator closed form at the silver ratio") {
  ShiftSpec spec = {GapSet::eventually_periodic({}, {{0, 1}}),
                    FactorSource::periodic(parse_word("12", 2), 2)};
  CertifiedValue e = periodic_characteristic(spec, kSilverRatio);
  CHECK(e.lo <= 1.0);
  CHECK(e.hi >= 1.0);
  CHECK(e.width() < 4e-12);  // floor set by the evaluator's 2^-40 padding
  CHECK(e.tail_bound_kind == TailBoundKind::ExactPolynomial);
  CHECK_THROWS_AS(
      periodic_characteristic({GapSet::finite({1}),
                               FactorSource::full_shift(2)},
                              2.0),
      WrongVariant);
}

TEST_CASE("empirical entropy upper-approaches h") {
  ShiftSpec golden = sgap(GapSet::finite({0, 1}));
  EntropyResult r = solve_entropy(golden);
  double prev = 1e9;
  for (std::size_t n : {4, 8, 12, 16, 20}) {
    double emp = empirical_entropy(golden, n);
    CHECK(emp >= r.h_lo - 1e-12);
    CHECK(emp <= prev + 1e-12);
    prev = emp;
  }
  // n=20: (1/20) log 17711
  CHECK(empirical_entropy(golden, 20) ==
        doctest::Approx(std::log(17711.0) / 20).epsilon(1e-12));
  CHECK(std::abs(empirical_entropy(golden, 20) - 0.4889) < 1e-3);

  ShiftSpec full1 = {GapSet::eventually_periodic({}, {{0, 1}}),
                     FactorSource::full_shift(1)};
  for (std::size_t n : {1, 5, 9}) {
    CHECK(empirical_entropy(full1, n) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("per-term lower bound on the root") {
  std::vector<ShiftSpec> specs = {
      {GapSet::eventually_periodic({}, {{0, 1}}),
       FactorSource::substitution({{1, parse_word("12", 2)},
                                   {2, parse_word("21", 2)}},
                                  1, true, 2)},
      {GapSet::finite({0, 1, 5}), FactorSource::full_shift(2)},
  };
  for (const auto& spec : specs) {
    EntropyResult r = solve_entropy(spec);
    for (long long n : spec.gap_set.elements_upto(12)) {
      double phi =
          spec.factor_source.complexity(static_cast<std::size_t>(n))
              .convert_to<double>();
      CHECK(r.lambda.hi >=
            std::pow(phi, 1.0 / static_cast<double>(n + 1)) - 1e-10);
    }
  }
}

TEST_CASE("root sandwich holds at the reported interval ends") {
  std::vector<ShiftSpec> specs = {
      sgap(GapSet::finite({0, 1})),
      sgap(GapSet::eventually_periodic({}, {{1, 2}})),
      {GapSet::eventually_periodic({}, {{0, 1}}),
       FactorSource::substitution({{1, parse_word("12", 2)},
                                   {2, parse_word("1", 2)}},
                                  1, true, 2)},
  };
  // The sandwich holds up to the series-enclosure slop the solver works
  // at, tol/4 = 2.5e-11 by default.
  const double slop = 2.5e-11;
  for (const auto& spec : specs) {
    EntropyResult r = solve_entropy(spec);
    CertifiedValue at_lo = characteristic_sum(spec, r.lambda.lo, 300);
    CertifiedValue at_hi = characteristic_sum(spec, r.lambda.hi, 300);
    CHECK(at_lo.hi >= 1.0 - slop - at_lo.width());
    CHECK(at_hi.lo <= 1.0 + slop + at_hi.width());
  }
}

TEST_CASE("uncertified when a predicate bound blocks the tail") {
  GapSet tiny = GapSet::predicate(
      [](long long n) { return n >= 1 && (n & (n - 1)) == 0; }, 6,
      "powers-of-2", true);
  EntropyResult r = sgap_entropy(tiny);
  CHECK(!r.certified);
  // still a sane bracket inside (1, 2)
  CHECK(r.lambda.lo > 1.0);
  CHECK(r.lambda.hi < 2.0);
}

TEST_CASE("solver input validation") {
  ShiftSpec golden = sgap(GapSet::finite({0, 1}));
  SolverConfig bad_tol{1e-14, 1 << 14};
  CHECK_THROWS_AS(solve_entropy(golden, bad_tol), SpecParseError);
  SolverConfig bad_depth{1e-10, 0};
  CHECK_THROWS_AS(solve_entropy(golden, bad_depth), SpecParseError);
}

TEST_CASE("log_big handles values beyond double range") {
  BigInt huge = BigInt(1) << 2000;
  CHECK(log_big(huge) == doctest::Approx(2000 * std::log(2.0)).epsilon(1e-12));
  CHECK(log_big(BigInt(1)) == 0.0);
  CHECK(log_big(BigInt(12345)) ==
        doctest::Approx(std::log(12345.0)).epsilon(1e-14));
}
