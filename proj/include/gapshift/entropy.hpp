#ifndef GAPSHIFT_ENTROPY_HPP_
#define GAPSHIFT_ENTROPY_HPP_

#include <cstddef>
#include <string>

#include "gapshift/shift_spec.hpp"

namespace gapshift {

enum class TailBoundKind {
  // Finite sum, or a closed form with no truncated tail at all.
  ExactPolynomial,
  // Geometric tail from phi <= p (periodic w) or phi = k^n (full shift).
  GeometricTail,
  // Geometric tail from submultiplicativity of the complexity function.
  SubmultiplicativeTail,
};

std::string to_string(TailBoundKind kind);

// An interval [lo, hi] guaranteed to contain a real quantity, together
// with how its truncation error was bounded.  hi may be +infinity when no
// finite tail bound held at the evaluation point.
struct CertifiedValue {
  double lo = 0.0;
  double hi = 0.0;
  long long truncation_depth = 0;
  TailBoundKind tail_bound_kind = TailBoundKind::ExactPolynomial;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Solver knobs; max_depth is overridable via the GAPSHIFT_MAX_DEPTH
// environment variable at the CLI layer.
struct SolverConfig {
  double tol = 1e-10;
  long long max_depth = 1 << 14;
};

// Result of the root solve: an enclosure of the growth rate lambda and of
// h = log lambda.  `certified` drops to false when depth ran out (e.g. a
// predicate gap set's enumeration bound) before reaching tol.
struct EntropyResult {
  CertifiedValue lambda;
  double h_lo = 0.0;
  double h_hi = 0.0;
  bool certified = true;
};

// Enclosure of f(lambda) = sum over n in S of phi_w(n) lambda^-(n+1),
// truncated at depth N.  The lower end is the truncated sum rounded down;
// the upper end adds a variant-appropriate tail bound (exact zero for
// finite S once N covers it, geometric for periodic/full-shift w,
// submultiplicative otherwise).  hi = +infinity when the tail diverges at
// this lambda.
CertifiedValue characteristic_sum(const ShiftSpec& spec, double lambda,
                                  long long N);

// Certified enclosure of the unique positive root of f(lambda) = 1, by
// bisection on [1, k+1] with adaptive truncation depth.  Throws
// DepthExhausted only when not even an uncertified bracket is available;
// predicate-bound shortfalls are instead reported via certified = false.
EntropyResult solve_entropy(const ShiftSpec& spec, const SolverConfig& config = {});

// The marker-gap special case w = 1^inf, where phi is identically 1.
EntropyResult sgap_entropy(const GapSet& gap_set, const SolverConfig& config = {});

// Two-part evaluation of f(lambda) for periodic w with minimal period p:
// exact terms below n = p-1, p-weighted terms from there on, closed to
// exact geometric expressions per residue class when S is eventually
// periodic.  Throws WrongVariant for non-periodic w.
CertifiedValue periodic_characteristic(const ShiftSpec& spec, double lambda,
                                       long long max_depth = 1 << 14);

// (1/n) log count_words(spec, n).
double empirical_entropy(const ShiftSpec& spec, std::size_t n);

// log of an exact count, robust to values beyond double range.
double log_big(const BigInt& value);

}  // namespace gapshift

#endif  // GAPSHIFT_ENTROPY_HPP_
