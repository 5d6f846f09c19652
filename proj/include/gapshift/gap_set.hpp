#ifndef GAPSHIFT_GAP_SET_HPP_
#define GAPSHIFT_GAP_SET_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gapshift {

// An arithmetic progression start, start+step, start+2*step, ...
struct Progression {
  long long start = 0;
  long long step = 1;
};

// Finite description of a non-empty set S of non-negative integers (the
// allowed gap lengths).  Three variants:
//
//   Finite             an explicit sorted list;
//   EventuallyPeriodic a finite sporadic part plus arithmetic progressions
//                      (union semantics, overlaps allowed);
//   Predicate          a total membership function that is trusted only up
//                      to an enumeration bound, beyond which every query
//                      raises QueryBeyondBound.
//
// EventuallyPeriodic inputs are canonicalized at construction into a
// pre-period list below a threshold plus disjoint residue classes modulo
// the lcm of the steps, so closed-form sums and gcd computations never
// double-count overlapping progressions.
class GapSet {
 public:
  enum class Kind { Finite, EventuallyPeriodic, Predicate };

  static GapSet finite(std::vector<long long> elements);
  static GapSet eventually_periodic(std::vector<long long> sporadic,
                                    std::vector<Progression> progressions);
  static GapSet predicate(std::function<bool(long long)> membership,
                          long long enumeration_bound, std::string name,
                          bool declared_infinite = true);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  // Exact membership; Predicate variant throws QueryBeyondBound past its
  // enumeration bound.
  bool contains(long long n) const;

  // All elements <= N, ascending.
  std::vector<long long> elements_upto(long long N) const;

  long long min_element() const { return min_element_; }

  // True when the set is known to be finite (Finite variant, or an
  // EventuallyPeriodic with no progressions).
  bool certainly_finite() const;

  // True when the set is known to be infinite (a progression is present,
  // or a Predicate declared infinite by its constructor).
  bool certainly_infinite() const;

  // max S for certainly-finite sets; nullopt otherwise.
  std::optional<long long> max_element() const;

  // Whether some n in S satisfies n >= len.  True outright for certainly
  // infinite sets; compared against max S for finite ones.  For an
  // undeclared predicate the answer is searched within the bound and
  // QueryBeyondBound is raised if nothing at least len is found there.
  bool admits_gap_at_least(long long len) const;

  // Least element of S that is >= len, if any.  Finite sets return nullopt
  // when len exceeds max S; predicates throw past their bound.
  std::optional<long long> least_geq(long long len) const;

  // gcd of { n+1 : n in S } in closed form; only available for structured
  // (Finite / EventuallyPeriodic) sets.  Also returns representative
  // elements of S that witness the value.
  struct GcdResult {
    long long gcd = 0;
    std::vector<long long> witnesses;
  };
  GcdResult successor_gcd_exact() const;

  long long enumeration_bound() const { return enumeration_bound_; }

  // Canonical periodic structure (EventuallyPeriodic only): elements below
  // threshold() are listed by pre_period(); at and above it the set is the
  // union of the classes { first + j*modulus() : j >= 0 } over first in
  // residue_firsts(), one class per occupied residue mod modulus().
  long long threshold() const { return threshold_; }
  long long modulus() const { return modulus_; }
  const std::vector<long long>& pre_period() const { return pre_period_; }
  const std::vector<long long>& residue_firsts() const {
    return residue_firsts_;
  }

 private:
  GapSet() = default;

  Kind kind_ = Kind::Finite;
  std::string name_;
  long long min_element_ = 0;

  // Finite variant, and the pre-period of EventuallyPeriodic.
  std::vector<long long> pre_period_;

  // EventuallyPeriodic canonical form: for n >= threshold_, membership is
  // "n is in one of the classes first + j*modulus_".  Each first lies in
  // [threshold_, threshold_ + modulus_).
  long long threshold_ = 0;
  long long modulus_ = 1;
  std::vector<long long> residue_firsts_;

  // Predicate variant.
  std::function<bool(long long)> membership_;
  long long enumeration_bound_ = 0;
  bool declared_infinite_ = false;
};

}  // namespace gapshift

#endif  // GAPSHIFT_GAP_SET_HPP_
