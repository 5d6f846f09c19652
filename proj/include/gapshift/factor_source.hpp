#ifndef GAPSHIFT_FACTOR_SOURCE_HPP_
#define GAPSHIFT_FACTOR_SOURCE_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gapshift/word.hpp"

namespace gapshift {

using BigInt = boost::multiprecision::cpp_int;

// Finite description of the factor language of a bi-infinite sequence w
// over {1..k}.  Only factor-level queries are exposed; w itself is never
// materialized.  Three variants:
//
//   Periodic      w = u^inf for a finite word u, canonicalized to minimal
//                 period at construction;
//   Substitution  the factor language of a primitive substitution, read
//                 off stabilized iterates of the seed letter;
//   FullShift     every word over {1..k} is a factor.
//
// Instances are immutable; the factor-set memo cache is internally
// synchronized so concurrent readers need no coordination.
class FactorSource {
 public:
  enum class Kind { Periodic, Substitution, FullShift };

  // Canonicalizes to minimal period: a word that is a proper power is
  // replaced by its primitive root.
  static FactorSource periodic(Word word, int alphabet_size);

  // `primitive` is the caller's assertion; when set, the constructor
  // verifies it against the incidence structure and rejects rules that
  // fail.  When unset, construction succeeds but factor queries throw
  // NotPrimitive.  Rules must cover every letter 1..k with non-empty
  // images and at least one image of length >= 2.
  static FactorSource substitution(std::map<Symbol, Word> rules, Symbol seed,
                                   bool primitive, int alphabet_size);

  static FactorSource full_shift(int alphabet_size);

  Kind kind() const { return kind_; }
  int alphabet_size() const { return alphabet_size_; }

  // Minimal period p (Periodic only; WrongVariant otherwise).
  std::size_t minimal_period() const;
  const Word& period_word() const;

  const std::map<Symbol, Word>& rules() const { return rules_; }
  Symbol seed() const { return seed_; }
  bool primitivity_verified() const { return primitivity_verified_; }

  // B_n(w), sorted.  FullShift materializes all k^n words and throws
  // BudgetExceeded when that exceeds an internal cap.
  std::vector<Word> factor_set(std::size_t n) const;

  // phi_w(n) = |B_n(w)| as an exact integer; fast paths avoid
  // materializing sets for Periodic and FullShift.
  BigInt complexity(std::size_t n) const;

  // Membership of f in the factor language.
  bool contains_factor(const Word& f) const;

  // Lexicographically least g with prefix f, |g| = target_len, g a factor.
  // Throws NotAFactor if f is not a factor.
  Word extend_right(const Word& f, std::size_t target_len) const;

  // Deterministic left extension: repeatedly prepends the least letter
  // that keeps the word a factor.  Throws NotAFactor if f is not a factor.
  Word extend_left(const Word& f, std::size_t target_len) const;

 private:
  FactorSource() = default;

  std::vector<Word> compute_factor_set(std::size_t n) const;
  std::vector<Word> substitution_factors(std::size_t n) const;
  Word apply_rules(const Word& x) const;

  Kind kind_ = Kind::FullShift;
  int alphabet_size_ = 1;

  // Periodic.
  Word period_word_;

  // Substitution.
  std::map<Symbol, Word> rules_;
  Symbol seed_ = 1;
  bool primitivity_verified_ = false;
  int primitivity_exponent_ = 0;

  // Copies share the memo; entries are pure functions of the (immutable)
  // description, so sharing is observationally transparent.
  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, std::vector<Word>> factor_sets;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace gapshift

#endif  // GAPSHIFT_FACTOR_SOURCE_HPP_
