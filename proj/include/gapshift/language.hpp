#ifndef GAPSHIFT_LANGUAGE_HPP_
#define GAPSHIFT_LANGUAGE_HPP_

#include <cstddef>
#include <vector>

#include "gapshift/shift_spec.hpp"
#include "gapshift/word.hpp"

namespace gapshift {

// The split of an allowed word at its 0 markers.  With no marker present
// the whole word is the head and zero_count is 0; otherwise zero_count is
// 1 + |internal_gaps| and reassemble() interleaves the markers back.
struct GapDecomposition {
  Word head;
  std::vector<Word> internal_gaps;
  Word tail;
  std::size_t zero_count = 0;

  Word reassemble() const;
};

// A generator of the coded system: u followed by the marker, where u is a
// factor of w with |u| in S.
struct GeneratorWord {
  Word content;  // u plus a trailing 0
};

// Default cap on (k+1)^n for exhaustive enumeration.
inline constexpr unsigned long long kDefaultEnumerationBudget = 5'000'000ULL;

// Whether b lies in the language of X_w(S), decided by the head /
// internal-gap / tail characterization: internal gaps must be factors of w
// with lengths in S; the zero-free head and tail must be factors of w
// whose lengths do not exceed some element of S.  Propagates
// QueryBeyondBound from predicate gap sets.
bool is_allowed(const ShiftSpec& spec, const Word& b);

// All allowed words of length n, sorted.  Throws BudgetExceeded when
// (k+1)^n exceeds the budget.
std::vector<Word> enumerate_words(const ShiftSpec& spec, std::size_t n,
                                  unsigned long long budget = kDefaultEnumerationBudget);

// |B_n(X_w(S))| by convolution dynamic programming over gap-length
// weights, with exact integer arithmetic; never enumerates.
BigInt count_words(const ShiftSpec& spec, std::size_t n);

// |A_n^j|: the number of length-n words that are concatenations of exactly
// j generator words u0.  j = 0 counts only the empty word.
BigInt count_exact_concatenations(const ShiftSpec& spec, std::size_t n,
                                  std::size_t j);

// Splits an allowed word at its 0 markers.  Throws NotInLanguage if b
// fails membership.
GapDecomposition decompose(const ShiftSpec& spec, const Word& b);

// Joining words: returns (t, s) such that u.t.0.s.v is allowed, built by
// completing u's zero-free suffix to a factor whose length lies in S (and
// symmetrically v's prefix with a left extension).  The result is checked
// against is_allowed before returning.  Throws NotInLanguage if u or v
// fail membership.
struct Bridge {
  Word t;
  Word s;
};
Bridge bridge(const ShiftSpec& spec, const Word& u, const Word& v);

// All generator words with |content| <= max_len, sorted by content.
std::vector<GeneratorWord> generators_upto(const ShiftSpec& spec,
                                           std::size_t max_len);

}  // namespace gapshift

#endif  // GAPSHIFT_LANGUAGE_HPP_
