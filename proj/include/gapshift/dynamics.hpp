#ifndef GAPSHIFT_DYNAMICS_HPP_
#define GAPSHIFT_DYNAMICS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gapshift/entropy.hpp"
#include "gapshift/rng.hpp"
#include "gapshift/shift_spec.hpp"

namespace gapshift {

// Outcome of the gcd criterion on { n+1 : n in S }.  NotMixing is only
// ever certified for structured gap sets, where the gcd is computed in
// closed form over the whole set; predicate sets can reach Mixing (the
// running gcd hit 1) or UnknownUpTo(bound).
struct MixingVerdict {
  enum class Status { Mixing, NotMixing, UnknownUpTo };
  Status status = Status::UnknownUpTo;
  long long gcd_witness = 0;
  std::vector<long long> certificate;  // elements of S the gcd used
  long long probe_bound = 0;           // meaningful for UnknownUpTo
};

MixingVerdict is_mixing(const ShiftSpec& spec, long long probe_bound = 256);

// A length-n middle word gamma with u.gamma.v allowed, built from the
// constructive recipe: bridge both sides, then fill the remaining length
// with a chain 0 g1 0 g2 ... 0 whose block lengths n_i + 1 decompose the
// remainder.  When the recipe finds no decomposition and the word space is
// small enough, falls back to exhaustive search; returns nullopt when both
// fail (legitimate for short n below the constructive threshold, and for
// all n of the wrong residue when the shift is not mixing).
std::optional<Word> mixing_gap_witness(const ShiftSpec& spec, const Word& u,
                                       const Word& v, std::size_t n);

// Randomized check that 0 synchronizes: samples allowed words u0 and 0v
// and asserts the splice u0v is allowed.  Any failure throws
// SynchronizationViolation with the counterexample triple.  The
// membership override exists for negative-control tests that inject a
// corrupted oracle.
struct SynchronizationReport {
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
};
SynchronizationReport verify_synchronization(
    const ShiftSpec& spec, std::uint64_t trials, std::size_t max_len,
    std::uint64_t seed,
    const std::function<bool(const Word&)>& membership_override = {});

// The maximal-measure gap process: gap length n is drawn with probability
// p_n = phi_w(n) lambda^-(n+1), truncated once the missing mass drops
// below mass_tol.  zero_frequency is the marker frequency derived from
// the mean return time 1 / sum (n+1) p_n.
struct GapDistribution {
  struct Entry {
    long long n = 0;
    double probability = 0.0;
  };
  std::vector<Entry> entries;
  double truncation_mass = 0.0;
  double lambda = 1.0;
  double zero_frequency = 1.0;
};

GapDistribution gap_distribution(const ShiftSpec& spec,
                                 const EntropyResult& entropy,
                                 double mass_tol = 1e-9);

// Emits `length` symbols of the gap process: repeatedly draws a gap
// length from the (renormalized) law, a factor of w of that length
// uniformly, writes it followed by the marker, and truncates at `length`.
// The output always passes is_allowed.
Word sample_mme(const ShiftSpec& spec, const GapDistribution& distribution,
                std::size_t length, std::uint64_t seed);

// For finite S: checks the marker-frequency lower bound
// zero_frequency >= 1/(1 + max S).  Throws WrongVariant when S is not
// certainly finite.
bool finite_S_zero_bound_check(const ShiftSpec& spec);

}  // namespace gapshift

#endif  // GAPSHIFT_DYNAMICS_HPP_
