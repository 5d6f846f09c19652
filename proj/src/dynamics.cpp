#include "gapshift/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gapshift/errors.hpp"
#include "gapshift/language.hpp"

namespace gapshift {
namespace {

double pow_neg(double lambda, long long e) {
  long double x = -static_cast<long double>(e) *
                  std::log(static_cast<long double>(lambda));
  return static_cast<double>(std::exp(x));
}

// A uniform draw from B_n(w).  The full shift samples letters directly
// (that IS the uniform law on its k^n words); the other variants have
// small factor sets and draw an index.
Word random_factor(const FactorSource& w, std::size_t n, Rng& rng) {
  if (w.kind() == FactorSource::Kind::FullShift) {
    Word u(n, static_cast<char>(1));
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = static_cast<char>(
          1 + rng.uniform_index(static_cast<std::size_t>(w.alphabet_size())));
    }
    return u;
  }
  const std::vector<Word> words = w.factor_set(n);
  return words[rng.uniform_index(words.size())];
}

// Gap lengths usable when randomly assembling allowed words: elements of
// S small enough to fit and to enumerate factors for.
std::vector<long long> sampling_gap_lengths(const ShiftSpec& spec,
                                            std::size_t max_len) {
  long long cap = static_cast<long long>(max_len) - 1;
  if (spec.gap_set.kind() == GapSet::Kind::Predicate) {
    cap = std::min(cap, spec.gap_set.enumeration_bound());
  }
  std::vector<long long> lengths = spec.gap_set.elements_upto(cap);
  if (lengths.empty()) {
    throw SpecParseError("max_len leaves no room for a single gap block");
  }
  return lengths;
}

// Mean-return-time tail above depth N: an upper bound on
// sum_{n>N} (n+1) phi_w(n) lambda^-(n+1), via phi_w(n) <= C r^(n+1) and
// sum_{m >= M} m r^m = r^M (M(1-r)+r)/(1-r)^2.
double return_time_tail(const ShiftSpec& spec, double lambda, long long N) {
  double c;
  double r;
  switch (spec.factor_source.kind()) {
    case FactorSource::Kind::Periodic:
      c = static_cast<double>(spec.factor_source.minimal_period());
      r = 1.0 / lambda;
      break;
    case FactorSource::Kind::FullShift: {
      double k = static_cast<double>(spec.factor_source.alphabet_size());
      c = 1.0 / k;
      r = k / lambda;
      break;
    }
    case FactorSource::Kind::Substitution: {
      double log_phi = log_big(
          spec.factor_source.complexity(static_cast<std::size_t>(N)));
      double gamma = std::exp(log_phi / static_cast<double>(N)) *
                     (1.0 + 1e-9);
      c = std::exp(log_phi - std::log(gamma));
      r = gamma / lambda;
      break;
    }
    default:
      throw WrongVariant("unreachable factor source kind");
  }
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  const double m0 = static_cast<double>(N + 2);
  return c * std::pow(r, m0) * (m0 * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r)) *
         (1.0 + 1e-9);
}

}  // namespace

MixingVerdict is_mixing(const ShiftSpec& spec, long long probe_bound) {
  MixingVerdict verdict;
  const GapSet& S = spec.gap_set;
  if (S.kind() != GapSet::Kind::Predicate) {
    GapSet::GcdResult res = S.successor_gcd_exact();
    verdict.gcd_witness = res.gcd;
    verdict.certificate = std::move(res.witnesses);
    verdict.status = res.gcd == 1 ? MixingVerdict::Status::Mixing
                                  : MixingVerdict::Status::NotMixing;
    return verdict;
  }

  // Sampled gcd can certify mixing (a sub-gcd of 1 pins the full gcd) but
  // never its absence.
  long long bound =
      std::min(std::max(probe_bound, S.min_element()), S.enumeration_bound());
  long long g = 0;
  for (long long n : S.elements_upto(bound)) {
    long long next = std::gcd(g, n + 1);
    if (next != g) verdict.certificate.push_back(n);
    g = next;
    if (g == 1) break;
  }
  verdict.gcd_witness = g;
  verdict.probe_bound = bound;
  verdict.status = g == 1 ? MixingVerdict::Status::Mixing
                          : MixingVerdict::Status::UnknownUpTo;
  return verdict;
}

std::optional<Word> mixing_gap_witness(const ShiftSpec& spec, const Word& u,
                                       const Word& v, std::size_t n) {
  const Bridge base = bridge(spec, u, v);  // validates u and v

  // Constructive recipe: gamma = t 0 g1 0 g2 ... gr 0 s, where the chain
  // blocks gi 0 use lengths e+1 (e in S) summing to the length left over
  // after the bridge.
  const long long remainder = static_cast<long long>(n) -
                              static_cast<long long>(base.t.size()) -
                              static_cast<long long>(base.s.size()) - 1;
  if (remainder >= 0) {
    std::optional<std::vector<long long>> parts;
    if (remainder == 0) {
      parts.emplace();
    } else {
      long long cap = remainder - 1;
      if (spec.gap_set.kind() == GapSet::Kind::Predicate) {
        cap = std::min(cap, spec.gap_set.enumeration_bound());
      }
      const std::vector<long long> elems = spec.gap_set.elements_upto(cap);
      // Coin-problem table over block sizes e+1.
      std::vector<long long> choice(static_cast<std::size_t>(remainder) + 1,
                                    -1);
      std::vector<char> reach(static_cast<std::size_t>(remainder) + 1, 0);
      reach[0] = 1;
      for (long long r = 1; r <= remainder; ++r) {
        for (long long e : elems) {
          const long long size = e + 1;
          if (size > r) break;
          if (reach[static_cast<std::size_t>(r - size)]) {
            reach[static_cast<std::size_t>(r)] = 1;
            choice[static_cast<std::size_t>(r)] = e;
            break;
          }
        }
      }
      if (reach[static_cast<std::size_t>(remainder)]) {
        parts.emplace();
        for (long long r = remainder; r > 0;) {
          const long long e = choice[static_cast<std::size_t>(r)];
          parts->push_back(e);
          r -= e + 1;
        }
      }
    }
    if (parts) {
      Word gamma = base.t;
      gamma.push_back(0);
      for (long long e : *parts) {
        gamma += spec.factor_source.extend_right(
            Word(), static_cast<std::size_t>(e));
        gamma.push_back(0);
      }
      gamma += base.s;
      if (gamma.size() == n && is_allowed(spec, u + gamma + v)) return gamma;
    }
  }

  // Exhaustive fallback for small word spaces; the recipe can miss
  // witnesses below its constructive threshold.
  constexpr unsigned long long kExhaustiveCap = 400'000;
  const unsigned long long base_size =
      static_cast<unsigned long long>(spec.alphabet_size()) + 1;
  unsigned long long space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (space > kExhaustiveCap / base_size) return std::nullopt;
    space *= base_size;
  }
  Word gamma(n, static_cast<char>(0));
  for (unsigned long long idx = 0; idx < space; ++idx) {
    if (is_allowed(spec, u + gamma + v)) return gamma;
    for (std::size_t pos = n; pos-- > 0;) {
      if (static_cast<unsigned char>(gamma[pos]) <
          static_cast<unsigned>(spec.alphabet_size())) {
        ++gamma[pos];
        break;
      }
      gamma[pos] = 0;
    }
  }
  return std::nullopt;
}

SynchronizationReport verify_synchronization(
    const ShiftSpec& spec, std::uint64_t trials, std::size_t max_len,
    std::uint64_t seed,
    const std::function<bool(const Word&)>& membership_override) {
  if (trials < 1) throw SpecParseError("at least one trial required");
  const std::vector<long long> lengths = sampling_gap_lengths(spec, max_len);
  const auto oracle = [&](const Word& word) {
    return membership_override ? membership_override(word)
                               : is_allowed(spec, word);
  };
  Rng rng(seed);

  // Random word ending in the marker: optional partial head, then one or
  // more full blocks g 0 with |g| in S.
  const auto sample_left = [&]() {
    Word word;
    if (rng.uniform_index(2) == 0) {
      const long long head_len = lengths[rng.uniform_index(lengths.size())];
      if (static_cast<std::size_t>(head_len) + 2 <= max_len) {
        // A prefix of an admissible gap keeps the head legal, but it must
        // be closed off by a marker before any full block follows.
        Word full = random_factor(spec.factor_source,
                                  static_cast<std::size_t>(head_len), rng);
        word = full.substr(0, rng.uniform_index(full.size() + 1));
        word.push_back(0);
      }
    }
    do {
      const long long e = lengths[rng.uniform_index(lengths.size())];
      if (word.size() + static_cast<std::size_t>(e) + 1 > max_len) break;
      word += random_factor(spec.factor_source, static_cast<std::size_t>(e),
                            rng);
      word.push_back(0);
    } while (rng.uniform_index(3) != 0);
    if (word.empty() || word.back() != 0) {
      const long long e = lengths.front();
      word.clear();
      word = random_factor(spec.factor_source, static_cast<std::size_t>(e),
                           rng);
      word.push_back(0);
    }
    return word;
  };
  const auto sample_right = [&]() {
    Word word(1, static_cast<char>(0));
    while (rng.uniform_index(3) != 0) {
      const long long e = lengths[rng.uniform_index(lengths.size())];
      if (word.size() + static_cast<std::size_t>(e) + 1 > max_len) break;
      word += random_factor(spec.factor_source, static_cast<std::size_t>(e),
                            rng);
      word.push_back(0);
    }
    const long long tail_len = lengths[rng.uniform_index(lengths.size())];
    if (word.size() + static_cast<std::size_t>(tail_len) <= max_len) {
      Word full = random_factor(spec.factor_source,
                                static_cast<std::size_t>(tail_len), rng);
      word += full.substr(0, rng.uniform_index(full.size() + 1));
    }
    return word;
  };

  SynchronizationReport report;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Word left = sample_left();   // ends in 0
    const Word right = sample_right();  // starts with 0
    Word joined = left + right.substr(1);
    ++report.trials;
    if (!oracle(joined)) {
      throw SynchronizationViolation(format_word(left), format_word(right),
                                     format_word(joined));
    }
    ++report.passes;
  }
  return report;
}

GapDistribution gap_distribution(const ShiftSpec& spec,
                                 const EntropyResult& entropy,
                                 double mass_tol) {
  if (!(mass_tol > 0.0) || mass_tol >= 0.1) {
    throw SpecParseError("mass tolerance must lie in (0, 0.1)");
  }
  GapDistribution dist;
  dist.lambda = entropy.lambda.mid();

  const bool finite = spec.gap_set.certainly_finite();
  const long long stop =
      finite ? *spec.gap_set.max_element()
             : std::max<long long>(4096, 64 * entropy.lambda.truncation_depth);
  double mass = 0.0;
  double mean_return = 0.0;
  long long deepest = 0;
  for (long long n = 0;; ++n) {
    if (!finite && 1.0 - mass < mass_tol) break;
    if (n > stop) {
      if (finite) break;
      throw DepthExhausted(
          "gap law mass target unreachable at the depth cap");
    }
    if (spec.gap_set.kind() == GapSet::Kind::Predicate &&
        n > spec.gap_set.enumeration_bound()) {
      throw DepthExhausted("gap law needs elements past the predicate bound");
    }
    if (!spec.gap_set.contains(n)) continue;
    BigInt phi = spec.factor_source.complexity(static_cast<std::size_t>(n));
    double p;
    if (phi < (BigInt(1) << 53)) {
      p = phi.convert_to<double>() * pow_neg(dist.lambda, n + 1);
    } else {
      p = std::exp(log_big(phi) -
                   static_cast<double>(n + 1) * std::log(dist.lambda));
    }
    dist.entries.push_back({n, p});
    mass += p;
    mean_return += static_cast<double>(n + 1) * p;
    deepest = n;
  }
  dist.truncation_mass = std::max(0.0, 1.0 - mass);

  // Kac: marker frequency is the reciprocal mean return time.  The
  // truncated tail of the mean contributes at most return_time_tail; use
  // its midpoint so the reported value sits inside the bracket.
  if (!finite) {
    const double tail = return_time_tail(spec, dist.lambda, deepest);
    if (std::isfinite(tail)) mean_return += 0.5 * tail;
  }
  dist.zero_frequency = 1.0 / mean_return;
  return dist;
}

Word sample_mme(const ShiftSpec& spec, const GapDistribution& distribution,
                std::size_t length, std::uint64_t seed) {
  if (length < 1) throw SpecParseError("sample length must be positive");
  if (distribution.entries.empty()) {
    throw Error("gap distribution carries no entries");
  }
  std::vector<double> weights;
  weights.reserve(distribution.entries.size());
  for (const auto& e : distribution.entries) weights.push_back(e.probability);

  Rng rng(seed);
  Word out;
  out.reserve(length);
  while (out.size() < length) {
    const auto& entry = distribution.entries[rng.weighted_index(weights)];
    const Word u = random_factor(spec.factor_source,
                                 static_cast<std::size_t>(entry.n), rng);
    const std::size_t room = length - out.size();
    if (u.size() >= room) {
      out += u.substr(0, room);  // a prefix of a gap stays admissible
      break;
    }
    out += u;
    out.push_back(0);
  }
  return out;
}

bool finite_S_zero_bound_check(const ShiftSpec& spec) {
  if (!spec.gap_set.certainly_finite()) {
    throw WrongVariant("the marker-frequency bound applies to finite S only");
  }
  EntropyResult entropy = solve_entropy(spec);
  GapDistribution dist = gap_distribution(spec, entropy);
  const double bound =
      1.0 / (1.0 + static_cast<double>(*spec.gap_set.max_element()));
  return dist.zero_frequency >= bound * (1.0 - 1e-12);
}

}  // namespace gapshift
