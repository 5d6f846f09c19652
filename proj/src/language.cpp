#include "gapshift/language.hpp"

#include <algorithm>
#include <cmath>

#include "gapshift/errors.hpp"

namespace gapshift {
namespace {

bool symbols_in_range(const Word& b, int k) {
  for (unsigned char c : b) {
    if (c > static_cast<unsigned>(k)) return false;
  }
  return true;
}

// Zero-free boundary piece of an allowed word: must be a factor of w with
// some element of S at least as long.
bool boundary_ok(const ShiftSpec& spec, const Word& piece) {
  return spec.factor_source.contains_factor(piece) &&
         spec.gap_set.admits_gap_at_least(static_cast<long long>(piece.size()));
}

// g(l) = phi_w(l) when l is in S, else 0: the number of admissible internal
// gaps of length l.
std::vector<BigInt> internal_weights(const ShiftSpec& spec, std::size_t n) {
  std::vector<BigInt> g(n + 1, BigInt(0));
  for (std::size_t l = 0; l <= n; ++l) {
    if (spec.gap_set.contains(static_cast<long long>(l))) {
      g[l] = spec.factor_source.complexity(l);
    }
  }
  return g;
}

// h(l) = phi_w(l) when some element of S is >= l, else 0: the number of
// admissible boundary pieces of length l.
std::vector<BigInt> boundary_weights(const ShiftSpec& spec, std::size_t n) {
  std::vector<BigInt> h(n + 1, BigInt(0));
  for (std::size_t l = 0; l <= n; ++l) {
    if (spec.gap_set.admits_gap_at_least(static_cast<long long>(l))) {
      h[l] = spec.factor_source.complexity(l);
    }
  }
  return h;
}

// C(m) = number of words of length m of the form 0.g1.0.g2...0.gr (each
// chain link a marker followed by an admissible gap), C(0) = 1.
std::vector<BigInt> chain_counts(const std::vector<BigInt>& g, std::size_t n) {
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t l = 0; l + 1 <= m; ++l) {
      if (g[l] != 0) c[m] += g[l] * c[m - l - 1];
    }
  }
  return c;
}

void dfs_enumerate(const ShiftSpec& spec, std::size_t n, Word& prefix,
                   std::vector<Word>& out) {
  if (prefix.size() == n) {
    out.push_back(prefix);
    return;
  }
  for (int a = 0; a <= spec.alphabet_size(); ++a) {
    prefix.push_back(static_cast<char>(a));
    // Prefixes of allowed words are allowed (the language is factorial),
    // so pruning on the prefix loses nothing.
    if (is_allowed(spec, prefix)) dfs_enumerate(spec, n, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Word GapDecomposition::reassemble() const {
  if (zero_count == 0) return head;
  Word out = head;
  out.push_back(0);
  for (const Word& gap : internal_gaps) {
    out += gap;
    out.push_back(0);
  }
  out += tail;
  return out;
}

bool is_allowed(const ShiftSpec& spec, const Word& b) {
  if (!symbols_in_range(b, spec.alphabet_size())) return false;
  std::vector<Word> pieces = split_at_zeros(b);
  if (pieces.size() == 1) return boundary_ok(spec, b);
  if (!boundary_ok(spec, pieces.front()) || !boundary_ok(spec, pieces.back())) {
    return false;
  }
  for (std::size_t i = 1; i + 1 < pieces.size(); ++i) {
    if (!spec.gap_set.contains(static_cast<long long>(pieces[i].size()))) {
      return false;
    }
    if (!spec.factor_source.contains_factor(pieces[i])) return false;
  }
  return true;
}

std::vector<Word> enumerate_words(const ShiftSpec& spec, std::size_t n,
                                  unsigned long long budget) {
  unsigned long long total = 1;
  const unsigned long long base =
      static_cast<unsigned long long>(spec.alphabet_size()) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / base) {
      throw BudgetExceeded("enumerating length " + std::to_string(n) +
                           " exceeds the word budget of " +
                           std::to_string(budget));
    }
    total *= base;
  }
  std::vector<Word> out;
  Word prefix;
  dfs_enumerate(spec, n, prefix, out);
  return out;
}

BigInt count_words(const ShiftSpec& spec, std::size_t n) {
  const std::vector<BigInt> g = internal_weights(spec, n);
  const std::vector<BigInt> h = boundary_weights(spec, n);
  const std::vector<BigInt> c = chain_counts(g, n);

  // r(m) = sum_j c(m - j) h(j): chains closed off on the right by a
  // boundary piece.
  std::vector<BigInt> r(n + 1, BigInt(0));
  for (std::size_t m = 0; m <= n; ++m) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (h[j] != 0) r[m] += c[m - j] * h[j];
    }
  }

  // Words with no marker, plus words head.0.(chain).tail over every split.
  BigInt total = h[n];
  for (std::size_t i = 0; i + 1 <= n; ++i) {
    if (h[i] != 0) total += h[i] * r[n - i - 1];
  }
  return total;
}

BigInt count_exact_concatenations(const ShiftSpec& spec, std::size_t n,
                                  std::size_t j) {
  // Distinct generator tuples produce distinct words (each generator
  // carries its single marker at its end), so counting tuples by length
  // convolution counts words.
  std::vector<BigInt> gen(n + 1, BigInt(0));
  for (std::size_t m = 1; m <= n; ++m) {
    if (spec.gap_set.contains(static_cast<long long>(m) - 1)) {
      gen[m] = spec.factor_source.complexity(m - 1);
    }
  }
  std::vector<BigInt> cur(n + 1, BigInt(0));
  cur[0] = 1;
  for (std::size_t round = 0; round < j; ++round) {
    std::vector<BigInt> next(n + 1, BigInt(0));
    for (std::size_t len = 0; len <= n; ++len) {
      if (cur[len] == 0) continue;
      for (std::size_t m = 1; len + m <= n; ++m) {
        if (gen[m] != 0) next[len + m] += cur[len] * gen[m];
      }
    }
    cur = std::move(next);
  }
  return cur[n];
}

GapDecomposition decompose(const ShiftSpec& spec, const Word& b) {
  if (!is_allowed(spec, b)) {
    throw NotInLanguage("'" + format_word(b) + "' is not in the language");
  }
  std::vector<Word> pieces = split_at_zeros(b);
  GapDecomposition d;
  d.head = pieces.front();
  if (pieces.size() > 1) {
    d.tail = pieces.back();
    d.internal_gaps.assign(pieces.begin() + 1, pieces.end() - 1);
    d.zero_count = pieces.size() - 1;
  }
  return d;
}

Bridge bridge(const ShiftSpec& spec, const Word& u, const Word& v) {
  if (!is_allowed(spec, u)) {
    throw NotInLanguage("bridge source '" + format_word(u) + "' not allowed");
  }
  if (!is_allowed(spec, v)) {
    throw NotInLanguage("bridge target '" + format_word(v) + "' not allowed");
  }
  const FactorSource& w = spec.factor_source;

  Bridge out;
  // Close off u: its zero-free suffix must become a full gap with length
  // in S.  A suffix length already in S needs nothing; otherwise extend
  // right to the least admissible length (membership of u guarantees one
  // exists for finite S).
  Word suffix = split_at_zeros(u).back();
  if (!spec.gap_set.contains(static_cast<long long>(suffix.size()))) {
    auto target = spec.gap_set.least_geq(static_cast<long long>(suffix.size()));
    if (!target) {
      throw NotInLanguage("no admissible gap length completes the bridge");
    }
    Word extended = w.extend_right(suffix, static_cast<std::size_t>(*target));
    out.t = extended.substr(suffix.size());
  }
  // Open v: symmetric, extending its zero-free prefix to the left.
  Word prefix = split_at_zeros(v).front();
  if (!spec.gap_set.contains(static_cast<long long>(prefix.size()))) {
    auto target = spec.gap_set.least_geq(static_cast<long long>(prefix.size()));
    if (!target) {
      throw NotInLanguage("no admissible gap length completes the bridge");
    }
    Word extended = w.extend_left(prefix, static_cast<std::size_t>(*target));
    out.s = extended.substr(0, extended.size() - prefix.size());
  }

  Word joined = u + out.t;
  joined.push_back(0);
  joined += out.s + v;
  if (!is_allowed(spec, joined)) {
    throw NotInLanguage("bridge verification failed for '" +
                        format_word(joined) + "'");
  }
  return out;
}

std::vector<GeneratorWord> generators_upto(const ShiftSpec& spec,
                                           std::size_t max_len) {
  std::vector<GeneratorWord> out;
  if (max_len == 0) return out;
  for (long long l :
       spec.gap_set.elements_upto(static_cast<long long>(max_len) - 1)) {
    for (const Word& u :
         spec.factor_source.factor_set(static_cast<std::size_t>(l))) {
      GeneratorWord gen;
      gen.content = u;
      gen.content.push_back(0);
      out.push_back(std::move(gen));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GeneratorWord& a, const GeneratorWord& b) {
              return a.content < b.content;
            });
  return out;
}

}  // namespace gapshift
