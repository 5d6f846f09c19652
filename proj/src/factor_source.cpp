#include "gapshift/factor_source.hpp"

#include <algorithm>
#include <bitset>
#include <set>
#include <string>

#include "gapshift/errors.hpp"

namespace gapshift {
namespace {

constexpr std::size_t kFullShiftWordCap = 1u << 21;
constexpr std::size_t kIterateLengthCap = std::size_t{1} << 23;
constexpr int kIterationCap = 64;

void check_alphabet_size(int k) {
  if (k < 1 || k > static_cast<int>(kMaxAlphabet)) {
    throw SpecParseError("alphabet size " + std::to_string(k) +
                         " out of range 1.." + std::to_string(kMaxAlphabet));
  }
}

bool letters_in_range(const Word& word, int k) {
  for (unsigned char c : word) {
    if (c < 1 || c > static_cast<unsigned>(k)) return false;
  }
  return true;
}

// Distinct length-n windows of the periodic sequence u^inf, i.e. windows of
// u repeated enough times that every cyclic start position is covered.
std::vector<Word> periodic_windows(const Word& u, std::size_t n) {
  if (n == 0) return {Word()};
  const std::size_t p = u.size();
  Word rep;
  rep.reserve(p + n);
  while (rep.size() < p + n - 1) rep += u;
  std::set<Word> seen;
  for (std::size_t i = 0; i < p; ++i) seen.insert(rep.substr(i, n));
  return {seen.begin(), seen.end()};
}

std::vector<Word> harvest_windows(const Word& x, std::size_t n) {
  std::set<Word> seen;
  if (n == 0) {
    seen.insert(Word());
  } else if (x.size() >= n) {
    for (std::size_t i = 0; i + n <= x.size(); ++i) seen.insert(x.substr(i, n));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

FactorSource FactorSource::periodic(Word word, int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (word.empty()) throw SpecParseError("periodic word must be non-empty");
  if (!letters_in_range(word, alphabet_size)) {
    throw SpecParseError("periodic word uses letters outside 1..k");
  }
  // Minimal period: smallest divisor d of |word| with word = prefix(d)^rep.
  std::size_t p = word.size();
  for (std::size_t d = 1; d <= word.size() / 2; ++d) {
    if (word.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < word.size() && repeats; ++i) {
      repeats = word[i] == word[i - d];
    }
    if (repeats) {
      p = d;
      break;
    }
  }
  FactorSource w;
  w.kind_ = Kind::Periodic;
  w.alphabet_size_ = alphabet_size;
  w.period_word_ = word.substr(0, p);
  return w;
}

FactorSource FactorSource::substitution(std::map<Symbol, Word> rules,
                                        Symbol seed, bool primitive,
                                        int alphabet_size) {
  check_alphabet_size(alphabet_size);
  const int k = alphabet_size;
  if (static_cast<int>(rules.size()) != k) {
    throw SpecParseError("substitution must define exactly one rule per letter 1..k");
  }
  std::size_t max_image = 0;
  for (const auto& [letter, image] : rules) {
    if (letter < 1 || letter > static_cast<unsigned>(k)) {
      throw SpecParseError("substitution rule for letter outside 1..k");
    }
    if (image.empty()) {
      throw SpecParseError("substitution image must be non-empty");
    }
    if (!letters_in_range(image, k)) {
      throw SpecParseError("substitution image uses letters outside 1..k");
    }
    max_image = std::max(max_image, image.size());
  }
  if (max_image < 2) {
    throw SpecParseError("substitution must have at least one expanding rule");
  }
  if (seed < 1 || seed > static_cast<unsigned>(k)) {
    throw SpecParseError("substitution seed outside 1..k");
  }

  FactorSource w;
  w.kind_ = Kind::Substitution;
  w.alphabet_size_ = k;
  w.rules_ = std::move(rules);
  w.seed_ = seed;

  if (primitive) {
    // Letter-reachability: boolean incidence matrix M, M[a][b] = 1 iff b
    // appears in the image of a.  Primitive iff some power of M is
    // all-positive; once one power is, every later power stays positive,
    // so checking repeated squares up to the (k-1)^2 + 1 bound suffices.
    std::vector<std::bitset<kMaxAlphabet>> m(k);
    for (int a = 1; a <= k; ++a) {
      for (unsigned char b : w.rules_.at(static_cast<Symbol>(a))) {
        m[a - 1].set(b - 1);
      }
    }
    std::bitset<kMaxAlphabet> full;
    for (int a = 0; a < k; ++a) full.set(a);
    const long long bound = static_cast<long long>(k - 1) * (k - 1) + 1;
    long long exponent = 1;
    auto all_positive = [&](const std::vector<std::bitset<kMaxAlphabet>>& mat) {
      return std::all_of(mat.begin(), mat.end(),
                         [&](const auto& row) { return row == full; });
    };
    auto square = [&](const std::vector<std::bitset<kMaxAlphabet>>& mat) {
      std::vector<std::bitset<kMaxAlphabet>> out(k);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (mat[a].test(b)) out[a] |= mat[b];
        }
      }
      return out;
    };
    while (!all_positive(m) && exponent < bound) {
      m = square(m);
      exponent *= 2;
    }
    if (!all_positive(m)) {
      throw NotPrimitive("substitution incidence structure is not primitive");
    }
    w.primitivity_verified_ = true;
    w.primitivity_exponent_ = static_cast<int>(exponent);
  }
  return w;
}

FactorSource FactorSource::full_shift(int alphabet_size) {
  check_alphabet_size(alphabet_size);
  FactorSource w;
  w.kind_ = Kind::FullShift;
  w.alphabet_size_ = alphabet_size;
  return w;
}

std::size_t FactorSource::minimal_period() const {
  if (kind_ != Kind::Periodic) {
    throw WrongVariant("minimal_period is defined for periodic sources only");
  }
  return period_word_.size();
}

const Word& FactorSource::period_word() const {
  if (kind_ != Kind::Periodic) {
    throw WrongVariant("period_word is defined for periodic sources only");
  }
  return period_word_;
}

Word FactorSource::apply_rules(const Word& x) const {
  Word out;
  for (unsigned char a : x) out += rules_.at(static_cast<Symbol>(a));
  return out;
}

std::vector<Word> FactorSource::substitution_factors(std::size_t n) const {
  if (!primitivity_verified_) {
    throw NotPrimitive(
        "factor queries need a verified-primitive substitution");
  }
  // Iterate the substitution on the seed until the length-n factor set is
  // stable across one further iteration and the iterate is long enough
  // that stability is meaningful.
  const Word seed_word(1, static_cast<char>(seed_));
  const std::size_t min_len =
      std::max(2 * n, apply_rules(apply_rules(seed_word)).size());
  Word cur = seed_word;
  std::vector<Word> cur_factors = harvest_windows(cur, n);
  for (int iter = 0; iter < kIterationCap; ++iter) {
    Word next = apply_rules(cur);
    if (next.size() > kIterateLengthCap) {
      throw BudgetExceeded("substitution iterate grew past the length cap");
    }
    std::vector<Word> next_factors = harvest_windows(next, n);
    if (next_factors == cur_factors && next.size() >= min_len) {
      return next_factors;
    }
    cur = std::move(next);
    cur_factors = std::move(next_factors);
  }
  throw BudgetExceeded("substitution factor set failed to stabilize");
}

std::vector<Word> FactorSource::compute_factor_set(std::size_t n) const {
  switch (kind_) {
    case Kind::Periodic:
      return periodic_windows(period_word_, n);
    case Kind::FullShift: {
      const std::size_t k = static_cast<std::size_t>(alphabet_size_);
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (total > kFullShiftWordCap / k) {
          throw BudgetExceeded("full-shift factor set of length " +
                               std::to_string(n) + " is too large to list");
        }
        total *= k;
      }
      std::vector<Word> out;
      out.reserve(total);
      Word cur(n, static_cast<char>(1));
      for (std::size_t idx = 0; idx < total; ++idx) {
        out.push_back(cur);
        for (std::size_t pos = n; pos-- > 0;) {
          if (static_cast<unsigned char>(cur[pos]) < k) {
            ++cur[pos];
            break;
          }
          cur[pos] = static_cast<char>(1);
        }
      }
      return out;
    }
    case Kind::Substitution:
      return substitution_factors(n);
  }
  throw WrongVariant("unreachable factor source kind");
}

std::vector<Word> FactorSource::factor_set(std::size_t n) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->factor_sets.find(n);
    if (it != cache_->factor_sets.end()) return it->second;
  }
  std::vector<Word> computed = compute_factor_set(n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->factor_sets.emplace(n, std::move(computed)).first->second;
}

BigInt FactorSource::complexity(std::size_t n) const {
  if (n == 0) return 1;
  switch (kind_) {
    case Kind::Periodic: {
      const std::size_t p = period_word_.size();
      if (n >= p - 1) return BigInt(p);
      return BigInt(periodic_windows(period_word_, n).size());
    }
    case Kind::FullShift: {
      BigInt result = 1;
      for (std::size_t i = 0; i < n; ++i) result *= alphabet_size_;
      return result;
    }
    case Kind::Substitution:
      return BigInt(factor_set(n).size());
  }
  throw WrongVariant("unreachable factor source kind");
}

bool FactorSource::contains_factor(const Word& f) const {
  if (!letters_in_range(f, alphabet_size_)) return false;
  if (f.empty()) return true;
  switch (kind_) {
    case Kind::Periodic: {
      const std::size_t p = period_word_.size();
      Word rep;
      rep.reserve(p + f.size());
      while (rep.size() < p + f.size() - 1) rep += period_word_;
      return rep.find(f) != Word::npos;
    }
    case Kind::FullShift:
      return true;
    case Kind::Substitution: {
      std::vector<Word> words = factor_set(f.size());
      return std::binary_search(words.begin(), words.end(), f);
    }
  }
  return false;
}

Word FactorSource::extend_right(const Word& f, std::size_t target_len) const {
  if (!contains_factor(f)) {
    throw NotAFactor("cannot extend a non-factor");
  }
  if (target_len < f.size()) {
    throw SpecParseError("extension target shorter than the word");
  }
  // Any factor of a bi-infinite sequence extends on the right, so the
  // greedy least-letter step never dead-ends, and stepwise-least equals
  // lexicographically-least overall.
  Word g = f;
  while (g.size() < target_len) {
    bool extended = false;
    for (int a = 1; a <= alphabet_size_ && !extended; ++a) {
      g.push_back(static_cast<char>(a));
      if (contains_factor(g)) {
        extended = true;
      } else {
        g.pop_back();
      }
    }
    if (!extended) {
      throw NotAFactor("no right extension found; factor source inconsistent");
    }
  }
  return g;
}

Word FactorSource::extend_left(const Word& f, std::size_t target_len) const {
  if (!contains_factor(f)) {
    throw NotAFactor("cannot extend a non-factor");
  }
  if (target_len < f.size()) {
    throw SpecParseError("extension target shorter than the word");
  }
  Word g = f;
  while (g.size() < target_len) {
    bool extended = false;
    for (int a = 1; a <= alphabet_size_ && !extended; ++a) {
      g.insert(g.begin(), static_cast<char>(a));
      if (contains_factor(g)) {
        extended = true;
      } else {
        g.erase(g.begin());
      }
    }
    if (!extended) {
      throw NotAFactor("no left extension found; factor source inconsistent");
    }
  }
  return g;
}

}  // namespace gapshift
