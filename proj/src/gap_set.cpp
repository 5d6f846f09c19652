#include "gapshift/gap_set.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gapshift/errors.hpp"

namespace gapshift {

namespace {

constexpr long long kMaxModulus = 1'000'000;

void check_non_negative(long long n, const char* what) {
  if (n < 0) throw SpecParseError(std::string(what) + " must be non-negative");
}

}  // namespace

GapSet GapSet::finite(std::vector<long long> elements) {
  if (elements.empty()) throw SpecParseError("gap set must be non-empty");
  for (long long e : elements) check_non_negative(e, "gap set element");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

  GapSet s;
  s.kind_ = Kind::Finite;
  s.pre_period_ = std::move(elements);
  s.min_element_ = s.pre_period_.front();
  s.name_ = "finite";
  return s;
}

GapSet GapSet::eventually_periodic(std::vector<long long> sporadic,
                                   std::vector<Progression> progressions) {
  if (progressions.empty()) return finite(std::move(sporadic));

  for (long long e : sporadic) check_non_negative(e, "sporadic element");
  long long modulus = 1;
  long long max_start = 0;
  for (const Progression& p : progressions) {
    check_non_negative(p.start, "progression start");
    if (p.step < 1) throw SpecParseError("progression step must be >= 1");
    modulus = std::lcm(modulus, p.step);
    if (modulus > kMaxModulus) {
      throw SpecParseError("lcm of progression steps exceeds " +
                           std::to_string(kMaxModulus));
    }
    max_start = std::max(max_start, p.start);
  }
  long long max_sporadic =
      sporadic.empty() ? -1
                       : *std::max_element(sporadic.begin(), sporadic.end());
  const long long threshold = std::max(max_start, max_sporadic + 1);

  // Everything below the threshold becomes explicit; at and above it each
  // progression contributes one residue class mod the common modulus.
  auto raw_contains = [&](long long n) {
    if (std::find(sporadic.begin(), sporadic.end(), n) != sporadic.end())
      return true;
    for (const Progression& p : progressions) {
      if (n >= p.start && (n - p.start) % p.step == 0) return true;
    }
    return false;
  };

  GapSet s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.name_ = "eventually-periodic";
  s.threshold_ = threshold;
  s.modulus_ = modulus;
  for (long long n = 0; n < threshold; ++n) {
    if (raw_contains(n)) s.pre_period_.push_back(n);
  }
  std::set<long long> firsts;
  for (const Progression& p : progressions) {
    // First element of this progression at or past the threshold; its
    // residue class mod `modulus` is wholly contained in the set.
    long long first = p.start;
    if (first < threshold) {
      first += ((threshold - p.start + p.step - 1) / p.step) * p.step;
    }
    // One first per residue class mod the lcm; all land in [threshold,
    // threshold + modulus), so equal classes from different progressions
    // produce the same value and the set dedups them.
    for (long long f = first; f < first + modulus; f += p.step) {
      firsts.insert(f);
    }
  }
  // Pull the threshold down to the least T at which membership agrees with
  // the residue classes; without this, round-tripping a multi-class set
  // through its serialized form would shift the threshold up every time.
  std::set<long long> residues;
  for (long long f : firsts) residues.insert(f % modulus);
  long long minimal = threshold;
  while (minimal > 0 &&
         raw_contains(minimal - 1) == (residues.count((minimal - 1) % modulus) > 0)) {
    --minimal;
  }
  s.threshold_ = minimal;
  s.pre_period_.erase(
      std::remove_if(s.pre_period_.begin(), s.pre_period_.end(),
                     [&](long long e) { return e >= minimal; }),
      s.pre_period_.end());
  s.residue_firsts_.clear();
  for (long long r : residues) {
    s.residue_firsts_.push_back(minimal + ((r - minimal) % modulus + modulus) % modulus);
  }
  std::sort(s.residue_firsts_.begin(), s.residue_firsts_.end());

  s.min_element_ = s.pre_period_.empty() ? s.residue_firsts_.front()
                                         : s.pre_period_.front();
  return s;
}

GapSet GapSet::predicate(std::function<bool(long long)> membership,
                         long long enumeration_bound, std::string name,
                         bool declared_infinite) {
  if (!membership) throw SpecParseError("predicate gap set needs a membership function");
  if (enumeration_bound < 1) {
    throw SpecParseError("enumeration bound must be positive");
  }
  GapSet s;
  s.kind_ = Kind::Predicate;
  s.membership_ = std::move(membership);
  s.enumeration_bound_ = enumeration_bound;
  s.name_ = std::move(name);
  s.declared_infinite_ = declared_infinite;

  bool found = false;
  for (long long n = 0; n <= enumeration_bound; ++n) {
    if (s.membership_(n)) {
      s.min_element_ = n;
      found = true;
      break;
    }
  }
  if (!found) {
    throw SpecParseError("predicate gap set '" + s.name_ +
                         "' has no element within its enumeration bound");
  }
  return s;
}

bool GapSet::contains(long long n) const {
  if (n < 0) return false;
  switch (kind_) {
    case Kind::Finite:
      return std::binary_search(pre_period_.begin(), pre_period_.end(), n);
    case Kind::EventuallyPeriodic:
      if (n < threshold_) {
        return std::binary_search(pre_period_.begin(), pre_period_.end(), n);
      }
      for (long long f : residue_firsts_) {
        if (n >= f && (n - f) % modulus_ == 0) return true;
      }
      return false;
    case Kind::Predicate:
      if (n > enumeration_bound_) throw QueryBeyondBound(n, enumeration_bound_);
      return membership_(n);
  }
  return false;
}

std::vector<long long> GapSet::elements_upto(long long N) const {
  std::vector<long long> out;
  if (N < 0) return out;
  switch (kind_) {
    case Kind::Finite:
      for (long long e : pre_period_) {
        if (e <= N) out.push_back(e);
      }
      return out;
    case Kind::EventuallyPeriodic: {
      for (long long e : pre_period_) {
        if (e <= N) out.push_back(e);
      }
      for (long long f : residue_firsts_) {
        for (long long n = f; n <= N; n += modulus_) out.push_back(n);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case Kind::Predicate: {
      if (N > enumeration_bound_) throw QueryBeyondBound(N, enumeration_bound_);
      for (long long n = 0; n <= N; ++n) {
        if (membership_(n)) out.push_back(n);
      }
      return out;
    }
  }
  return out;
}

bool GapSet::certainly_finite() const { return kind_ == Kind::Finite; }

bool GapSet::certainly_infinite() const {
  switch (kind_) {
    case Kind::Finite:
      return false;
    case Kind::EventuallyPeriodic:
      return true;  // construction collapses progression-free input to Finite
    case Kind::Predicate:
      return declared_infinite_;
  }
  return false;
}

std::optional<long long> GapSet::max_element() const {
  if (!certainly_finite()) return std::nullopt;
  return pre_period_.back();
}

bool GapSet::admits_gap_at_least(long long len) const {
  if (certainly_infinite()) return true;
  if (certainly_finite()) return len <= pre_period_.back();
  // Undeclared predicate: search within the bound, refuse to certify
  // absence beyond it.
  for (long long n = std::max(len, 0LL); n <= enumeration_bound_; ++n) {
    if (membership_(n)) return true;
  }
  throw QueryBeyondBound(len, enumeration_bound_);
}

std::optional<long long> GapSet::least_geq(long long len) const {
  len = std::max(len, 0LL);
  switch (kind_) {
    case Kind::Finite: {
      auto it = std::lower_bound(pre_period_.begin(), pre_period_.end(), len);
      if (it == pre_period_.end()) return std::nullopt;
      return *it;
    }
    case Kind::EventuallyPeriodic: {
      std::optional<long long> best;
      auto it = std::lower_bound(pre_period_.begin(), pre_period_.end(), len);
      if (it != pre_period_.end()) best = *it;
      for (long long f : residue_firsts_) {
        long long candidate = f;
        if (len > f) {
          candidate = f + ((len - f + modulus_ - 1) / modulus_) * modulus_;
        }
        if (!best || candidate < *best) best = candidate;
      }
      return best;
    }
    case Kind::Predicate: {
      for (long long n = len; n <= enumeration_bound_; ++n) {
        if (membership_(n)) return n;
      }
      throw QueryBeyondBound(len, enumeration_bound_);
    }
  }
  return std::nullopt;
}

GapSet::GcdResult GapSet::successor_gcd_exact() const {
  if (kind_ == Kind::Predicate) {
    throw WrongVariant("closed-form gcd needs a structured gap set");
  }
  GcdResult result;
  long long g = 0;
  for (long long e : pre_period_) {
    g = std::gcd(g, e + 1);
    result.witnesses.push_back(e);
  }
  if (kind_ == Kind::EventuallyPeriodic) {
    for (long long f : residue_firsts_) {
      // The class {f, f+D, f+2D, ...} contributes gcd(f+1, D): witnessed
      // by its first two elements.
      g = std::gcd(g, std::gcd(f + 1, modulus_));
      result.witnesses.push_back(f);
      result.witnesses.push_back(f + modulus_);
    }
  }
  result.gcd = g;
  return result;
}

}  // namespace gapshift
