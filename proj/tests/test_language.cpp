#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gapshift/errors.hpp"
#include "gapshift/language.hpp"
#include "gapshift/shift_spec.hpp"
#include "gapshift/word.hpp"

using namespace gapshift;

namespace {

ShiftSpec sgap(std::vector<long long> elems) {
  return {GapSet::finite(std::move(elems)),
          FactorSource::periodic(parse_word("1", 1), 1)};
}

ShiftSpec sgap_all() {
  return {GapSet::eventually_periodic({}, {{0, 1}}),
          FactorSource::periodic(parse_word("1", 1), 1)};
}

const ShiftSpec kGolden = sgap({0, 1});
const ShiftSpec kS2Period12 = {GapSet::finite({2}),
                               FactorSource::periodic(parse_word("12", 2), 2)};
const ShiftSpec kPeriod2All = {GapSet::eventually_periodic({}, {{0, 1}}),
                               FactorSource::periodic(parse_word("12", 2), 2)};

// Brute-force word set built from the defining bi-infinite concatenations:
// harvest all length-n windows of strings  u_1 0 u_2 0 ... 0 u_m  with
// u_i factors of w and |u_i| in S.  With enough blocks and generous block
// coverage this is exactly B_n (every window of a point arises this way).
std::set<Word> harvest_windows(const ShiftSpec& spec, std::size_t n,
                               std::size_t depth) {
  std::set<Word> out;
  std::vector<long long> gaps = spec.gap_set.elements_upto(
      std::min<long long>(static_cast<long long>(2 * n + 2),
                          spec.gap_set.certainly_finite()
                              ? *spec.gap_set.max_element()
                              : static_cast<long long>(2 * n + 2)));
  // All concatenations of `depth` blocks (gap g, then marker), every
  // choice of factor content for each gap.
  std::function<void(Word, std::size_t)> rec = [&](Word cur,
                                                   std::size_t blocks) {
    if (blocks == depth) {
      for (std::size_t i = 0; i + n <= cur.size(); ++i) {
        out.insert(cur.substr(i, n));
      }
      return;
    }
    for (long long g : gaps) {
      for (const Word& f :
           spec.factor_source.factor_set(static_cast<std::size_t>(g))) {
        Word next = cur;
        next += f;
        next.push_back(0);
        rec(next, blocks + 1);
      }
    }
  };
  rec(Word(), 0);
  return out;
}

}  // namespace

TEST_CASE("membership basics for the golden mean shift") {
  CHECK(is_allowed(kGolden, Word()));
  CHECK(is_allowed(kGolden, parse_word("0", 1)));
  CHECK(is_allowed(kGolden, parse_word("1", 1)));
  CHECK(is_allowed(kGolden, parse_word("00", 1)));
  CHECK(is_allowed(kGolden, parse_word("010", 1)));
  CHECK(is_allowed(kGolden, parse_word("101", 1)));
  CHECK(!is_allowed(kGolden, parse_word("11", 1)));
  CHECK(!is_allowed(kGolden, parse_word("0110", 1)));
  // out-of-alphabet symbol is simply not allowed
  CHECK(!is_allowed(kGolden, parse_word("2", 2)));
}

TEST_CASE("membership with factor constraints") {
  // S={2}, w=(12)^inf: gaps are length-2 windows of w.
  CHECK(is_allowed(kS2Period12, parse_word("0120", 2)));
  CHECK(is_allowed(kS2Period12, parse_word("0210", 2)));
  CHECK(!is_allowed(kS2Period12, parse_word("0110", 2)));
  CHECK(!is_allowed(kS2Period12, parse_word("0220", 2)));
  // zero-free words only need to be factors below some admissible length
  CHECK(is_allowed(kS2Period12, parse_word("12", 2)));
  CHECK(is_allowed(kS2Period12, parse_word("21", 2)));
  CHECK(!is_allowed(kS2Period12, parse_word("121", 2)));
  // a head longer than every gap cannot occur
  CHECK(!is_allowed(kS2Period12, parse_word("1210", 2)));
}

TEST_CASE("consecutive markers need 0 in S") {
  CHECK(is_allowed(kGolden, parse_word("000", 1)));
  ShiftSpec s13 = sgap({1, 3});
  CHECK(!is_allowed(s13, parse_word("00", 1)));
  CHECK(is_allowed(s13, parse_word("010", 1)));
  CHECK(!is_allowed(s13, parse_word("0110", 1)));
  CHECK(is_allowed(s13, parse_word("01110", 1)));
}

TEST_CASE("enumerate_words matches the examples") {
  auto words = enumerate_words(kGolden, 2);
  std::vector<Word> expect = {parse_word("00", 1), parse_word("01", 1),
                              parse_word("10", 1)};
  CHECK(words == expect);
  auto s1 = enumerate_words(sgap({1}), 3);
  std::vector<Word> expect1 = {parse_word("010", 1), parse_word("101", 1)};
  CHECK(s1 == expect1);
}

TEST_CASE("count_words reproduces fibonacci for the golden mean") {
  std::vector<long long> fib = {2,   3,   5,   8,    13,   21,  34,
                                55,  89,  144, 233,  377,  610, 987,
                                1597, 2584, 4181, 6765, 10946, 17711};
  for (std::size_t n = 1; n <= fib.size(); ++n) {
    CAPTURE(n);
    CHECK(count_words(kGolden, n) == fib[n - 1]);
  }
}

TEST_CASE("count_words on the period-2 full gap set") {
  // First terms 3, 7, 17, 41: a_n = 2a_{n-1} + a_{n-2}.
  CHECK(count_words(kPeriod2All, 1) == 3);
  CHECK(count_words(kPeriod2All, 2) == 7);
  std::vector<BigInt> a = {1, 3, 7};
  for (std::size_t n = 3; n <= 12; ++n) {
    a.push_back(2 * a[n - 1] + a[n - 2]);
    CHECK(count_words(kPeriod2All, n) == a[n]);
  }
}

TEST_CASE("counting agrees with enumeration across a spec batch") {
  std::vector<ShiftSpec> specs = {
      kGolden,
      kS2Period12,
      kPeriod2All,
      sgap({1, 3}),
      sgap_all(),
      {GapSet::eventually_periodic({0}, {{2, 3}}),
       FactorSource::periodic(parse_word("112", 2), 2)},
      {GapSet::finite({0, 2}), FactorSource::full_shift(2)},
  };
  for (const auto& spec : specs) {
    for (std::size_t n = 1; n <= 9; ++n) {
      CAPTURE(n);
      auto words = enumerate_words(spec, n);
      CHECK(BigInt(words.size()) == count_words(spec, n));
      CHECK(std::is_sorted(words.begin(), words.end()));
      for (const auto& b : words) CHECK(is_allowed(spec, b));
    }
  }
}

TEST_CASE("enumerated words equal harvested windows") {
  std::vector<ShiftSpec> specs = {kGolden, kS2Period12, sgap({1, 3})};
  for (const auto& spec : specs) {
    for (std::size_t n = 2; n <= 6; ++n) {
      CAPTURE(n);
      auto enumerated = enumerate_words(spec, n);
      // n blocks always cover a length-n window, whatever the gap sizes
      auto harvested = harvest_windows(spec, n, n);
      CHECK(std::set<Word>(enumerated.begin(), enumerated.end()) ==
            harvested);
    }
  }
}

TEST_CASE("full shift reduction counts (k+1)^n words") {
  ShiftSpec full = {GapSet::eventually_periodic({}, {{0, 1}}),
                    FactorSource::full_shift(2)};
  BigInt p = 1;
  for (std::size_t n = 1; n <= 10; ++n) {
    p *= 3;
    CHECK(count_words(full, n) == p);
  }
}

TEST_CASE("exact concatenation counts") {
  // S={0,1}, w=1^inf: a single complete block u0 of length 2 forces
  // |u| = 1, so "10" is the only one.
  CHECK(count_exact_concatenations(kGolden, 2, 1) == 1);
  // S={2}, w=(12)^inf, n=6, j=2: blocks of length 3, gap content any
  // length-2 factor (12 or 21), so 2*2 = 4 words.
  CHECK(count_exact_concatenations(kS2Period12, 6, 2) == 4);

  // Oracle: brute-force j-fold concatenations of generator words.
  for (const ShiftSpec* spec : {&kGolden, &kS2Period12}) {
    auto gens = generators_upto(*spec, 8);
    for (int j = 1; j <= 3; ++j) {
      std::map<std::size_t, BigInt> by_len;
      std::set<Word> distinct;
      std::function<void(Word, int)> rec = [&](Word cur, int left) {
        if (left == 0) {
          if (cur.size() <= 10) {
            by_len[cur.size()] += 1;
            distinct.insert(cur);
          }
          return;
        }
        for (const auto& g : gens) {
          if (cur.size() + g.content.size() <= 10) {
            rec(cur + g.content, left - 1);
          }
        }
      };
      rec(Word(), j);
      // tuple-to-word is injective, so multiset count equals set count
      BigInt total = 0;
      for (auto& [len, c] : by_len) total += c;
      CHECK(total == BigInt(distinct.size()));
      for (std::size_t n = 1; n <= 10; ++n) {
        CAPTURE(j);
        CAPTURE(n);
        CHECK(count_exact_concatenations(*spec, n, j) ==
              (by_len.count(n) ? by_len[n] : BigInt(0)));
      }
    }
  }
}

TEST_CASE("concatenation classes are disjoint sublanguages") {
  for (const ShiftSpec* spec : {&kGolden, &kS2Period12}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      BigInt sum = 0;
      for (int j = 1; 2 * j <= static_cast<int>(n) + 2; ++j) {
        sum += count_exact_concatenations(*spec, n, j);
      }
      // all complete-block words of length n are allowed words
      CHECK(sum <= count_words(*spec, n));
    }
  }
}

TEST_CASE("decompose splits at markers and reassembles") {
  auto d = decompose(kPeriod2All, parse_word("1021200", 2));
  CHECK(format_word(d.head) == "1");
  REQUIRE(d.internal_gaps.size() == 2);
  CHECK(format_word(d.internal_gaps[0]) == "212");
  CHECK(format_word(d.internal_gaps[1]).empty());
  CHECK(d.tail.empty());
  CHECK(d.zero_count == 3);
  CHECK(d.reassemble() == parse_word("1021200", 2));
  CHECK_THROWS_AS(decompose(kGolden, parse_word("11", 1)), NotInLanguage);
}

TEST_CASE("bridge produces verified joins") {
  ShiftSpec s1 = sgap({1});
  Bridge b = bridge(s1, parse_word("0", 1), parse_word("0", 1));
  CHECK(format_word(b.t) == "1");
  CHECK(format_word(b.s) == "1");

  Bridge empty = bridge(kGolden, parse_word("01", 1), parse_word("10", 1));
  CHECK(empty.t.empty());
  CHECK(empty.s.empty());

  Bridge e2 = bridge(kS2Period12, parse_word("012", 2), parse_word("120", 2));
  CHECK(e2.t.empty());
  CHECK(e2.s.empty());

  // Property over random-ish pairs: u t 0 s v is always allowed.
  std::vector<Word> pool = enumerate_words(kS2Period12, 4);
  for (const auto& u : pool) {
    for (const auto& v : pool) {
      Bridge br = bridge(kS2Period12, u, v);
      Word joined = u + br.t;
      joined.push_back(0);
      joined += br.s + v;
      CHECK(is_allowed(kS2Period12, joined));
    }
  }
}

TEST_CASE("generators are complete blocks") {
  auto gens = generators_upto(kGolden, 3);
  // gaps 0 and 1 with w=1^inf: generators "0", "10"
  REQUIRE(gens.size() == 2);
  CHECK(format_word(gens[0].content) == "0");
  CHECK(format_word(gens[1].content) == "10");

  auto g2 = generators_upto(kS2Period12, 3);
  REQUIRE(g2.size() == 2);
  CHECK(format_word(g2[0].content) == "120");
  CHECK(format_word(g2[1].content) == "210");
}

TEST_CASE("enumeration budget is enforced") {
  ShiftSpec full = {GapSet::eventually_periodic({}, {{0, 1}}),
                    FactorSource::full_shift(3)};
  CHECK_THROWS_AS(enumerate_words(full, 20, 1000), BudgetExceeded);
}

TEST_CASE("prefixes of allowed words stay allowed") {
  for (const ShiftSpec* spec : {&kGolden, &kS2Period12, &kPeriod2All}) {
    for (const auto& b : enumerate_words(*spec, 7)) {
      for (std::size_t cut = 0; cut < b.size(); ++cut) {
        CHECK(is_allowed(*spec, b.substr(0, cut)));
        CHECK(is_allowed(*spec, b.substr(cut)));
      }
    }
  }
}
