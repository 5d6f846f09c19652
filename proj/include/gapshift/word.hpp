#ifndef GAPSHIFT_WORD_HPP_
#define GAPSHIFT_WORD_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace gapshift {

// A word over the alphabet {0, 1, ..., k} stored as raw byte values, one
// symbol per byte.  Symbol 0 is the gap marker; symbols 1..k form the
// alphabet of the underlying sequence w.  Byte storage keeps lexicographic
// comparison of std::string identical to symbol-wise comparison as long as
// k stays below 128, which construction enforces.
using Symbol = std::uint8_t;
using Word = std::string;

inline constexpr int kMaxAlphabet = 120;

// Renders a word using ASCII digits for symbols <= 9 and bracketed decimal
// for larger symbols, e.g. {0,1,2} -> "012", {0,12} -> "0[12]".
std::string format_word(const Word& word);

// Parses the textual form produced by format_word.  Throws SpecParseError
// on malformed input or symbols above k.
Word parse_word(const std::string& text, int max_symbol);

// Splits a word at its 0 markers: result has (number of zeros + 1) pieces,
// each zero-free (possibly empty).
std::vector<Word> split_at_zeros(const Word& word);

inline std::size_t count_zeros(const Word& word) {
  std::size_t z = 0;
  for (char c : word) z += (c == 0);
  return z;
}

}  // namespace gapshift

#endif  // GAPSHIFT_WORD_HPP_
