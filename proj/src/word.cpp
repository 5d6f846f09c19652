#include "gapshift/word.hpp"

#include <cctype>

#include "gapshift/errors.hpp"

namespace gapshift {

std::string format_word(const Word& word) {
  std::string out;
  out.reserve(word.size());
  for (unsigned char c : word) {
    if (c <= 9) {
      out.push_back(static_cast<char>('0' + c));
    } else {
      out += "[" + std::to_string(static_cast<int>(c)) + "]";
    }
  }
  return out;
}

Word parse_word(const std::string& text, int max_symbol) {
  Word out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    int value;
    if (text[i] == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string::npos) {
        throw SpecParseError("unterminated bracketed symbol in \"" + text + "\"");
      }
      try {
        value = std::stoi(text.substr(i + 1, close - i - 1));
      } catch (const std::exception&) {
        throw SpecParseError("bad bracketed symbol in \"" + text + "\"");
      }
      i = close + 1;
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = text[i] - '0';
      ++i;
    } else {
      throw SpecParseError("unexpected character '" + std::string(1, text[i]) +
                           "' in word \"" + text + "\"");
    }
    if (value < 0 || value > max_symbol) {
      throw SpecParseError("symbol " + std::to_string(value) +
                           " outside alphabet {0.." +
                           std::to_string(max_symbol) + "}");
    }
    out.push_back(static_cast<char>(value));
  }
  return out;
}

std::vector<Word> split_at_zeros(const Word& word) {
  std::vector<Word> pieces;
  Word current;
  for (char c : word) {
    if (c == 0) {
      pieces.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  pieces.push_back(current);
  return pieces;
}

}  // namespace gapshift
