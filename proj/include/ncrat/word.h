#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncrat {

/// A word over the alphabet {1, ..., d}. The empty word is the vacuum Ω.
///
/// Words compare in length-lexicographic order (shorter first, then
/// lexicographic by letter), which is the canonical enumeration order used
/// for Fock bases and Hankel blocks throughout the library.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  static Word letter(int i) { return Word{i}; }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t pos) const { return letters_[pos]; }
  int front() const { return letters_.front(); }
  int back() const { return letters_.back(); }
  const std::vector<int>& letters() const { return letters_; }

  /// Largest letter, or 0 for Ω.
  int max_letter() const;

  /// Word made of letters [pos, pos + count).
  Word slice(std::size_t pos, std::size_t count) const;
  Word prefix(std::size_t count) const { return slice(0, count); }
  Word suffix(std::size_t count) const {
    return slice(size() - count, count);
  }

  void push_back(int letter) { letters_.push_back(letter); }

  /// Run-length form i1^k1 ... in^kn with adjacent letters distinct.
  std::vector<std::pair<int, int>> runs() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<int> letters_;
};

/// Result of a word quotient: a word, or the absorbing sentinel Zero
/// (represented by an empty optional).
using QuotientResult = std::optional<Word>;

Word concat(const Word& u, const Word& w);

/// v w^{-1}: the word v' with v = v' w, or Zero.
QuotientResult right_quotient(const Word& v, const Word& w);
QuotientResult right_quotient(const QuotientResult& v, const Word& w);

/// w^{-1} v: the word v' with v = w v', or Zero.
QuotientResult left_quotient(const Word& w, const Word& v);
QuotientResult left_quotient(const Word& w, const QuotientResult& v);

/// Letter sequence reversed.
Word transpose(const Word& w);

/// All words of length <= max_len over {1..d} in length-lex order.
std::vector<Word> enumerate_words(int d, int max_len);

/// All words of length exactly len over {1..d} in lex order.
std::vector<Word> enumerate_words_of_length(int d, int len);

/// Number of words of length <= max_len.
std::uint64_t count_words(int d, int max_len);

/// Parses "1 2 2" (base-10 letters separated by whitespace); "" is Ω.
/// Throws Error(kParse) on malformed input.
Word parse_word(std::string_view text);

/// Formats letters separated by single spaces; Ω formats as "".
std::string format_word(const Word& w);

/// Human-readable form used in diagnostics: "Ω" for the empty word.
std::string display_word(const Word& w);

/// True when every letter lies in 1..d.
bool word_in_alphabet(const Word& w, int d);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

}  // namespace ncrat
