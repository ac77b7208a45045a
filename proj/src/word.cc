#include "ncrat/word.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ncrat/error.h"

namespace ncrat {

int Word::max_letter() const {
  return letters_.empty() ? 0
                          : *std::max_element(letters_.begin(), letters_.end());
}

Word Word::slice(std::size_t pos, std::size_t count) const {
  return Word(std::vector<int>(letters_.begin() + pos,
                               letters_.begin() + pos + count));
}

std::vector<std::pair<int, int>> Word::runs() const {
  std::vector<std::pair<int, int>> out;
  for (int letter : letters_) {
    if (!out.empty() && out.back().first == letter) {
      ++out.back().second;
    } else {
      out.emplace_back(letter, 1);
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.letters_ <=> b.letters_;
}

Word concat(const Word& u, const Word& w) {
  std::vector<int> letters = u.letters();
  letters.insert(letters.end(), w.letters().begin(), w.letters().end());
  return Word(std::move(letters));
}

QuotientResult right_quotient(const Word& v, const Word& w) {
  if (w.size() > v.size()) return std::nullopt;
  if (!std::equal(w.letters().begin(), w.letters().end(),
                  v.letters().end() - w.size())) {
    return std::nullopt;
  }
  return v.prefix(v.size() - w.size());
}

QuotientResult right_quotient(const QuotientResult& v, const Word& w) {
  if (!v) return std::nullopt;
  return right_quotient(*v, w);
}

QuotientResult left_quotient(const Word& w, const Word& v) {
  if (w.size() > v.size()) return std::nullopt;
  if (!std::equal(w.letters().begin(), w.letters().end(),
                  v.letters().begin())) {
    return std::nullopt;
  }
  return v.suffix(v.size() - w.size());
}

QuotientResult left_quotient(const Word& w, const QuotientResult& v) {
  if (!v) return std::nullopt;
  return left_quotient(w, *v);
}

Word transpose(const Word& w) {
  std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(letters));
}

std::vector<Word> enumerate_words_of_length(int d, int len) {
  std::vector<Word> out;
  std::vector<int> digits(static_cast<std::size_t>(len), 1);
  while (true) {
    out.emplace_back(digits);
    int pos = len - 1;
    while (pos >= 0 && digits[pos] == d) {
      digits[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++digits[pos];
  }
  return out;
}

std::vector<Word> enumerate_words(int d, int max_len) {
  if (d < 1 || max_len < 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "enumerate_words needs d >= 1 and max_len >= 0");
  }
  std::vector<Word> out;
  for (int len = 0; len <= max_len; ++len) {
    auto level = enumerate_words_of_length(d, len);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

std::uint64_t count_words(int d, int max_len) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += power;
    power *= static_cast<std::uint64_t>(d);
  }
  return total;
}

Word parse_word(std::string_view text) {
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || value < 1) {
      throw Error(ErrorKind::kParse,
                  "bad letter in word \"" + std::string(text) + "\"");
    }
    letters.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() &&
        !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw Error(ErrorKind::kParse,
                  "letters must be separated by spaces in \"" +
                      std::string(text) + "\"");
    }
  }
  return Word(std::move(letters));
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

std::string display_word(const Word& w) {
  return w.empty() ? std::string("Ω") : format_word(w);
}

bool word_in_alphabet(const Word& w, int d) {
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [d](int letter) { return letter >= 1 && letter <= d; });
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = w.size();
  for (int letter : w.letters()) {
    h ^= static_cast<std::size_t>(letter) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

}  // namespace ncrat
