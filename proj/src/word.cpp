#include "sigmkt/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace sigmkt {

Letter Word::last() const {
  if (letters_.empty()) throw std::logic_error("last letter of the empty word");
  return letters_.back();
}

Word Word::drop_last(std::size_t count) const {
  if (count > letters_.size())
    throw std::logic_error("drop_last past the start of the word");
  return prefix(letters_.size() - count);
}

Word Word::prefix(std::size_t len) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + len));
}

Word Word::suffix(std::size_t start) const {
  return Word(std::vector<Letter>(letters_.begin() + start, letters_.end()));
}

Word Word::append(Letter j) const {
  std::vector<Letter> out = letters_;
  out.push_back(j);
  return Word(std::move(out));
}

Word Word::concat(const Word& other) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(out));
}

long Word::letter_sum() const {
  long s = 0;
  for (Letter l : letters_) s += l;
  return s;
}

bool Word::all_letters_positive() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Letter l) { return l >= 1; });
}

bool Word::all_letters_equal(Letter j) const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [j](Letter l) { return l == j; });
}

Letter Word::max_positive_letter() const {
  Letter m = 0;
  for (Letter l : letters_) m = std::max(m, l);
  return m;
}

bool Word::operator<(const Word& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() < o.letters_.size();
  return letters_ < o.letters_;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "@";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(const std::string& text) {
  if (text == "@") return Word();
  if (text.empty()) throw std::invalid_argument("empty word string (use \"@\")");
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string tok = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
    int value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || tok.empty())
      throw std::invalid_argument("word token '" + tok + "' is not an integer");
    letters.push_back(value);
    if (dot == std::string::npos) break;
    pos = dot + 1;
    if (pos == text.size())
      throw std::invalid_argument("word token '' is not an integer");
  }
  return Word(std::move(letters));
}

Alphabet::Alphabet(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i - 1] >= letters_[i])
      throw std::invalid_argument("alphabet letters must be strictly increasing");
}

Alphabet Alphabet::primary(int max_moment) {
  if (max_moment < 1)
    throw std::invalid_argument("primary alphabet needs max moment >= 1");
  std::vector<Letter> letters;
  for (int l = -1; l <= max_moment; ++l) letters.push_back(l);
  return Alphabet(std::move(letters));
}

Alphabet Alphabet::time_extended_pair() { return Alphabet({-1, 1}); }

std::size_t Alphabet::axis_of(Letter l) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == l) return i;
  throw std::out_of_range("letter " + std::to_string(l) + " not in alphabet");
}

bool Alphabet::contains(Letter l) const {
  return std::find(letters_.begin(), letters_.end(), l) != letters_.end();
}

bool Alphabet::contains(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!contains(w[i])) return false;
  return true;
}

std::vector<Word> Alphabet::words_up_to(int max_len) const {
  std::vector<Word> out;
  std::vector<Word> current{Word()};
  out.push_back(Word());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : current)
      for (Letter l : letters_) next.push_back(w.append(l));
    out.insert(out.end(), next.begin(), next.end());
    current = std::move(next);
  }
  return out;
}

}  // namespace sigmkt
