#ifndef SIGMKT_WORD_HPP
#define SIGMKT_WORD_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace sigmkt {

// Letters label the driving components of an extended path: -1 is the time
// letter, 0 the Brownian letter, k >= 1 the k-th jump-moment letter.
using Letter = int;

inline constexpr Letter time_letter = -1;
inline constexpr Letter brownian_letter = 0;

// A word is a finite (possibly empty) sequence of letters; it indexes one
// iterated-integral coordinate of the truncated tensor algebra.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter last() const;
  const std::vector<Letter>& letters() const { return letters_; }

  Word drop_last(std::size_t count = 1) const;  // I' for count 1, I'' for 2
  Word prefix(std::size_t len) const;           // first len letters
  Word suffix(std::size_t start) const;         // letters from position start
  Word append(Letter j) const;
  Word concat(const Word& other) const;

  // Sum of the letters; used where all letters are >= 1.
  long letter_sum() const;
  bool all_letters_positive() const;
  bool all_letters_equal(Letter j) const;
  Letter max_positive_letter() const;  // 0 when no positive letter occurs

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }
  // Length-first, then lexicographic: the enumeration order used everywhere.
  bool operator<(const Word& o) const;

  // Dot-separated letters; the empty word is spelled "@": (-1,0,1) <-> "-1.0.1".
  std::string to_string() const;
  static Word parse(const std::string& text);

private:
  std::vector<Letter> letters_;
};

// The ordered letter set a tensor algebra is built over. Axes are positions
// 0..size()-1; letter values need not be contiguous (a time-extended price
// path uses {-1, 1}).
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Letter> letters);  // strictly increasing
  // {-1, 0, 1, ..., max_moment}: clock, Brownian, jump moments.
  static Alphabet primary(int max_moment);
  // {-1, 1}: clock plus one price component.
  static Alphabet time_extended_pair();

  std::size_t size() const { return letters_.size(); }
  Letter letter_at(std::size_t axis) const { return letters_[axis]; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t axis_of(Letter l) const;  // throws if the letter is absent
  bool contains(Letter l) const;
  bool contains(const Word& w) const;

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }
  bool operator!=(const Alphabet& o) const { return letters_ != o.letters_; }

  // All words of length <= max_len in length-first lexicographic order.
  std::vector<Word> words_up_to(int max_len) const;

private:
  std::vector<Letter> letters_;
};

}  // namespace sigmkt

#endif
