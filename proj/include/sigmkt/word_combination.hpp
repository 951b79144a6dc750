#ifndef SIGMKT_WORD_COMBINATION_HPP
#define SIGMKT_WORD_COMBINATION_HPP

#include <map>
#include <string>

#include "sigmkt/tensor.hpp"
#include "sigmkt/word.hpp"

namespace sigmkt {

// A finite linear combination of words with real coefficients: the sparse
// dual pairing partner of TensorElement. Exact zeros are dropped.
class WordCombination {
public:
  WordCombination() = default;
  explicit WordCombination(const Word& w, double coeff = 1.0);

  void add_term(const Word& w, double coeff);
  double coeff(const Word& w) const;
  const std::map<Word, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t max_word_length() const;

  bool operator==(const WordCombination& o) const { return terms_ == o.terms_; }

  // "coeff*word [+ coeff*word ...]"; the empty combination is "0".
  std::string to_string() const;
  static WordCombination parse(const std::string& text);

private:
  std::map<Word, double> terms_;
};

WordCombination add(const WordCombination& a, const WordCombination& b);
WordCombination scale(const WordCombination& a, double s);
// Append one letter to every word (right concatenation by a single letter).
WordCombination append_letter(const WordCombination& a, Letter j);

// Shuffle products. The empty word is neutral.
WordCombination word_shuffle(const Word& a, const Word& b);
WordCombination shuffle(const WordCombination& a, const WordCombination& b);
// Plain k-fold shuffle power (no factorial normalization); k >= 0.
WordCombination shuffle_power(const WordCombination& a, int k);

// Dual pairing sum_w c_w <e_w, t>; throws if a word exceeds the level of t.
double eval(const WordCombination& a, const TensorElement& t);

// Largest absolute coefficient difference between two combinations.
double max_coeff_delta(const WordCombination& a, const WordCombination& b);

// Shuffle test for group-likeness: <e_I,a><e_J,a> = <e_{I shuffle J},a> for
// all pairs with |I|+|J| <= level, and scalar part 1.
bool is_group_like(const TensorElement& a, double tol);

}  // namespace sigmkt

#endif
