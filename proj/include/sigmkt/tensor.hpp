#ifndef SIGMKT_TENSOR_HPP
#define SIGMKT_TENSOR_HPP

#include <cstddef>
#include <vector>

#include "sigmkt/word.hpp"

namespace sigmkt {

// An element of the tensor algebra over an alphabet, truncated at a fixed
// level. Level n is stored as a dense block of size()^n coefficients in
// length-first lexicographic word order (first letter most significant).
class TensorElement {
public:
  TensorElement() = default;

  static TensorElement zero(const Alphabet& alphabet, int level);
  static TensorElement unit(const Alphabet& alphabet, int level);
  // 1 + v for a level-one vector v given per axis.
  static TensorElement from_level_one(const Alphabet& alphabet, int level,
                                      const std::vector<double>& v);

  const Alphabet& alphabet() const { return alphabet_; }
  int level() const { return level_; }
  bool group_like() const { return group_like_; }
  void mark_group_like(bool flag) { group_like_ = flag; }

  double scalar() const { return levels_[0][0]; }
  double coeff(const Word& w) const;       // throws past the truncation level
  void set_coeff(const Word& w, double v);

  const std::vector<double>& level_block(int n) const { return levels_[n]; }
  std::vector<double>& level_block(int n) { return levels_[n]; }

  // Position of a word inside its level block.
  std::size_t block_index(const Word& w) const;

  bool same_shape(const TensorElement& o) const {
    return alphabet_ == o.alphabet_ && level_ == o.level_;
  }

private:
  Alphabet alphabet_;
  int level_ = 0;
  std::vector<std::vector<double>> levels_;
  bool group_like_ = false;
};

// All operations require matching alphabet and truncation level and throw
// std::invalid_argument otherwise.
TensorElement add(const TensorElement& a, const TensorElement& b);
TensorElement sub(const TensorElement& a, const TensorElement& b);
TensorElement scale(const TensorElement& a, double s);
TensorElement tensor_product(const TensorElement& a, const TensorElement& b);
// acc <- acc (x) g, reusing acc's storage.
void right_multiply(TensorElement& acc, const TensorElement& g);

// Truncated exponential of an element with scalar part 0.
TensorElement tensor_exp(const TensorElement& a);
// Truncated logarithm of an element with scalar part 1: the alternating
// series sum_{k>=1} (-1)^{k+1} (a-1)^{(x)k} / k.
TensorElement tensor_log(const TensorElement& a);
// Multiplicative inverse of an element with scalar part 1.
TensorElement group_inverse(const TensorElement& a);
// Dilation: level n is scaled by lambda^n.
TensorElement dilate(double lambda, const TensorElement& a);

// Homogeneous norm sum_n |a^(n)|_F^(1/n); requires scalar part 1.
double homogeneous_norm(const TensorElement& a);
double frobenius_level(const TensorElement& a, int n);

}  // namespace sigmkt

#endif
