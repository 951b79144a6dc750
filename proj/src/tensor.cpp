#include "sigmkt/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace sigmkt {

namespace {

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_same_shape(const TensorElement& a, const TensorElement& b,
                        const char* op) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(op) + ": alphabet/level mismatch");
}

}  // namespace

TensorElement TensorElement::zero(const Alphabet& alphabet, int level) {
  if (level < 0) throw std::invalid_argument("truncation level must be >= 0");
  TensorElement t;
  t.alphabet_ = alphabet;
  t.level_ = level;
  t.levels_.resize(level + 1);
  for (int n = 0; n <= level; ++n)
    t.levels_[n].assign(pow_size(alphabet.size(), n), 0.0);
  return t;
}

TensorElement TensorElement::unit(const Alphabet& alphabet, int level) {
  TensorElement t = zero(alphabet, level);
  t.levels_[0][0] = 1.0;
  t.group_like_ = true;
  return t;
}

TensorElement TensorElement::from_level_one(const Alphabet& alphabet, int level,
                                            const std::vector<double>& v) {
  if (v.size() != alphabet.size())
    throw std::invalid_argument("level-one vector has wrong dimension");
  TensorElement t = zero(alphabet, level);
  if (level >= 1) t.levels_[1] = v;
  return t;
}

std::size_t TensorElement::block_index(const Word& w) const {
  const std::size_t A = alphabet_.size();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) idx = idx * A + alphabet_.axis_of(w[i]);
  return idx;
}

double TensorElement::coeff(const Word& w) const {
  if (static_cast<int>(w.size()) > level_)
    throw std::invalid_argument("word " + w.to_string() +
                                " is longer than the truncation level " +
                                std::to_string(level_));
  return levels_[w.size()][block_index(w)];
}

void TensorElement::set_coeff(const Word& w, double v) {
  if (static_cast<int>(w.size()) > level_)
    throw std::invalid_argument("word " + w.to_string() +
                                " is longer than the truncation level " +
                                std::to_string(level_));
  levels_[w.size()][block_index(w)] = v;
}

TensorElement add(const TensorElement& a, const TensorElement& b) {
  require_same_shape(a, b, "add");
  TensorElement c = a;
  c.mark_group_like(false);
  for (int n = 0; n <= a.level(); ++n) {
    auto& dst = c.level_block(n);
    const auto& src = b.level_block(n);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return c;
}

TensorElement sub(const TensorElement& a, const TensorElement& b) {
  require_same_shape(a, b, "sub");
  TensorElement c = a;
  c.mark_group_like(false);
  for (int n = 0; n <= a.level(); ++n) {
    auto& dst = c.level_block(n);
    const auto& src = b.level_block(n);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  }
  return c;
}

TensorElement scale(const TensorElement& a, double s) {
  TensorElement c = a;
  c.mark_group_like(false);
  for (int n = 0; n <= a.level(); ++n)
    for (double& x : c.level_block(n)) x *= s;
  return c;
}

TensorElement tensor_product(const TensorElement& a, const TensorElement& b) {
  require_same_shape(a, b, "tensor_product");
  TensorElement c = TensorElement::zero(a.alphabet(), a.level());
  for (int n = 0; n <= a.level(); ++n) {
    auto& dst = c.level_block(n);
    for (int k = 0; k <= n; ++k) {
      const auto& left = a.level_block(k);
      const auto& right = b.level_block(n - k);
      const std::size_t right_size = right.size();
      for (std::size_t i = 0; i < left.size(); ++i) {
        const double av = left[i];
        if (av == 0.0) continue;
        double* out = dst.data() + i * right_size;
        for (std::size_t j = 0; j < right_size; ++j) out[j] += av * right[j];
      }
    }
  }
  c.mark_group_like(a.group_like() && b.group_like());
  return c;
}

void right_multiply(TensorElement& acc, const TensorElement& g) {
  require_same_shape(acc, g, "right_multiply");
  const bool grp = acc.group_like() && g.group_like();
  const double g0 = g.scalar();
  // Top level first so lower levels of acc are still the old values.
  for (int n = acc.level(); n >= 0; --n) {
    auto& dst = acc.level_block(n);
    for (double& x : dst) x *= g0;
    for (int k = 0; k < n; ++k) {
      const auto& left = acc.level_block(k);
      const auto& right = g.level_block(n - k);
      const std::size_t right_size = right.size();
      for (std::size_t i = 0; i < left.size(); ++i) {
        const double av = left[i];
        if (av == 0.0) continue;
        double* out = dst.data() + i * right_size;
        for (std::size_t j = 0; j < right_size; ++j) out[j] += av * right[j];
      }
    }
  }
  acc.mark_group_like(grp);
}

TensorElement tensor_exp(const TensorElement& a) {
  if (a.scalar() != 0.0)
    throw std::domain_error("tensor_exp needs scalar part 0");
  TensorElement result = TensorElement::unit(a.alphabet(), a.level());
  TensorElement term = TensorElement::unit(a.alphabet(), a.level());
  term.mark_group_like(false);
  for (int k = 1; k <= a.level(); ++k) {
    term = tensor_product(term, a);
    term = scale(term, 1.0 / k);
    result = add(result, term);
  }
  // exp of a pure level-one vector is the signature of a line segment.
  bool level_one_only = true;
  for (int n = 2; n <= a.level(); ++n)
    for (double x : a.level_block(n))
      if (x != 0.0) level_one_only = false;
  result.mark_group_like(level_one_only);
  return result;
}

TensorElement tensor_log(const TensorElement& a) {
  if (a.scalar() != 1.0)
    throw std::domain_error("tensor_log needs scalar part 1");
  TensorElement b = a;
  b.set_coeff(Word(), 0.0);
  b.mark_group_like(false);
  TensorElement result = TensorElement::zero(a.alphabet(), a.level());
  TensorElement term = TensorElement::unit(a.alphabet(), a.level());
  term.mark_group_like(false);
  double sign = 1.0;
  for (int k = 1; k <= a.level(); ++k) {
    term = tensor_product(term, b);
    result = add(result, scale(term, sign / k));
    sign = -sign;
  }
  return result;
}

TensorElement group_inverse(const TensorElement& a) {
  if (a.scalar() != 1.0)
    throw std::domain_error("group_inverse needs scalar part 1");
  TensorElement b = a;
  b.set_coeff(Word(), 0.0);
  b.mark_group_like(false);
  TensorElement result = TensorElement::unit(a.alphabet(), a.level());
  TensorElement term = TensorElement::unit(a.alphabet(), a.level());
  term.mark_group_like(false);
  double sign = -1.0;
  for (int k = 1; k <= a.level(); ++k) {
    term = tensor_product(term, b);
    result = add(result, scale(term, sign));
    sign = -sign;
  }
  result.mark_group_like(a.group_like());
  return result;
}

TensorElement dilate(double lambda, const TensorElement& a) {
  TensorElement c = a;
  double factor = 1.0;
  for (int n = 1; n <= a.level(); ++n) {
    factor *= lambda;
    for (double& x : c.level_block(n)) x *= factor;
  }
  c.mark_group_like(a.group_like());
  return c;
}

double frobenius_level(const TensorElement& a, int n) {
  double sum = 0.0;
  for (double x : a.level_block(n)) sum += x * x;
  return std::sqrt(sum);
}

double homogeneous_norm(const TensorElement& a) {
  if (std::abs(a.scalar() - 1.0) > 1e-9)
    throw std::domain_error("homogeneous_norm needs scalar part 1");
  double norm = 0.0;
  for (int n = 1; n <= a.level(); ++n)
    norm += std::pow(frobenius_level(a, n), 1.0 / n);
  return norm;
}

}  // namespace sigmkt
