#include "sigmkt/signature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sigmkt {

namespace {

// exp of a level-one increment, built level by level: w^(x)n / n!.
TensorElement segment_exponential(const Alphabet& alph, int level,
                                  const std::vector<double>& w) {
  TensorElement t = TensorElement::unit(alph, level);
  const std::size_t A = alph.size();
  for (int n = 1; n <= level; ++n) {
    const auto& src = t.level_block(n - 1);
    auto& dst = t.level_block(n);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double v = src[i] / n;
      if (v == 0.0) continue;
      double* out = dst.data() + i * A;
      for (std::size_t a = 0; a < A; ++a) out[a] = v * w[a];
    }
  }
  t.mark_group_like(true);
  return t;
}

void require_aligned(const CadlagSamplePath& path, const SignaturePath& sig) {
  if (sig.node_count() != path.node_count())
    throw std::invalid_argument("signature path does not match the sample path");
  for (std::size_t k = 0; k < path.node_count(); ++k)
    if (sig.time(k) != path.time(k))
      throw std::invalid_argument("signature node times differ from the path");
}

}  // namespace

SignaturePath::SignaturePath(std::vector<double> times,
                             std::vector<TensorElement> elements,
                             std::vector<bool> jump_flags)
    : times_(std::move(times)),
      elements_(std::move(elements)),
      jump_flags_(std::move(jump_flags)) {
  if (times_.size() != elements_.size() || times_.size() != jump_flags_.size())
    throw std::invalid_argument("signature path arrays have mismatched lengths");
}

std::size_t SignaturePath::node_at_time(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin() || *(it - 1) != t)
    throw std::invalid_argument("time " + std::to_string(t) +
                                " is not a node of the signature path");
  return (it - times_.begin()) - 1;
}

SignaturePath marcus_signature(const CadlagSamplePath& path, int level) {
  std::vector<TensorElement> elements;
  elements.reserve(path.node_count());
  std::vector<double> times;
  std::vector<bool> jumps;
  TensorElement acc = TensorElement::unit(path.alphabet(), level);
  elements.push_back(acc);
  times.push_back(path.time(0));
  jumps.push_back(false);
  for (std::size_t k = 1; k < path.node_count(); ++k) {
    right_multiply(acc,
                   segment_exponential(path.alphabet(), level, path.increment(k)));
    elements.push_back(acc);
    times.push_back(path.time(k));
    jumps.push_back(path.is_jump(k));
  }
  return SignaturePath(std::move(times), std::move(elements), std::move(jumps));
}

TensorElement marcus_terminal_signature(const CadlagSamplePath& path, int level) {
  TensorElement acc = TensorElement::unit(path.alphabet(), level);
  for (std::size_t k = 1; k < path.node_count(); ++k)
    right_multiply(acc,
                   segment_exponential(path.alphabet(), level, path.increment(k)));
  return acc;
}

TensorElement signature_increment(const SignaturePath& sig, double s, double t) {
  if (s > t) throw std::invalid_argument("signature_increment needs s <= t");
  const TensorElement& xs = sig.element(sig.node_at_time(s));
  const TensorElement& xt = sig.element(sig.node_at_time(t));
  return tensor_product(group_inverse(xs), xt);
}

double averaged_pairing(const WordCombination& f, const TensorElement& base,
                        const std::vector<double>& w) {
  const Alphabet& alph = base.alphabet();
  double total = 0.0;
  for (const auto& [word, c] : f.terms()) {
    const std::size_t len = word.size();
    // Split word = prefix . tail; the tail letters come from the increment.
    double word_sum = 0.0;
    double tail_product = 1.0;  // product of w over the tail letters
    double tail_factorial = 1.0;  // (|tail| + 1)!
    for (std::size_t cut = len + 1; cut-- > 0;) {
      // tail = word[cut..len)
      if (cut < len) {
        tail_product *= w[alph.axis_of(word[cut])];
        tail_factorial *= double(len - cut + 1);
        if (tail_product == 0.0 && cut > 0) {
          // deeper cuts keep the zero factor; skip ahead
        }
      }
      word_sum += base.coeff(word.prefix(cut)) * tail_product / tail_factorial;
    }
    total += c * word_sum;
  }
  return total;
}

std::vector<double> ito_iterated_sum_path(const CadlagSamplePath& path,
                                          const WordCombination& functional,
                                          Letter j, const SignaturePath& sig) {
  require_aligned(path, sig);
  const std::size_t j_axis = path.alphabet().axis_of(j);
  std::vector<double> out(path.node_count(), 0.0);
  double acc = 0.0;
  for (std::size_t k = 1; k < path.node_count(); ++k) {
    const std::vector<double> w = path.increment(k);
    if (path.is_jump(k) || j == brownian_letter) {
      // Jump transitions use the left limit exactly; the Brownian letter is a
      // left-point Ito sum on the stored grid.
      acc += eval(functional, sig.element(k - 1)) * w[j_axis];
    } else {
      acc += w[j_axis] * averaged_pairing(functional, sig.element(k - 1), w);
    }
    out[k] = acc;
  }
  return out;
}

double ito_iterated_sum(const CadlagSamplePath& path,
                        const WordCombination& functional, Letter j,
                        const SignaturePath& sig) {
  return ito_iterated_sum_path(path, functional, j, sig).back();
}

}  // namespace sigmkt
