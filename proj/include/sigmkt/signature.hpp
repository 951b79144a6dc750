#ifndef SIGMKT_SIGNATURE_HPP
#define SIGMKT_SIGNATURE_HPP

#include <vector>

#include "sigmkt/path.hpp"
#include "sigmkt/tensor.hpp"
#include "sigmkt/word_combination.hpp"

namespace sigmkt {

// Group-valued signature of a cadlag path along its nodes: element k is the
// signature over [0, t_k]. Jump transitions contribute exp of the jump, so
// the sequence is the minimal multiplicative (Marcus) lift.
class SignaturePath {
public:
  SignaturePath() = default;
  SignaturePath(std::vector<double> times, std::vector<TensorElement> elements,
                std::vector<bool> jump_flags);

  std::size_t node_count() const { return times_.size(); }
  int level() const { return elements_.empty() ? 0 : elements_.front().level(); }
  double time(std::size_t node) const { return times_[node]; }
  bool is_jump(std::size_t node) const { return jump_flags_[node]; }
  const TensorElement& element(std::size_t node) const { return elements_[node]; }
  const std::vector<TensorElement>& elements() const { return elements_; }

  // Signature element just before node k: for a jump node this is the value
  // at its twin node, otherwise the path is continuous there.
  const TensorElement& left_limit(std::size_t node) const {
    return (jump_flags_[node] && node > 0) ? elements_[node - 1] : elements_[node];
  }

  // Node index of a given time (the last node carrying that time).
  std::size_t node_at_time(double t) const;

private:
  std::vector<double> times_;
  std::vector<TensorElement> elements_;
  std::vector<bool> jump_flags_;
};

// Signature over [0, t_k] for every node, as the ordered product of
// exponentials of segment increments and jump increments.
SignaturePath marcus_signature(const CadlagSamplePath& path, int level);
// Only the terminal signature, streamed without storing the path of tensors.
TensorElement marcus_terminal_signature(const CadlagSamplePath& path, int level);

// Chen increment X_{s,t} = X_s^{-1} (x) X_t for node times s <= t.
TensorElement signature_increment(const SignaturePath& sig, double s, double t);

// Integral of the word-combination functional of the running signature
// against component j of the path:
//   int <f, X_{u-}> dX^j_u  over (0, t_k] for every node k.
// Linear-segment spans are integrated in closed form (the integrand is a
// polynomial in time there), jump transitions contribute the left limit times
// the component jump, and the Brownian letter j = 0 uses left-point Ito sums
// on the stored grid.
std::vector<double> ito_iterated_sum_path(const CadlagSamplePath& path,
                                          const WordCombination& functional,
                                          Letter j, const SignaturePath& sig);
// Terminal value of the same integral.
double ito_iterated_sum(const CadlagSamplePath& path,
                        const WordCombination& functional, Letter j,
                        const SignaturePath& sig);

// <f, base (x) G(w)> where G(w) = int_0^1 exp(tau w) dtau truncated at the
// level of base; w is a level-one increment given per axis. This is the exact
// time average of <f, base (x) exp(tau w)> over tau in [0, 1].
double averaged_pairing(const WordCombination& f, const TensorElement& base,
                        const std::vector<double>& w);

}  // namespace sigmkt

#endif
