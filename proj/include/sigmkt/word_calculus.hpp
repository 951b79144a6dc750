#ifndef SIGMKT_WORD_CALCULUS_HPP
#define SIGMKT_WORD_CALCULUS_HPP

#include <boost/rational.hpp>

#include "sigmkt/word.hpp"
#include "sigmkt/word_combination.hpp"

namespace sigmkt {

using Rational = boost::rational<long long>;

// alpha(r, k) = sum over compositions of r into k positive parts (j_1..j_k)
// of prod 1/(j_i + 1)!. Zero for k > r. Exact rational arithmetic, memoized.
Rational alpha_coefficient(int r, int k);
// alpha(r) = sum_{k=1}^{r} (-1)^k alpha(r, k). Equals B_r / r! (Bernoulli).
Rational alpha_sum(int r);
double alpha_value(int r);

// The word transform (e_I; e_j)~ over the moment alphabet {-1,0,...,N}:
//   e_I (x) e_j
//   - 1/2 e_{I'} (x) e_{-1}                 when the last letter of I and j are 0
//   + sum over suffix splits I = I1 I2 with I2 nonempty and positive-lettered
//       of alpha(|I2|) e_{I1} (x) e_{S(I2)+j}   when j >= 1.
// It turns integration against component j into a signature functional:
// int <e_I, X_{s-}> dX^j = <(e_I; e_j)~, X_t> on the lifted primary process.
// Every resulting letter S(I2)+j must stay within the moment alphabet; a
// merge beyond the top letter N throws (sharp form of the n d + j <= N
// bound, with n = |I| and d the largest positive letter of I).
WordCombination tilde_transform(const Word& i, Letter j, int max_moment);
WordCombination tilde_transform(const WordCombination& c, Letter j,
                                int max_moment);

// Coefficients of a signature market model: the price moves by
// dS = <ell_w, X_{t-}> dW + <ell_nu, X_{t-}> d(compensated jumps),
// with both integrands linear functionals of the lifted primary process.
// n is the longest coefficient word, d the largest positive letter used;
// the structural condition n d + 1 <= N must hold for the representation
// below to exist within the moment alphabet.
class SigModelParams {
public:
  SigModelParams(double s0, WordCombination ell_w, WordCombination ell_nu,
                 int max_moment, int trunc_level);

  double s0() const { return s0_; }
  const WordCombination& ell_w() const { return ell_w_; }
  const WordCombination& ell_nu() const { return ell_nu_; }
  int max_moment() const { return max_moment_; }
  int trunc_level() const { return trunc_level_; }
  int ell_degree() const { return ell_degree_; }          // n
  int ell_top_letter() const { return ell_top_letter_; }  // d
  Alphabet alphabet() const { return Alphabet::primary(max_moment_); }

private:
  double s0_ = 0.0;
  WordCombination ell_w_;
  WordCombination ell_nu_;
  int max_moment_ = 1;
  int trunc_level_ = 1;
  int ell_degree_ = 0;
  int ell_top_letter_ = 0;
};

// A payoff that is a linear functional of the signature of the time-extended
// price path: words over the letters {-1, 1} only.
class SigPayoff {
public:
  SigPayoff() = default;
  explicit SigPayoff(WordCombination terms);
  const WordCombination& terms() const { return terms_; }
  int max_length() const { return int(terms_.max_word_length()); }

private:
  WordCombination terms_;
};

// S_t as a linear functional of the lifted primary process:
// s0 e_empty + tilde(ell_w, 0) + tilde(ell_nu, 1).
WordCombination sig_model_representation(const SigModelParams& params);

// The payoff lift U_I: <U_I, X-signature at T> = <e_I, signature of the
// time-extended price path at T>, computed by recursion on the length of I.
// Requires letters of I in {-1, 1} and N >= m(nd+1) with m = |I|.
WordCombination payoff_lift(const Word& payoff_word,
                            const SigModelParams& params);
WordCombination payoff_lift(const SigPayoff& payoff,
                            const SigModelParams& params);

}  // namespace sigmkt

#endif
