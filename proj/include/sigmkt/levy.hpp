#ifndef SIGMKT_LEVY_HPP
#define SIGMKT_LEVY_HPP

#include <vector>

#include "sigmkt/tensor.hpp"
#include "sigmkt/word.hpp"
#include "sigmkt/word_combination.hpp"

namespace sigmkt {

// One atom of a finite-activity jump measure: the process jumps by
// displacement at rate intensity.
struct JumpAtom {
  std::vector<double> displacement;  // per axis of the alphabet
  double intensity = 0.0;
};

// A scalar jump of the underlying: size x at rate lambda. The driving
// process lifts it to the moment vector (0, 0, x, x^2, ..., x^K).
struct ScalarJump {
  double size = 0.0;
  double intensity = 0.0;
};

// sum_i lambda_i x_i^power over scalar jumps.
double scalar_moment(const std::vector<ScalarJump>& jumps, int power);

// Finite-activity Levy triplet (b, C, F) over an alphabet, with F a finite
// sum of atoms. b is the full mean rate: E[X_t] = b t. C must be symmetric
// positive semidefinite and intensities nonnegative. If the clock letter -1
// is part of the alphabet, that component must be deterministic time: drift
// 1, no covariance, no jumps.
class LevyTriplet {
public:
  LevyTriplet(Alphabet alphabet, std::vector<double> drift,
              std::vector<std::vector<double>> covariance,
              std::vector<JumpAtom> atoms);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<double>& drift() const { return drift_; }
  const std::vector<std::vector<double>>& covariance() const {
    return covariance_;
  }
  const std::vector<JumpAtom>& atoms() const { return atoms_; }

private:
  Alphabet alphabet_;
  std::vector<double> drift_;
  std::vector<std::vector<double>> covariance_;
  std::vector<JumpAtom> atoms_;
};

// The triplet of the driving process (t, W, compensated jumps, moment sums):
// alphabet {-1, 0, 1, ..., max_moment}, Brownian variance on letter 0, jump
// atoms lifted to (0, 0, x, ..., x^K). Letter 1 carries the compensated jump
// sum, so its drift is zero; letters k >= 2 carry raw power sums with drift
// sum lambda x^k.
LevyTriplet primary_process_triplet(int max_moment, double brownian_variance,
                                    const std::vector<ScalarJump>& jumps);

// Scalar data recovered from a triplet built by primary_process_triplet.
// Recovery rejects any triplet the builder could not have produced, so the
// moment structure of the components is guaranteed downstream.
struct PrimaryDecomposition {
  int max_moment = 0;
  double brownian_variance = 0.0;
  std::vector<ScalarJump> jumps;
};
PrimaryDecomposition primary_decomposition(const LevyTriplet& triplet);

// Generator element q with <e_empty, q> = 0, level one b, level two
// (C + sum lambda x (x) x)/2 and level n >= 3 equal to
// (1/n!) sum lambda x^((x)n). The expected signature is exp(t q).
TensorElement levy_generator(const LevyTriplet& triplet, int level);

// E[signature over [0, t]] = exp(t q), truncated at the given level.
TensorElement expected_signature(const LevyTriplet& triplet, double t,
                                 int level);
TensorElement expected_signature(const TensorElement& generator, double t);

// E[signature over [0, s + dt] | F_s] = sig_s (x) exp(dt q).
TensorElement conditional_expected_signature(const TensorElement& sig_s,
                                             const TensorElement& generator,
                                             double dt);

// The generator acting on the word functional: d/dt E<e_w, X_t> =
// E<(A e_w), X_t> with A e_w = sum over splits w = w1 w2, w2 nonempty, of
// <e_w2, q> e_w1.
WordCombination generator_apply(const TensorElement& generator, const Word& w);

// Coefficients of the polynomial t -> E<e_w, X_t>; entry k multiplies t^k
// and equals <e_w, q^((x)k)> / k!. Degree is at most the word length.
std::vector<double> word_expectation_polynomial(const TensorElement& generator,
                                                const Word& w);
double expected_word_value(const TensorElement& generator, const Word& w,
                           double t);

}  // namespace sigmkt

#endif
