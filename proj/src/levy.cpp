#include "sigmkt/levy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sigmkt {

double scalar_moment(const std::vector<ScalarJump>& jumps, int power) {
  if (power < 0) throw std::invalid_argument("scalar_moment: negative power");
  double s = 0.0;
  for (const ScalarJump& j : jumps) s += j.intensity * std::pow(j.size, power);
  return s;
}

LevyTriplet::LevyTriplet(Alphabet alphabet, std::vector<double> drift,
                         std::vector<std::vector<double>> covariance,
                         std::vector<JumpAtom> atoms)
    : alphabet_(std::move(alphabet)),
      drift_(std::move(drift)),
      covariance_(std::move(covariance)),
      atoms_(std::move(atoms)) {
  const std::size_t a = alphabet_.size();
  if (a == 0) throw std::invalid_argument("LevyTriplet: empty alphabet");
  if (drift_.size() != a)
    throw std::invalid_argument("LevyTriplet: drift dimension mismatch");
  if (covariance_.size() != a)
    throw std::invalid_argument("LevyTriplet: covariance must be square");
  for (const auto& row : covariance_) {
    if (row.size() != a)
      throw std::invalid_argument("LevyTriplet: covariance must be square");
  }

  Eigen::MatrixXd c(a, a);
  double scale = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) {
      c(i, j) = covariance_[i][j];
      scale = std::max(scale, std::abs(c(i, j)));
    }
  }
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("LevyTriplet: covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, scale))
    throw std::invalid_argument(
        "LevyTriplet: covariance is not positive semidefinite");

  for (const JumpAtom& atom : atoms_) {
    if (atom.displacement.size() != a)
      throw std::invalid_argument("LevyTriplet: atom dimension mismatch");
    if (!(atom.intensity >= 0.0))
      throw std::invalid_argument("LevyTriplet: atom intensity must be >= 0");
  }

  if (alphabet_.contains(time_letter)) {
    const std::size_t tau = alphabet_.axis_of(time_letter);
    if (drift_[tau] != 1.0)
      throw std::invalid_argument("LevyTriplet: clock drift must be 1");
    for (std::size_t j = 0; j < a; ++j) {
      if (covariance_[tau][j] != 0.0 || covariance_[j][tau] != 0.0)
        throw std::invalid_argument(
            "LevyTriplet: clock component cannot carry covariance");
    }
    for (const JumpAtom& atom : atoms_) {
      if (atom.displacement[tau] != 0.0)
        throw std::invalid_argument(
            "LevyTriplet: clock component cannot jump");
    }
  }
}

LevyTriplet primary_process_triplet(int max_moment, double brownian_variance,
                                    const std::vector<ScalarJump>& jumps) {
  if (max_moment < 1)
    throw std::invalid_argument("primary_process_triplet: max_moment < 1");
  if (brownian_variance < 0.0)
    throw std::invalid_argument(
        "primary_process_triplet: negative Brownian variance");
  const Alphabet alph = Alphabet::primary(max_moment);
  const std::size_t a = alph.size();

  std::vector<double> drift(a, 0.0);
  drift[alph.axis_of(time_letter)] = 1.0;

  std::vector<std::vector<double>> cov(a, std::vector<double>(a, 0.0));
  cov[alph.axis_of(brownian_letter)][alph.axis_of(brownian_letter)] =
      brownian_variance;

  std::vector<JumpAtom> atoms;
  atoms.reserve(jumps.size());
  for (const ScalarJump& j : jumps) {
    JumpAtom atom;
    atom.intensity = j.intensity;
    atom.displacement.assign(a, 0.0);
    double p = 1.0;
    for (int k = 1; k <= max_moment; ++k) {
      p *= j.size;
      atom.displacement[alph.axis_of(k)] = p;
    }
    // Letter 1 is compensated, so its mean rate is zero; higher moment
    // letters carry raw power sums. Summing the displacement entries keeps
    // the compensated drift of every moment component at an exact zero.
    for (int k = 2; k <= max_moment; ++k)
      drift[alph.axis_of(k)] += atom.intensity * atom.displacement[alph.axis_of(k)];
    atoms.push_back(std::move(atom));
  }
  return LevyTriplet(alph, std::move(drift), std::move(cov), std::move(atoms));
}

PrimaryDecomposition primary_decomposition(const LevyTriplet& triplet) {
  const Alphabet& a = triplet.alphabet();
  const int max_moment = int(a.size()) - 2;
  if (max_moment < 1 || !(a == Alphabet::primary(max_moment)))
    throw std::invalid_argument(
        "triplet alphabet is not a moment alphabet {-1, 0, 1, ..., K}");
  PrimaryDecomposition out;
  out.max_moment = max_moment;
  const std::size_t brownian_axis = a.axis_of(brownian_letter);
  const std::size_t jump_axis = a.axis_of(Letter(1));
  out.brownian_variance = triplet.covariance()[brownian_axis][brownian_axis];
  out.jumps.reserve(triplet.atoms().size());
  for (const JumpAtom& atom : triplet.atoms())
    out.jumps.push_back({atom.displacement[jump_axis], atom.intensity});
  // The rebuilt triplet must agree bit for bit: drift and displacements are
  // product chains of the scalar sizes, so any mismatch means the input was
  // not a moment lift.
  const LevyTriplet rebuilt =
      primary_process_triplet(max_moment, out.brownian_variance, out.jumps);
  bool same = rebuilt.drift() == triplet.drift() &&
              rebuilt.covariance() == triplet.covariance();
  for (std::size_t i = 0; same && i < out.jumps.size(); ++i)
    same = rebuilt.atoms()[i].displacement == triplet.atoms()[i].displacement &&
           rebuilt.atoms()[i].intensity == triplet.atoms()[i].intensity;
  if (!same)
    throw std::invalid_argument(
        "triplet was not built by primary_process_triplet");
  return out;
}

TensorElement levy_generator(const LevyTriplet& triplet, int level) {
  const Alphabet& alph = triplet.alphabet();
  const std::size_t a = alph.size();
  TensorElement q = TensorElement::zero(alph, level);
  if (level >= 1) q.level_block(1) = triplet.drift();
  if (level >= 2) {
    auto& lvl2 = q.level_block(2);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j)
        lvl2[i * a + j] += 0.5 * triplet.covariance()[i][j];
  }
  for (const JumpAtom& atom : triplet.atoms()) {
    std::vector<double> power = atom.displacement;  // x^((x)n), built up
    double factorial = 1.0;
    for (int n = 2; n <= level; ++n) {
      std::vector<double> next(power.size() * a);
      for (std::size_t i = 0; i < power.size(); ++i)
        for (std::size_t j = 0; j < a; ++j)
          next[i * a + j] = power[i] * atom.displacement[j];
      power = std::move(next);
      factorial *= n;
      auto& blk = q.level_block(n);
      const double w = atom.intensity / factorial;
      for (std::size_t i = 0; i < power.size(); ++i) blk[i] += w * power[i];
    }
  }
  return q;
}

TensorElement expected_signature(const TensorElement& generator, double t) {
  return tensor_exp(scale(generator, t));
}

TensorElement expected_signature(const LevyTriplet& triplet, double t,
                                 int level) {
  return expected_signature(levy_generator(triplet, level), t);
}

TensorElement conditional_expected_signature(const TensorElement& sig_s,
                                             const TensorElement& generator,
                                             double dt) {
  return tensor_product(sig_s, expected_signature(generator, dt));
}

WordCombination generator_apply(const TensorElement& generator,
                                const Word& w) {
  if (int(w.size()) > generator.level())
    throw std::invalid_argument("generator_apply: word " + w.to_string() +
                                " exceeds the generator truncation level " +
                                std::to_string(generator.level()));
  WordCombination out;
  for (std::size_t m = 0; m < w.size(); ++m)
    out.add_term(w.prefix(m), generator.coeff(w.suffix(m)));
  return out;
}

std::vector<double> word_expectation_polynomial(const TensorElement& generator,
                                                const Word& w) {
  const std::size_t n = w.size();
  if (int(n) > generator.level())
    throw std::invalid_argument(
        "word_expectation_polynomial: word " + w.to_string() +
        " exceeds the generator truncation level " +
        std::to_string(generator.level()));
  // best[k][m] = <e_{w[0:m]}, q^((x)k)> over splits into k nonempty pieces.
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n + 1, 0.0));
  d[0][0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t m = k; m <= n; ++m) {
      double s = 0.0;
      for (std::size_t l = k - 1; l < m; ++l) {
        if (d[k - 1][l] == 0.0) continue;
        s += d[k - 1][l] *
             generator.coeff(Word(std::vector<Letter>(
                 w.letters().begin() + l, w.letters().begin() + m)));
      }
      d[k][m] = s;
    }
  }
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[0] = (n == 0) ? 1.0 : 0.0;
  double factorial = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    factorial *= double(k);
    coeffs[k] = d[k][n] / factorial;
  }
  return coeffs;
}

double expected_word_value(const TensorElement& generator, const Word& w,
                           double t) {
  const std::vector<double> poly = word_expectation_polynomial(generator, w);
  double v = 0.0;
  for (std::size_t k = poly.size(); k-- > 0;) v = v * t + poly[k];
  return v;
}

}  // namespace sigmkt
