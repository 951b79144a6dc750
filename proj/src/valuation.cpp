#include "sigmkt/valuation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigmkt {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kRidgeFloor = 1e-10;

double factorial(std::size_t n) {
  double v = 1.0;
  for (std::size_t i = 2; i <= n; ++i) v *= double(i);
  return v;
}

// The strategy formula grouped per trailing word J3 of the triple
// decompositions of the payoff lift: one node evaluation is one functional
// pairing against the left-limit signature and one polynomial in the
// remaining horizon per group. The middle word only contributes through the
// single Brownian letter (weight ell_w) or an all-positive block J2 (weight
// ell_nu times int x^{S(J2)+1} F(dx) / |J2|!).
struct HedgeEngine {
  const SigModelParams* params = nullptr;
  WordCombination lift;
  WordCombination representation;
  std::vector<std::pair<WordCombination, std::vector<double>>> numerator;
  double second_moment = 0.0;
  int needed_level = 0;

  double theta(const TensorElement& sig, double horizon, std::size_t node,
               double node_time) const {
    const double w = eval(params->ell_w(), sig);
    const double v = eval(params->ell_nu(), sig);
    const double den = w * w + v * v * second_moment;
    if (den < kDenominatorFloor)
      throw std::runtime_error(
          "hedge denominator " + std::to_string(den) +
          " fell below the floor 1e-12 at node " + std::to_string(node) +
          " (time " + std::to_string(node_time) + "): the model is "
          "degenerate there");
    double num = 0.0;
    for (const auto& [functional, poly] : numerator) {
      double p = 0.0;
      for (std::size_t k = poly.size(); k-- > 0;) p = p * horizon + poly[k];
      num += eval(functional, sig) * p;
    }
    return num / den;
  }
};

void check_model_inputs(const SigModelParams& params,
                        const LevyTriplet& triplet, double maturity,
                        const char* caller) {
  if (!(triplet.alphabet() == params.alphabet()))
    throw std::invalid_argument(
        std::string(caller) +
        ": triplet alphabet does not match the model's moment alphabet");
  if (!(maturity > 0.0))
    throw std::invalid_argument(std::string(caller) +
                                ": maturity must be positive");
}

PrimaryDecomposition decompose(const LevyTriplet& triplet,
                               const char* caller) {
  try {
    return primary_decomposition(triplet);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(caller) + ": " + e.what());
  }
}

HedgeEngine build_engine(const SigPayoff& payoff, const SigModelParams& params,
                         const LevyTriplet& triplet, double maturity,
                         const char* caller) {
  check_model_inputs(params, triplet, maturity, caller);
  const PrimaryDecomposition prim = decompose(triplet, caller);

  HedgeEngine eng;
  eng.params = &params;
  eng.lift = payoff_lift(payoff, params);
  eng.representation = sig_model_representation(params);
  eng.second_moment = scalar_moment(prim.jumps, 2);

  std::map<Word, WordCombination> groups;
  int trailing_level = 0;
  for (const auto& [u, cu] : eng.lift.terms()) {
    const std::size_t len = u.size();
    for (std::size_t a = 0; a <= len; ++a) {
      const WordCombination left(u.prefix(a));
      for (std::size_t b = a + 1; b <= len; ++b) {
        const Word middle = u.suffix(a).prefix(b - a);
        double weight;
        const WordCombination* ell;
        if (middle.size() == 1 && middle[0] == brownian_letter) {
          weight = cu;
          ell = &params.ell_w();
        } else if (middle.all_letters_positive()) {
          weight = cu *
                   scalar_moment(prim.jumps, int(middle.letter_sum()) + 1) /
                   factorial(middle.size());
          ell = &params.ell_nu();
        } else {
          continue;
        }
        const Word trailing = u.suffix(b);
        trailing_level = std::max(trailing_level, int(trailing.size()));
        WordCombination& slot = groups[trailing];
        slot = add(slot, scale(shuffle(left, *ell), weight));
      }
    }
  }

  const TensorElement generator = levy_generator(triplet, trailing_level);
  for (const auto& [trailing, functional] : groups) {
    if (functional.empty()) continue;
    eng.numerator.emplace_back(functional,
                               word_expectation_polynomial(generator, trailing));
  }

  std::size_t needed = std::max(
      {eng.lift.max_word_length(), eng.representation.max_word_length(),
       params.ell_w().max_word_length(), params.ell_nu().max_word_length()});
  for (const auto& [functional, poly] : eng.numerator)
    needed = std::max(needed, functional.max_word_length());
  eng.needed_level = int(needed);
  return eng;
}

void check_signature_path(const SignaturePath& sig, const HedgeEngine& eng,
                          double maturity, const char* caller) {
  if (sig.node_count() == 0)
    throw std::invalid_argument(std::string(caller) +
                                ": empty signature path");
  if (!(sig.element(0).alphabet() == eng.params->alphabet()))
    throw std::invalid_argument(
        std::string(caller) +
        ": signature alphabet does not match the model's moment alphabet");
  if (sig.level() < eng.needed_level)
    throw std::invalid_argument(
        std::string(caller) + ": signature level " +
        std::to_string(sig.level()) + " is below the required level " +
        std::to_string(eng.needed_level));
  if (sig.time(sig.node_count() - 1) > maturity)
    throw std::invalid_argument(std::string(caller) +
                                ": signature path runs past the maturity");
}

// Left-point discretized gains sum theta dS along a signature path, with
// theta taken from the signature value at the cell's starting node (the
// left limit of the jump when that node closes one) and S read off the
// price representation.
double discretized_gains(const HedgeEngine& eng, const SignaturePath& sig,
                         double maturity) {
  double gains = 0.0;
  double prev_price = eval(eng.representation, sig.element(0));
  for (std::size_t k = 1; k < sig.node_count(); ++k) {
    const double theta = eng.theta(sig.element(k - 1),
                                   maturity - sig.time(k - 1), k - 1,
                                   sig.time(k - 1));
    const double price = eval(eng.representation, sig.element(k));
    gains += theta * (price - prev_price);
    prev_price = price;
  }
  return gains;
}

}  // namespace

double price_sig_payoff(const SigPayoff& payoff, const SigModelParams& params,
                        const LevyTriplet& triplet, double maturity) {
  check_model_inputs(params, triplet, maturity, "price_sig_payoff");
  decompose(triplet, "price_sig_payoff");
  const WordCombination lift = payoff_lift(payoff, params);
  const TensorElement expected =
      expected_signature(triplet, maturity, int(lift.max_word_length()));
  return eval(lift, expected);
}

McMoments mc_price(const SigPayoff& payoff, const SigModelParams& params,
                   const LevyTriplet& triplet, double maturity,
                   std::uint64_t paths, int steps, std::uint64_t seed,
                   int threads) {
  check_model_inputs(params, triplet, maturity, "mc_price");
  decompose(triplet, "mc_price");
  const int primary_level = params.ell_degree();
  const int price_level = payoff.max_length();
  return mc_run(paths, 1, seed, threads,
                [&](std::uint64_t, std::uint64_t path_seed, double* out) {
                  const SimulationGrid grid =
                      simulate_grid(triplet, maturity, steps, path_seed);
                  const CadlagSamplePath x = simulate_levy(triplet, grid);
                  const SignaturePath xsig = marcus_signature(x, primary_level);
                  const CadlagSamplePath s =
                      simulate_model_direct(params, x, xsig);
                  out[0] = eval(payoff.terms(),
                                marcus_terminal_signature(s, price_level));
                });
}

HedgeReport hedge_strategy(const SigPayoff& payoff,
                           const SigModelParams& params,
                           const LevyTriplet& triplet, double maturity,
                           const SignaturePath& primary_sig) {
  const HedgeEngine eng =
      build_engine(payoff, params, triplet, maturity, "hedge_strategy");
  check_signature_path(primary_sig, eng, maturity, "hedge_strategy");

  HedgeReport report;
  report.v_star = price_sig_payoff(payoff, params, triplet, maturity);
  report.theta_path.resize(primary_sig.node_count());
  for (std::size_t k = 0; k < primary_sig.node_count(); ++k)
    report.theta_path[k] =
        eng.theta(primary_sig.left_limit(k), maturity - primary_sig.time(k),
                  k, primary_sig.time(k));

  const double payout =
      eval(eng.lift, primary_sig.element(primary_sig.node_count() - 1));
  const double shortfall =
      payout - report.v_star - discretized_gains(eng, primary_sig, maturity);
  report.residual_variance = shortfall * shortfall;
  return report;
}

HedgePnl hedge_pnl_mc(const SigPayoff& payoff, const SigModelParams& params,
                      const LevyTriplet& triplet, double maturity,
                      std::uint64_t paths, int steps, std::uint64_t seed,
                      int threads) {
  const HedgeEngine eng =
      build_engine(payoff, params, triplet, maturity, "hedge_pnl_mc");
  const double v_star = price_sig_payoff(payoff, params, triplet, maturity);
  const McMoments moments = mc_run(
      paths, 2, seed, threads,
      [&](std::uint64_t, std::uint64_t path_seed, double* out) {
        const SimulationGrid grid =
            simulate_grid(triplet, maturity, steps, path_seed);
        const CadlagSamplePath x = simulate_levy(triplet, grid);
        const SignaturePath sig = marcus_signature(x, eng.needed_level);
        const double payout =
            eval(eng.lift, sig.element(sig.node_count() - 1));
        const double unhedged = payout - v_star;
        const double hedged =
            unhedged - discretized_gains(eng, sig, maturity);
        out[0] = unhedged * unhedged;
        out[1] = hedged * hedged;
      });
  return {moments.mean[0], moments.mean[1]};
}

FitResult fit_path_functional(const std::vector<CadlagSamplePath>& paths,
                              const std::vector<double>& targets, int level) {
  if (paths.empty())
    throw std::invalid_argument("fit_path_functional: no sample paths");
  if (targets.size() != paths.size())
    throw std::invalid_argument(
        "fit_path_functional: one target per path required");
  if (level < 0)
    throw std::invalid_argument("fit_path_functional: negative level");
  const Alphabet alphabet = paths.front().alphabet();
  for (const CadlagSamplePath& p : paths)
    if (!(p.alphabet() == alphabet))
      throw std::invalid_argument(
          "fit_path_functional: sample paths mix alphabets");

  const std::vector<Word> words = alphabet.words_up_to(level);
  const Eigen::Index rows = Eigen::Index(paths.size());
  const Eigen::Index cols = Eigen::Index(words.size());
  if (rows < cols)
    std::cerr << "fit_path_functional: " << rows << " samples for " << cols
              << " features; the fit is underdetermined\n";

  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const TensorElement sig = marcus_terminal_signature(paths[i], level);
    for (Eigen::Index j = 0; j < cols; ++j)
      design(i, j) = eval(WordCombination(words[j]), sig);
    target(i) = targets[i];
  }

  FitResult out;
  Eigen::VectorXd coeffs;
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols) {
    // Degenerate design (time words are deterministic at a common horizon,
    // so this is the usual case): ridge-regularized normal equations.
    out.ridge_used = true;
    Eigen::MatrixXd normal = design.transpose() * design;
    normal.diagonal().array() += kRidgeFloor;
    coeffs = normal.ldlt().solve(design.transpose() * target);
  } else {
    coeffs = qr.solve(target);
  }
  out.rms_residual =
      std::sqrt((design * coeffs - target).squaredNorm() / double(rows));
  for (Eigen::Index j = 0; j < cols; ++j)
    out.functional.add_term(words[j], coeffs(j));
  return out;
}

}  // namespace sigmkt
