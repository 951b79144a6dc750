#ifndef SIGMKT_VALUATION_HPP
#define SIGMKT_VALUATION_HPP

#include <cstdint>
#include <vector>

#include "sigmkt/levy.hpp"
#include "sigmkt/market_sim.hpp"
#include "sigmkt/path.hpp"
#include "sigmkt/signature.hpp"
#include "sigmkt/word_calculus.hpp"
#include "sigmkt/word_combination.hpp"

namespace sigmkt {

// Quadratic-hedging output along one primary signature path. theta_path[k]
// is the strategy value at node k, computed from the left limit of the
// signature and the closed-form expected signature over the remaining
// horizon. residual_variance is the squared replication shortfall
// (C - v_star - sum theta dS)^2 realised on the supplied path with
// left-point gains; it is a one-sample estimate of the hedging error
// variance (hedge_pnl_mc estimates it properly). denominator_floor_hits
// counts nodes whose denominator fell below the 1e-12 floor; since such a
// node raises an error, a returned report always carries zero.
struct HedgeReport {
  double v_star = 0.0;
  std::vector<double> theta_path;
  double residual_variance = 0.0;
  std::size_t denominator_floor_hits = 0;
};

// Empirical E[(C - v*)^2] without hedging and E[(C - v* - sum theta dS)^2]
// with the optimal strategy, over simulated primary paths.
struct HedgePnl {
  double unhedged_variance = 0.0;
  double hedged_variance = 0.0;
};

// Least-squares fit of a path functional on terminal signature features.
// ridge_used reports whether the design matrix was column-rank deficient and
// the documented ridge floor 1e-10 had to regularize the normal equations.
struct FitResult {
  WordCombination functional;
  double rms_residual = 0.0;
  bool ridge_used = false;
};

// Analytic price E<payoff, signature of the time-extended price path at
// maturity>: the payoff lift paired with the closed-form expected signature
// of the driving process. Requires the triplet to be the moment lift the
// model is driven by.
double price_sig_payoff(const SigPayoff& payoff, const SigModelParams& params,
                        const LevyTriplet& triplet, double maturity);

// Monte Carlo price over simulated model paths: mean[0] / standard_error[0]
// of the payoff against the Marcus signature of the simulated price path.
// Deterministic for a fixed seed, independent of the thread count.
McMoments mc_price(const SigPayoff& payoff, const SigModelParams& params,
                   const LevyTriplet& triplet, double maturity,
                   std::uint64_t paths, int steps, std::uint64_t seed,
                   int threads = 1);

// The explicit mean-variance-optimal hedge along one primary signature
// path. The signature must carry every level the payoff lift, the price
// representation, and the hedge functionals evaluate; an error names the
// required level otherwise. A denominator below 1e-12 at some node is a
// degeneracy of the model there and raises an error naming the node.
HedgeReport hedge_strategy(const SigPayoff& payoff,
                           const SigModelParams& params,
                           const LevyTriplet& triplet, double maturity,
                           const SignaturePath& primary_sig);

// Hedging experiment: simulate primary paths, price-hedge each with the
// optimal strategy under left-point discretized gains, and report the
// empirical unhedged and hedged variances.
HedgePnl hedge_pnl_mc(const SigPayoff& payoff, const SigModelParams& params,
                      const LevyTriplet& triplet, double maturity,
                      std::uint64_t paths, int steps, std::uint64_t seed,
                      int threads = 1);

// Regress target values on all signature words up to the given level,
// evaluated at the terminal node of each path. All paths must share one
// alphabet. Warns on stderr when there are fewer samples than features.
FitResult fit_path_functional(const std::vector<CadlagSamplePath>& paths,
                              const std::vector<double>& targets, int level);

}  // namespace sigmkt

#endif
