#ifndef SIGMKT_CONFIG_HPP
#define SIGMKT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sigmkt/levy.hpp"
#include "sigmkt/market_sim.hpp"
#include "sigmkt/word_calculus.hpp"
#include "sigmkt/word_combination.hpp"

namespace sigmkt {

// One experiment read from a JSON file with blocks model / market /
// simulation / task. Word tables map dot-separated words ("-1.0.1", "@" for
// the empty word) to coefficients. Unknown keys are rejected so typos
// cannot silently change an experiment.
struct RunConfig {
  // model
  double s0 = 1.0;
  WordCombination ell_w;
  WordCombination ell_nu;
  // market
  double brownian_variance = 0.0;
  std::vector<ScalarJump> atoms;
  int moment_count = 1;  // K, the top moment letter
  int trunc_level = 1;   // L, the working signature level
  // simulation
  double horizon = 1.0;
  int steps = 1;
  std::uint64_t paths = 1;
  std::uint64_t seed = 0;
  // task (optional block)
  WordCombination payoff;
  int fit_level = 1;
  std::string fit_target = "running-max";
  bool has_measure_change = false;
  MeasureChangeSpec measure_change;

  // Views with all structural bounds validated; errors cite the violated
  // inequality.
  SigModelParams model_params() const;
  LevyTriplet market_triplet() const;
  SigPayoff sig_payoff() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& file_path);

}  // namespace sigmkt

#endif
