// Command line front end: expected signatures, pricing, hedging, simulation
// and path-functional regression for the jump signature market model, all
// driven by one JSON config file.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmkt/config.hpp"
#include "sigmkt/levy.hpp"
#include "sigmkt/market_sim.hpp"
#include "sigmkt/path.hpp"
#include "sigmkt/signature.hpp"
#include "sigmkt/valuation.hpp"
#include "sigmkt/word_calculus.hpp"

namespace {

using namespace sigmkt;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Cli {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;
  int threads = 1;
  bool json_mirror = false;
};

std::string out_path(const Cli& cli, const std::string& name) {
  return (std::filesystem::path(cli.out_dir) / name).string();
}

std::ofstream open_out(const Cli& cli, const std::string& name) {
  std::filesystem::create_directories(cli.out_dir);
  const std::string path = out_path(cli, name);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  return out;
}

void write_mirror(const Cli& cli, const std::string& name,
                  const nlohmann::json& body) {
  if (!cli.json_mirror) return;
  std::ofstream out = open_out(cli, name);
  out << body.dump(2) << "\n";
}

RunConfig load(const Cli& cli) {
  RunConfig cfg = load_run_config(cli.config_path);
  if (cli.has_seed_override) cfg.seed = cli.seed_override;
  return cfg;
}

SigPayoff require_payoff(const RunConfig& cfg, const char* command) {
  if (cfg.payoff.empty())
    throw std::invalid_argument(std::string(command) +
                                " requires a nonempty task.payoff");
  return cfg.sig_payoff();
}

// One simulated primary path with its pairing-ready signature, from the
// first sub-seed of the config seed.
CadlagSamplePath one_primary_path(const RunConfig& cfg,
                                  const LevyTriplet& trip) {
  const SimulationGrid grid =
      simulate_grid(trip, cfg.horizon, cfg.steps, path_seed(cfg.seed, 0));
  return simulate_primary(trip, grid);
}

void run_expected_sig(const Cli& cli) {
  const RunConfig cfg = load(cli);
  cfg.model_params();  // reject structurally invalid word tables up front
  const LevyTriplet trip = cfg.market_triplet();
  const TensorElement es =
      expected_signature(trip, cfg.horizon, cfg.trunc_level);
  const std::vector<Word> words = trip.alphabet().words_up_to(cfg.trunc_level);

  std::ofstream out = open_out(cli, "expected_sig.csv");
  out << "word,value\n";
  nlohmann::json mirror_words;
  for (const Word& w : words) {
    out << w.to_string() << "," << num(es.coeff(w)) << "\n";
    mirror_words[w.to_string()] = es.coeff(w);
  }
  write_mirror(cli, "expected_sig.json",
               {{"horizon", cfg.horizon},
                {"level", cfg.trunc_level},
                {"words", mirror_words}});
  std::printf("wrote %s (%zu words, horizon %s)\n",
              out_path(cli, "expected_sig.csv").c_str(), words.size(),
              num(cfg.horizon).c_str());
}

void run_price(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const SigModelParams params = cfg.model_params();
  const LevyTriplet trip = cfg.market_triplet();
  const SigPayoff payoff = require_payoff(cfg, "price");

  const double analytic = price_sig_payoff(payoff, params, trip, cfg.horizon);
  const McMoments mc = mc_price(payoff, params, trip, cfg.horizon, cfg.paths,
                                cfg.steps, cfg.seed, cli.threads);

  std::ofstream out = open_out(cli, "price_report.csv");
  out << "payoff,analytic,mc_mean,mc_se\n";
  out << cfg.payoff.to_string() << "," << num(analytic) << ","
      << num(mc.mean[0]) << "," << num(mc.standard_error[0]) << "\n";
  write_mirror(cli, "price_report.json",
               {{"payoff", cfg.payoff.to_string()},
                {"analytic", analytic},
                {"mc_mean", mc.mean[0]},
                {"mc_se", mc.standard_error[0]},
                {"paths", cfg.paths},
                {"steps", cfg.steps},
                {"seed", cfg.seed}});
  std::printf("analytic %s\nmc %s +- %s (%llu paths)\n", num(analytic).c_str(),
              num(mc.mean[0]).c_str(), num(mc.standard_error[0]).c_str(),
              static_cast<unsigned long long>(mc.count));
}

void run_hedge(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const SigModelParams params = cfg.model_params();
  const LevyTriplet trip = cfg.market_triplet();
  const SigPayoff payoff = require_payoff(cfg, "hedge");

  const CadlagSamplePath x = one_primary_path(cfg, trip);
  // Deep enough for every pairing the strategy formula reads: the payoff
  // lift itself and every shuffle of a lift prefix with an ell word.
  const WordCombination lift = payoff_lift(payoff, params);
  const int ell_max =
      static_cast<int>(std::max(params.ell_w().max_word_length(),
                                params.ell_nu().max_word_length()));
  const int sig_level = std::max(
      cfg.trunc_level, static_cast<int>(lift.max_word_length()) + ell_max);
  const SignaturePath sig = marcus_signature(x, sig_level);
  const HedgeReport rep =
      hedge_strategy(payoff, params, trip, cfg.horizon, sig);
  const WordCombination price_rep = sig_model_representation(params);

  std::ofstream out = open_out(cli, "hedge_report.csv");
  out << "time,theta,s_left\n";
  for (std::size_t k = 0; k < sig.node_count(); ++k)
    out << num(sig.time(k)) << "," << num(rep.theta_path[k]) << ","
        << num(eval(price_rep, sig.left_limit(k))) << "\n";
  write_mirror(cli, "hedge_report.json",
               {{"v_star", rep.v_star},
                {"residual_variance", rep.residual_variance},
                {"nodes", sig.node_count()},
                {"seed", cfg.seed}});
  std::printf("v_star %s\nresidual_variance %s (%zu nodes)\n",
              num(rep.v_star).c_str(), num(rep.residual_variance).c_str(),
              sig.node_count());
}

void run_simulate(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const SigModelParams params = cfg.model_params();
  const LevyTriplet trip = cfg.market_triplet();

  const CadlagSamplePath x = one_primary_path(cfg, trip);
  const SignaturePath xsig = marcus_signature(x, params.ell_degree());
  const CadlagSamplePath s = simulate_model_direct(params, x, xsig);

  std::filesystem::create_directories(cli.out_dir);
  x.write_csv_file(out_path(cli, "primary_path.csv"));
  s.write_csv_file(out_path(cli, "model_path.csv"));
  std::size_t jumps = 0;
  for (std::size_t k = 0; k < x.node_count(); ++k) jumps += x.is_jump(k);
  const double terminal = s.value(s.node_count() - 1, Letter(1));
  write_mirror(cli, "simulate.json",
               {{"nodes", x.node_count()},
                {"jumps", jumps},
                {"terminal_price", terminal},
                {"seed", cfg.seed}});
  std::printf("wrote %s and %s (%zu nodes, %zu jumps, terminal price %s)\n",
              out_path(cli, "primary_path.csv").c_str(),
              out_path(cli, "model_path.csv").c_str(), x.node_count(), jumps,
              num(terminal).c_str());
}

void run_fit(const Cli& cli) {
  const RunConfig cfg = load(cli);
  const SigModelParams params = cfg.model_params();
  const LevyTriplet trip = cfg.market_triplet();
  if (cfg.fit_target == "payoff") require_payoff(cfg, "fit with payoff target");

  std::vector<CadlagSamplePath> paths;
  std::vector<double> targets;
  paths.reserve(cfg.paths);
  targets.reserve(cfg.paths);
  const int payoff_level = cfg.payoff.max_word_length();
  for (std::uint64_t i = 0; i < cfg.paths; ++i) {
    const SimulationGrid grid =
        simulate_grid(trip, cfg.horizon, cfg.steps, path_seed(cfg.seed, i));
    const CadlagSamplePath x = simulate_primary(trip, grid);
    const SignaturePath xsig = marcus_signature(x, params.ell_degree());
    CadlagSamplePath s = simulate_model_direct(params, x, xsig);
    if (cfg.fit_target == "terminal") {
      targets.push_back(s.value(s.node_count() - 1, Letter(1)));
    } else if (cfg.fit_target == "running-max") {
      double peak = s.value(0, Letter(1));
      for (std::size_t k = 1; k < s.node_count(); ++k)
        peak = std::max(peak, s.value(k, Letter(1)));
      targets.push_back(peak);
    } else {
      targets.push_back(
          eval(cfg.payoff, marcus_terminal_signature(s, payoff_level)));
    }
    paths.push_back(std::move(s));
  }

  const FitResult fit = fit_path_functional(paths, targets, cfg.fit_level);
  std::ofstream out = open_out(cli, "fit_report.csv");
  out << "word,coefficient\n";
  for (const auto& [word, coeff] : fit.functional.terms())
    out << word.to_string() << "," << num(coeff) << "\n";
  write_mirror(cli, "fit_report.json",
               {{"rms_residual", fit.rms_residual},
                {"ridge_used", fit.ridge_used},
                {"level", cfg.fit_level},
                {"target", cfg.fit_target},
                {"paths", cfg.paths}});
  std::printf("rms_residual %s (%s%llu paths, level %d, target %s)\n",
              num(fit.rms_residual).c_str(), fit.ridge_used ? "ridge, " : "",
              static_cast<unsigned long long>(cfg.paths), cfg.fit_level,
              cfg.fit_target.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jump signature market models: expected signatures, pricing, "
               "quadratic hedging, simulation and path regression"};
  app.require_subcommand(1);

  Cli cli;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out-dir", cli.out_dir, "directory for output files");
    sub->add_option("--seed-override", cli.seed_override,
                    "replace simulation.seed from the config")
        ->each([&](const std::string&) { cli.has_seed_override = true; });
    sub->add_option("--threads", cli.threads, "Monte Carlo worker count")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", cli.json_mirror,
                  "also write a JSON mirror of the report");
  };

  CLI::App* expected = app.add_subcommand(
      "expected-sig", "closed-form expected signature of the market triplet");
  CLI::App* price = app.add_subcommand(
      "price", "analytic and Monte Carlo price of the configured payoff");
  CLI::App* hedge = app.add_subcommand(
      "hedge", "variance-optimal strategy along one simulated path");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "write one primary path and its model price path");
  CLI::App* fit = app.add_subcommand(
      "fit", "regress a path statistic on signature features");
  for (CLI::App* sub : {expected, price, hedge, simulate, fit})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (expected->parsed()) run_expected_sig(cli);
    if (price->parsed()) run_price(cli);
    if (hedge->parsed()) run_hedge(cli);
    if (simulate->parsed()) run_simulate(cli);
    if (fit->parsed()) run_fit(cli);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
