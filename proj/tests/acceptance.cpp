// Desk-scale acceptance battery: one PASS/FAIL line per criterion, exit code
// equals the number of failures. Seeds are fixed so every run is identical.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sigmkt/levy.hpp"
#include "sigmkt/market_sim.hpp"
#include "sigmkt/metrics.hpp"
#include "sigmkt/path.hpp"
#include "sigmkt/signature.hpp"
#include "sigmkt/valuation.hpp"
#include "sigmkt/word_calculus.hpp"
#include "sigmkt/word_combination.hpp"

using namespace sigmkt;

namespace {

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

double max_abs_diff(const TensorElement& a, const TensorElement& b) {
  double m = 0.0;
  for (int n = 0; n <= a.level(); ++n) {
    const std::vector<double>& x = a.level_block(n);
    const std::vector<double>& y = b.level_block(n);
    for (std::size_t i = 0; i < x.size(); ++i)
      m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

std::string fmt(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

SignaturePath primary_signature(const LevyTriplet& trip, double horizon,
                                int steps, std::uint64_t seed, int level) {
  const SimulationGrid grid = simulate_grid(trip, horizon, steps, seed);
  return marcus_signature(simulate_primary(trip, grid), level);
}

WordCombination wc(std::initializer_list<std::pair<Word, double>> terms) {
  WordCombination c;
  for (const auto& [w, v] : terms) c.add_term(w, v);
  return c;
}

// --- 1: Monte Carlo signature means against exp(QT) -------------------------

bool mc_expected_signature(std::string& detail) {
  const LevyTriplet trip =
      primary_process_triplet(1, 1.0, {{1.0, 0.5}, {-0.5, 1.0}});
  const int level = 4;
  const double horizon = 1.0;
  const std::vector<Word> words = trip.alphabet().words_up_to(level);
  const TensorElement want = expected_signature(trip, horizon, level);

  const McMoments mc = mc_run(
      100000, static_cast<int>(words.size()), 2026, 1,
      [&](std::uint64_t, std::uint64_t seed, double* out) {
        const SimulationGrid grid = simulate_grid(trip, horizon, 1000, seed);
        const TensorElement sig =
            marcus_terminal_signature(simulate_primary(trip, grid), level);
        for (std::size_t i = 0; i < words.size(); ++i)
          out[i] = sig.coeff(words[i]);
      });

  std::size_t hits = 0;
  for (std::size_t i = 0; i < words.size(); ++i)
    hits += std::abs(mc.mean[i] - want.coeff(words[i])) <=
            3.0 * mc.standard_error[i];
  const std::size_t need =
      static_cast<std::size_t>(std::ceil(0.95 * double(words.size())));
  detail = fmt("%zu/%zu words within 3 SE (need %zu)", hits, words.size(), need);
  return hits >= need;
}

// --- 2: Poisson second-moment closed form ------------------------------------

bool poisson_closed_form(std::string& detail) {
  double worst = 0.0;
  for (const double lambda : {0.5, 1.0, 2.0}) {
    const LevyTriplet poisson(Alphabet({1}), {lambda}, {{0.0}},
                              {{{1.0}, lambda}});
    for (const double t : {0.5, 1.0}) {
      const double want = (lambda * t + lambda * lambda * t * t) / 2.0;
      const double got =
          expected_signature(poisson, t, 2).coeff(Word{1, 1});
      worst = std::max(worst, std::abs(got - want));
    }
  }
  detail = fmt("max |exp(Qt) - (lt + l^2 t^2)/2| = %.3g", worst);
  return worst <= 1e-12;
}

// --- 3: pathwise tilde-transform identity ------------------------------------

CadlagSamplePath random_jump_drift_path(std::mt19937_64& rng, int max_moment) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double drift = 2.0 * u(rng) - 1.0;

  std::vector<std::pair<double, double>> events;
  const int jumps = 1 + int(rng() % 3);
  for (int i = 0; i < jumps; ++i) {
    const double size = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 0.8 * u(rng));
    events.emplace_back(0.05 + 0.9 * u(rng), size);
  }
  std::sort(events.begin(), events.end());
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].first - events[i - 1].first < 1e-3)
      events[i].first = events[i - 1].first + 1e-3;

  std::vector<double> times{0.0, 1.0};
  for (int i = 0; i < 3; ++i) times.push_back(u(rng));
  for (const auto& e : events) times.push_back(e.first);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  const Alphabet alph = Alphabet::primary(max_moment);
  std::vector<double> moment_sum(max_moment + 1, 0.0);
  auto value_at = [&](double t) {
    std::vector<double> v(alph.size(), 0.0);
    v[alph.axis_of(time_letter)] = t;
    v[alph.axis_of(1)] = drift * t + moment_sum[1];
    for (int k = 2; k <= max_moment; ++k) v[alph.axis_of(k)] = moment_sum[k];
    return v;
  };
  PathBuilder b(alph);
  for (double t : times) {
    b.add_node(t, value_at(t));
    for (const auto& e : events) {
      if (e.first != t) continue;
      double p = 1.0;
      for (int k = 1; k <= max_moment; ++k) {
        p *= e.second;
        moment_sum[k] += p;
      }
      b.add_node(t, value_at(t), true);
    }
  }
  return b.finish();
}

bool tilde_identity(std::string& detail) {
  const int top = 7;  // letter budget for merges of |I| <= 3 words with j
  const std::vector<Word> words = Alphabet({-1, 1, 2}).words_up_to(3);
  std::vector<std::pair<Word, std::vector<WordCombination>>> transformed;
  for (const Word& i : words)
    transformed.push_back({i,
                           {tilde_transform(i, Letter(-1), top),
                            tilde_transform(i, Letter(1), top)}});

  std::mt19937_64 rng(99);
  std::size_t cases = 0, bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const CadlagSamplePath path = random_jump_drift_path(rng, top);
    const SignaturePath sig = marcus_signature(path, 4);
    const TensorElement& terminal = sig.element(sig.node_count() - 1);
    for (const auto& [i, combos] : transformed) {
      int slot = 0;
      for (const Letter j : {Letter(-1), Letter(1)}) {
        const double lhs = ito_iterated_sum(path, WordCombination(i), j, sig);
        const double rhs = eval(combos[slot++], terminal);
        const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        worst = std::max(worst, err);
        ++cases;
        bad += err > 1e-9;
      }
    }
  }
  detail = fmt("%zu/%zu cases within 1e-9 (worst %.3g)", cases - bad, cases,
               worst);
  return bad == 0;
}

// --- 4: Chen relation and the shuffle identity --------------------------------

CadlagSamplePath random_piecewise_path(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PathBuilder b(Alphabet({1, 2}));
  double t = 0.0;
  std::vector<double> v{0.0, 0.0};
  b.add_node(t, v);
  const int segments = 5 + int(rng() % 5);
  for (int s = 0; s < segments; ++s) {
    t += 0.05 + 0.25 * u(rng);
    for (double& x : v) x += 1.2 * u(rng) - 0.6;
    b.add_node(t, v);
    if (u(rng) < 0.3) {
      for (double& x : v) x += u(rng) - 0.5;
      b.add_node(t, v, true);
    }
  }
  return b.finish();
}

bool chen_and_shuffle(std::string& detail) {
  const std::vector<Word> words = Alphabet({1, 2}).words_up_to(4);
  std::vector<std::pair<std::pair<Word, Word>, WordCombination>> pairs;
  for (const Word& i : words)
    for (const Word& j : words)
      if (i.size() + j.size() <= 4 && !i.empty() && !j.empty())
        pairs.push_back({{i, j}, word_shuffle(i, j)});

  std::mt19937_64 rng(4);
  double worst_chen = 0.0, worst_shuffle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const CadlagSamplePath path = random_piecewise_path(rng);
    const SignaturePath sig = marcus_signature(path, 4);
    const std::size_t last = sig.node_count() - 1;
    for (const std::size_t mid : {last / 3, (2 * last) / 3}) {
      // Anchor at the last node of a duplicate-time jump pair, matching the
      // convention of signature_increment.
      const std::size_t at = sig.node_at_time(sig.time(mid));
      const double s = sig.time(at), t = sig.time(last);
      const TensorElement glued =
          tensor_product(sig.element(at), signature_increment(sig, s, t));
      worst_chen = std::max(worst_chen, max_abs_diff(glued, sig.element(last)));
    }
    const TensorElement& terminal = sig.element(last);
    for (const auto& [ij, combo] : pairs) {
      const double prod =
          terminal.coeff(ij.first) * terminal.coeff(ij.second);
      const double err = std::abs(eval(combo, terminal) - prod) /
                         std::max(1.0, std::abs(prod));
      worst_shuffle = std::max(worst_shuffle, err);
    }
  }
  detail = fmt("chen %.3g (tol 1e-12), shuffle %.3g (tol 1e-9)", worst_chen,
               worst_shuffle);
  return worst_chen <= 1e-12 && worst_shuffle <= 1e-9;
}

// --- 5: price representation against direct simulation ------------------------

bool model_representation(std::string& detail) {
  // Pure-jump market: both constructions are exact, so they must agree.
  const LevyTriplet jump_trip =
      primary_process_triplet(3, 0.0, {{0.5, 1.2}, {-0.3, 0.8}});
  const SigModelParams jump_params(1.0, WordCombination{},
                                   wc({{Word{}, 0.2}, {Word{1}, 0.1}}), 3, 4);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SimulationGrid g = simulate_grid(jump_trip, 1.0, 16, path_seed(550, i));
    const CadlagSamplePath path = simulate_primary(jump_trip, g);
    const SignaturePath sig = marcus_signature(path, 4);
    const CadlagSamplePath direct = simulate_model_direct(jump_params, path, sig);
    const std::vector<double> rep =
        evaluate_model_from_signature(jump_params, sig);
    for (std::size_t k = 0; k < rep.size(); ++k)
      worst = std::max(worst, std::abs(rep[k] - direct.value(k, Letter(1))) /
                                  std::max(1.0, std::abs(rep[k])));
  }

  // Brownian market: pooled RMS gap between the left-point Euler price and
  // the exact signature pairing shrinks as the grid is halved.
  const LevyTriplet bm_trip = primary_process_triplet(1, 1.0, {});
  const SigModelParams bm_params(1.0, wc({{Word{}, 0.5}, {Word{0}, 0.3}}),
                                 WordCombination{}, 1, 3);
  std::vector<double> gaps;
  for (const std::size_t stride : {4, 2, 1}) {
    double sum = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < 100; ++i) {
      const SimulationGrid fine = simulate_grid(bm_trip, 1.0, 400, path_seed(551, i));
      const CadlagSamplePath fine_path = simulate_primary(bm_trip, fine);
      PathBuilder builder(bm_trip.alphabet());
      for (std::size_t k = 0; k < fine_path.node_count(); k += stride)
        builder.add_node(fine_path.time(k), fine_path.value(k));
      const CadlagSamplePath sub = builder.finish();
      const SignaturePath sig = marcus_signature(sub, 3);
      const CadlagSamplePath direct = simulate_model_direct(bm_params, sub, sig);
      const std::vector<double> rep = evaluate_model_from_signature(bm_params, sig);
      for (std::size_t k = 0; k < rep.size(); ++k) {
        const double d = rep[k] - direct.value(k, Letter(1));
        sum += d * d;
        ++count;
      }
    }
    gaps.push_back(std::sqrt(sum / double(count)));
  }
  detail = fmt("pure-jump gap %.3g; brownian RMS %.3g > %.3g > %.3g", worst,
               gaps[0], gaps[1], gaps[2]);
  return worst <= 1e-9 && gaps[0] > gaps[1] && gaps[1] > gaps[2] &&
         gaps[2] > 0.0;
}

// --- 6: quadratic payoff worked example ---------------------------------------

bool quadratic_price(std::string& detail) {
  const SigModelParams params(1.0, wc({{Word{}, 0.2}}), wc({{Word{}, 0.1}}), 2,
                              2);
  const LevyTriplet trip = primary_process_triplet(2, 1.0, {{-0.5, 2.0}});
  const SigPayoff payoff(wc({{Word{1, 1}, 1.0}}));
  const double analytic = price_sig_payoff(payoff, params, trip, 1.0);
  const McMoments mc = mc_price(payoff, params, trip, 1.0, 100000, 8, 77, 1);
  const double gap = std::abs(mc.mean[0] - analytic);
  detail = fmt("analytic %.6f, mc %.6f +- %.2g (gap/SE %.2f)", analytic,
               mc.mean[0], mc.standard_error[0], gap / mc.standard_error[0]);
  return std::abs(analytic - 0.0225) <= 1e-12 &&
         gap <= 3.0 * mc.standard_error[0];
}

// --- 7: variance-optimal hedging ----------------------------------------------

bool hedging(std::string& detail) {
  // The price itself is replicated by holding one share.
  const SigModelParams unit(1.0, wc({{Word{}, 0.3}}), wc({{Word{}, 0.2}}), 1, 1);
  const LevyTriplet unit_trip = primary_process_triplet(1, 1.0, {{0.5, 2.0}});
  const SigPayoff share(wc({{Word{1}, 1.0}}));
  const SignaturePath unit_sig = primary_signature(unit_trip, 1.0, 10, 7, 1);
  const HedgeReport rep = hedge_strategy(share, unit, unit_trip, 1.0, unit_sig);
  double worst_unit = 0.0;
  for (const double theta : rep.theta_path)
    worst_unit = std::max(worst_unit, std::abs(theta - 1.0));

  // Closed form for a payoff word ending in (-1, 1): the strategy is the
  // lifted strict prefix read at the left limit.
  const SigModelParams params(1.0, wc({{Word{}, 0.2}}), wc({{Word{}, 0.1}}), 2,
                              2);
  const LevyTriplet trip = primary_process_triplet(2, 1.0, {{-0.5, 2.0}});
  const SignaturePath sig = primary_signature(trip, 1.0, 12, 19, 2);
  const HedgeReport clock = hedge_strategy(SigPayoff(wc({{Word{-1, 1}, 1.0}})),
                                           params, trip, 1.0, sig);
  const WordCombination prefix = payoff_lift(Word{-1}, params);
  double worst_clock = 0.0;
  for (std::size_t k = 0; k < sig.node_count(); ++k) {
    const double want = eval(prefix, sig.left_limit(k));
    worst_clock = std::max(worst_clock, std::abs(clock.theta_path[k] - want) /
                                            std::max(1.0, std::abs(want)));
  }

  const HedgePnl pnl =
      hedge_pnl_mc(share, unit, unit_trip, 1.0, 10000, 1000, 13, 1);
  const double ratio = pnl.hedged_variance / pnl.unhedged_variance;
  detail = fmt("|theta-1| %.3g; closed-form gap %.3g; variance ratio %.3g",
               worst_unit, worst_clock, ratio);
  return worst_unit <= 1e-12 && worst_clock <= 1e-10 && ratio <= 0.1;
}

// --- 8: semigroup law and the moment formula -----------------------------------

bool semigroup_and_moments(std::string& detail) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_semi = 0.0, worst_moment = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + int(rng() % 2);
    std::vector<Letter> letters;
    for (int k = 1; k <= dim; ++k) letters.push_back(Letter(k));
    const Alphabet alph(letters);

    std::vector<double> drift(dim);
    for (double& x : drift) x = 2.0 * u(rng) - 1.0;
    std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
    if (u(rng) < 0.7) {
      std::vector<std::vector<double>> a(dim, std::vector<double>(dim));
      for (auto& row : a)
        for (double& x : row) x = 1.4 * u(rng) - 0.7;
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          for (int k = 0; k < dim; ++k) cov[r][c] += a[r][k] * a[c][k];
    }
    std::vector<JumpAtom> atoms;
    const int count = int(rng() % 3);
    for (int i = 0; i < count; ++i) {
      std::vector<double> disp(dim);
      for (double& x : disp) x = 2.0 * u(rng) - 1.0;
      atoms.push_back({disp, 0.2 + 1.8 * u(rng)});
    }
    const LevyTriplet trip(alph, drift, cov, atoms);

    const double s = 0.1 + 0.9 * u(rng), t = 0.1 + 0.9 * u(rng);
    const TensorElement split = tensor_product(expected_signature(trip, s, 4),
                                               expected_signature(trip, t, 4));
    worst_semi = std::max(
        worst_semi, max_abs_diff(expected_signature(trip, s + t, 4), split));

    const TensorElement q = levy_generator(trip, 4);
    const TensorElement exp_qt = expected_signature(q, t);
    for (const Word& w : alph.words_up_to(4))
      worst_moment =
          std::max(worst_moment, std::abs(expected_word_value(q, w, t) -
                                          exp_qt.coeff(w)) /
                                     std::max(1.0, std::abs(exp_qt.coeff(w))));
  }
  detail = fmt("semigroup %.3g, moment series %.3g", worst_semi, worst_moment);
  return worst_semi <= 1e-12 && worst_moment <= 1e-12;
}

// --- 9: path metrics -----------------------------------------------------------

bool metrics(std::string& detail) {
  PathBuilder zig(Alphabet({1}));
  zig.add_node(0.0, {0.0});
  zig.add_node(1.0, {1.0});
  zig.add_node(2.0, {0.0});
  zig.add_node(3.0, {1.0});
  const double pv = p_variation(zig.finish(), 2.0);

  auto step_at = [](double when) {
    PathBuilder b(Alphabet({1}));
    b.add_node(0.0, {0.0});
    b.add_node(when, {0.0});
    b.add_node(when, {1.0}, true);
    b.add_node(1.0, {1.0});
    return b.finish();
  };
  const double d = j1_distance(step_at(0.5), step_at(0.6));
  detail = fmt("2-variation %.15f, step-shift distance %.12f", pv, d);
  return std::abs(pv - std::sqrt(3.0)) <= 1e-12 && std::abs(d - 0.1) <= 1e-9;
}

// --- 10: signature regression ----------------------------------------------------

std::vector<CadlagSamplePath> model_paths(const SigModelParams& params,
                                          const LevyTriplet& trip, int steps,
                                          std::uint64_t master_seed,
                                          std::size_t count) {
  std::vector<CadlagSamplePath> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const SimulationGrid grid =
        simulate_grid(trip, 1.0, steps, path_seed(master_seed, i));
    const CadlagSamplePath x = simulate_levy(trip, grid);
    const SignaturePath xsig = marcus_signature(x, params.ell_degree());
    out.push_back(simulate_model_direct(params, x, xsig));
  }
  return out;
}

bool regression(std::string& detail) {
  const SigModelParams params(1.0, wc({{Word{}, 0.2}}), wc({{Word{}, 0.1}}), 2,
                              2);
  const LevyTriplet trip = primary_process_triplet(2, 1.0, {{-0.5, 2.0}});

  const std::vector<CadlagSamplePath> lin = model_paths(params, trip, 12, 21, 400);
  std::vector<double> targets;
  for (const CadlagSamplePath& p : lin)
    targets.push_back(
        eval(wc({{Word{1, 1}, 1.0}}), marcus_terminal_signature(p, 2)));
  const double linear_rms = fit_path_functional(lin, targets, 2).rms_residual;

  const std::vector<CadlagSamplePath> paths =
      model_paths(params, trip, 16, 55, 1000);
  std::vector<double> peaks;
  for (const CadlagSamplePath& p : paths) {
    double peak = p.value(0, Letter(1));
    for (std::size_t k = 1; k < p.node_count(); ++k)
      peak = std::max(peak, p.value(k, Letter(1)));
    peaks.push_back(peak);
  }
  std::vector<double> rms;
  for (int level = 1; level <= 3; ++level)
    rms.push_back(fit_path_functional(paths, peaks, level).rms_residual);
  detail = fmt("linear rms %.3g; running-max rms %.3g > %.3g > %.3g",
               linear_rms, rms[0], rms[1], rms[2]);
  return linear_rms <= 1e-8 && rms[0] > rms[1] && rms[1] > rms[2] &&
         rms[2] > 0.0;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    bool (*run)(std::string&);
  };
  const std::vector<Criterion> battery{
      {1, "expected-signature Monte Carlo oracle", mc_expected_signature},
      {2, "Poisson closed form", poisson_closed_form},
      {3, "pathwise tilde identity", tilde_identity},
      {4, "Chen relation and shuffle identity", chen_and_shuffle},
      {5, "price representation vs direct simulation", model_representation},
      {6, "quadratic payoff pricing example", quadratic_price},
      {7, "variance-optimal hedging", hedging},
      {8, "semigroup law and moment formula", semigroup_and_moments},
      {9, "p-variation and J1 metrics", metrics},
      {10, "signature regression", regression},
  };

  int failures = 0;
  for (const Criterion& c : battery) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = c.run(detail);
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s %2d %s: %s [%.1f s]\n", ok ? "PASS" : "FAIL", c.id,
                c.label, detail.c_str(), sec);
    std::fflush(stdout);
    failures += !ok;
  }
  return failures;
}
