#include "sigmkt/market_sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace sigmkt {

namespace {

// Stream tags separating the jump-clock draws from the diffusion draws of
// one per-path seed.
constexpr std::uint64_t kJumpStream = 0xc2b2ae3d27d4eb4fULL;
constexpr std::uint64_t kDiffusionStream = 0x165667b19e3779f9ULL;

double inv_factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i) v /= i;
  return v;
}

// Components of a triplet built by primary_process_triplet; rejects any
// other triplet by exact reconstruction.
struct PrimaryParts {
  int max_moment = 1;
  double variance = 0.0;
  std::vector<ScalarJump> jumps;
};

PrimaryParts split_primary(const LevyTriplet& triplet, const char* caller) {
  try {
    PrimaryDecomposition d = primary_decomposition(triplet);
    return {d.max_moment, d.brownian_variance, std::move(d.jumps)};
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(caller) + ": " + e.what());
  }
}

void validate_grid(const LevyTriplet& triplet, const SimulationGrid& grid,
                   const char* caller) {
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument(std::string(caller) + ": invalid grid (" +
                                what + ")");
  };
  if (!(grid.horizon > 0.0)) fail("horizon must be positive");
  if (grid.steps < 1) fail("needs at least one step");
  if (grid.times.size() < 2 || grid.times.front() != 0.0 ||
      grid.times.back() != grid.horizon)
    fail("times must run from 0 to the horizon");
  for (std::size_t k = 1; k < grid.times.size(); ++k)
    if (!(grid.times[k] > grid.times[k - 1]))
      fail("times must be strictly increasing");
  double prev = 0.0;
  for (const GridEvent& e : grid.events) {
    if (!(e.time > prev))
      fail("event times must be strictly increasing and positive");
    prev = e.time;
    if (e.time > grid.horizon) fail("event beyond the horizon");
    if (e.atom < 0 || std::size_t(e.atom) >= triplet.atoms().size())
      fail("event atom index out of range");
    if (!std::binary_search(grid.times.begin(), grid.times.end(), e.time))
      fail("event time missing from the merged times");
  }
}

// Square-root factor of the covariance: columns scaled by the root of each
// retained eigenvalue, near-null directions dropped. A diagonal covariance
// keeps exact axis columns, so uncorrelated components stay untouched by
// the Gaussian draws.
Eigen::MatrixXd diffusion_factor(const LevyTriplet& triplet) {
  const std::size_t n = triplet.alphabet().size();
  bool diagonal = true;
  for (std::size_t r = 0; r < n && diagonal; ++r)
    for (std::size_t c = 0; c < n && diagonal; ++c)
      if (r != c && triplet.covariance()[r][c] != 0.0) diagonal = false;
  if (diagonal) {
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < n; ++r)
      if (triplet.covariance()[r][r] > 0.0) keep.push_back(r);
    Eigen::MatrixXd factor = Eigen::MatrixXd::Zero(n, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
      factor(keep[c], c) = std::sqrt(triplet.covariance()[keep[c]][keep[c]]);
    return factor;
  }
  Eigen::MatrixXd cov(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) cov(r, c) = triplet.covariance()[r][c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const double floor = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < int(n); ++i)
    if (es.eigenvalues()(i) > floor) keep.push_back(i);
  Eigen::MatrixXd factor(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    factor.col(c) = es.eigenvectors().col(keep[c]) *
                    std::sqrt(es.eigenvalues()(keep[c]));
  return factor;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

SimulationGrid simulate_grid(const LevyTriplet& triplet, double horizon,
                             int steps, std::uint64_t seed) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("simulate_grid: horizon must be positive");
  if (steps < 1)
    throw std::invalid_argument("simulate_grid: needs at least one step");

  SimulationGrid grid;
  grid.horizon = horizon;
  grid.steps = steps;
  grid.seed = seed;

  std::mt19937_64 rng(mix64(seed ^ kJumpStream));
  for (int i = 0; i < int(triplet.atoms().size()); ++i) {
    const double intensity = triplet.atoms()[i].intensity;
    if (!(intensity > 0.0)) continue;
    std::exponential_distribution<double> gap(intensity);
    for (double t = gap(rng); t <= horizon; t += gap(rng))
      grid.events.push_back({t, i});
  }
  std::sort(grid.events.begin(), grid.events.end(),
            [](const GridEvent& a, const GridEvent& b) {
              return a.time != b.time ? a.time < b.time : a.atom < b.atom;
            });
  // Distinct event times keep the at-most-one-jump-per-instant node layout;
  // exact collisions have probability zero but are still resolved.
  for (std::size_t i = 1; i < grid.events.size(); ++i)
    if (grid.events[i].time <= grid.events[i - 1].time)
      grid.events[i].time = std::nextafter(
          grid.events[i - 1].time, std::numeric_limits<double>::infinity());
  while (!grid.events.empty() && grid.events.back().time > horizon)
    grid.events.pop_back();

  grid.times.reserve(std::size_t(steps) + 1 + grid.events.size());
  for (int k = 0; k <= steps; ++k)
    grid.times.push_back(k == steps ? horizon : horizon * double(k) / steps);
  for (const GridEvent& e : grid.events) grid.times.push_back(e.time);
  std::sort(grid.times.begin(), grid.times.end());
  grid.times.erase(std::unique(grid.times.begin(), grid.times.end()),
                   grid.times.end());
  return grid;
}

CadlagSamplePath simulate_levy(const LevyTriplet& triplet,
                               const SimulationGrid& grid) {
  validate_grid(triplet, grid, "simulate_levy");
  const Alphabet& alphabet = triplet.alphabet();
  const std::size_t n = alphabet.size();

  // Continuous drift rate b - sum lambda d: the jumps restore the full mean
  // rate b. The jump means are accumulated in atom order, mirroring the
  // drift construction of primary_process_triplet, so pure-jump components
  // get an exactly zero rate.
  std::vector<double> rate = triplet.drift();
  std::vector<double> jump_mean(n, 0.0);
  for (const JumpAtom& atom : triplet.atoms())
    for (std::size_t a = 0; a < n; ++a)
      jump_mean[a] += atom.intensity * atom.displacement[a];
  for (std::size_t a = 0; a < n; ++a) rate[a] -= jump_mean[a];

  const Eigen::MatrixXd factor = diffusion_factor(triplet);
  const int rank = int(factor.cols());
  std::mt19937_64 rng(mix64(grid.seed ^ kDiffusionStream));
  std::normal_distribution<double> gauss(0.0, 1.0);

  const bool has_clock = alphabet.contains(time_letter);
  const std::size_t clock_axis = has_clock ? alphabet.axis_of(time_letter) : 0;

  PathBuilder builder(alphabet);
  std::vector<double> x(n, 0.0);
  builder.add_node(0.0, x);
  std::size_t next_event = 0;
  for (std::size_t k = 1; k < grid.times.size(); ++k) {
    const double t = grid.times[k];
    const double dt = t - grid.times[k - 1];
    for (std::size_t a = 0; a < n; ++a) x[a] += rate[a] * dt;
    if (rank > 0) {
      const double sq = std::sqrt(dt);
      for (int c = 0; c < rank; ++c) {
        const double z = sq * gauss(rng);
        for (std::size_t a = 0; a < n; ++a) x[a] += factor(a, c) * z;
      }
    }
    if (has_clock) x[clock_axis] = t;  // clock accumulates exactly
    builder.add_node(t, x);
    while (next_event < grid.events.size() &&
           grid.events[next_event].time == t) {
      const JumpAtom& atom = triplet.atoms()[grid.events[next_event].atom];
      for (std::size_t a = 0; a < n; ++a) x[a] += atom.displacement[a];
      builder.add_node(t, x, true);
      ++next_event;
    }
  }
  return builder.finish();
}

CadlagSamplePath simulate_primary(const LevyTriplet& triplet,
                                  const SimulationGrid& grid) {
  split_primary(triplet, "simulate_primary");
  return simulate_levy(triplet, grid);
}

CadlagSamplePath simulate_model_direct(const SigModelParams& params,
                                       const CadlagSamplePath& primary,
                                       const SignaturePath& sig) {
  if (!(primary.alphabet() == params.alphabet()))
    throw std::invalid_argument(
        "simulate_model_direct: primary path alphabet does not match the "
        "model's moment alphabet");
  if (sig.level() < params.ell_degree())
    throw std::invalid_argument(
        "simulate_model_direct: signature level " +
        std::to_string(sig.level()) + " cannot pair coefficient words of "
        "length " + std::to_string(params.ell_degree()));
  const std::vector<double> brownian_part =
      ito_iterated_sum_path(primary, params.ell_w(), brownian_letter, sig);
  const std::vector<double> jump_part =
      ito_iterated_sum_path(primary, params.ell_nu(), Letter(1), sig);

  PathBuilder builder(Alphabet::time_extended_pair());
  for (std::size_t k = 0; k < primary.node_count(); ++k) {
    const double s = params.s0() + brownian_part[k] + jump_part[k];
    builder.add_node(primary.time(k), {primary.time(k), s},
                     primary.is_jump(k));
  }
  return builder.finish();
}

std::vector<double> evaluate_model_from_signature(const SigModelParams& params,
                                                  const SignaturePath& sig) {
  const WordCombination rep = sig_model_representation(params);
  const int bound = params.ell_degree() * params.ell_top_letter() + 1;
  const int needed = std::max(bound, int(rep.max_word_length()));
  if (sig.level() < needed)
    throw std::invalid_argument(
        "evaluate_model_from_signature: signature level " +
        std::to_string(sig.level()) + " is below the required level " +
        std::to_string(needed) + " (bound n d + 1)");
  std::vector<double> out(sig.node_count());
  for (std::size_t k = 0; k < sig.node_count(); ++k)
    out[k] = eval(rep, sig.element(k));
  return out;
}

namespace {

struct TranslateContext {
  int max_moment = 1;
  double c_g = 0.0;              // sum lambda_i x_i (e^{g_i} - 1)
  WordCombination f_translated;  // density functional against the Y-signature
  std::map<Word, WordCombination> memo;
};

void check_f_letters(const WordCombination& f, int max_moment,
                     bool allow_letter_one) {
  for (const auto& [word, coeff] : f.terms()) {
    (void)coeff;
    for (Letter l : word.letters()) {
      if (l == brownian_letter)
        throw std::invalid_argument(
            "measure change: density word " + word.to_string() +
            " loads on the Brownian letter 0, which is never admissible");
      if (l == Letter(1) && !allow_letter_one)
        throw std::invalid_argument(
            "measure change: density word " + word.to_string() +
            " uses letter 1; set allow_letter_one to admit it");
      if (l < time_letter || l > max_moment)
        throw std::invalid_argument(
            "measure change: density word " + word.to_string() +
            " has letters outside the moment alphabet");
    }
  }
}

// e_J^P by recursion on the last letter of J. References into the memo stay
// valid across inserts.
const WordCombination& translate(const Word& w, TranslateContext& ctx) {
  const auto found = ctx.memo.find(w);
  if (found != ctx.memo.end()) return found->second;

  WordCombination out;
  if (w.empty()) {
    out = WordCombination(Word{});
  } else {
    const Letter last = w.last();
    const WordCombination& head = translate(w.drop_last(), ctx);
    // Integral of the translated prefix against dY^{last}.
    out = tilde_transform(head, last, ctx.max_moment);
    // Brownian bracket of the original X-word.
    if (w.size() >= 2 && w[w.size() - 2] == brownian_letter &&
        last == brownian_letter)
      out = add(out, scale(append_letter(translate(w.drop_last(2), ctx),
                                         time_letter),
                           0.5));
    // Higher-order jump terms: every positive-lettered tail of length >= 2
    // collapses onto the merged moment letter.
    for (std::size_t len = 2; len <= w.size(); ++len) {
      const Word tail = w.suffix(w.size() - len);
      if (!tail.all_letters_positive()) continue;
      const WordCombination& front = translate(w.prefix(w.size() - len), ctx);
      out = add(out, scale(tilde_transform(front, Letter(tail.letter_sum()),
                                           ctx.max_moment),
                           inv_factorial(int(len))));
    }
    // dW^Q = dW^P + f dt.
    if (last == brownian_letter && !ctx.f_translated.empty())
      out = add(out,
                append_letter(shuffle(head, ctx.f_translated), time_letter));
    // The letter-1 compensator moves by c_g dt.
    if (last == Letter(1) && ctx.c_g != 0.0)
      out = add(out, scale(append_letter(head, time_letter), ctx.c_g));
  }
  return ctx.memo.emplace(w, std::move(out)).first->second;
}

TranslateContext make_context(const MeasureChangeSpec& spec,
                              const std::vector<ScalarJump>& jumps,
                              int max_moment) {
  check_f_letters(spec.f, max_moment, spec.allow_letter_one);
  if (spec.g.size() != jumps.size())
    throw std::invalid_argument(
        "measure change: needs one g value per jump atom (" +
        std::to_string(jumps.size()) + " atoms, " +
        std::to_string(spec.g.size()) + " values)");
  TranslateContext ctx;
  ctx.max_moment = max_moment;
  for (std::size_t i = 0; i < jumps.size(); ++i)
    ctx.c_g +=
        jumps[i].intensity * jumps[i].size * (std::exp(spec.g[i]) - 1.0);
  // Density words carry no Brownian letter, so translating them never reads
  // f_translated back.
  for (const auto& [word, coeff] : spec.f.terms())
    ctx.f_translated = add(ctx.f_translated, scale(translate(word, ctx),
                                                   coeff));
  return ctx;
}

}  // namespace

WordCombination measure_change_word(const Word& j,
                                    const MeasureChangeSpec& spec,
                                    const LevyTriplet& triplet,
                                    int max_moment) {
  const PrimaryParts parts = split_primary(triplet, "measure_change_word");
  if (parts.max_moment != max_moment)
    throw std::invalid_argument(
        "measure_change_word: triplet top letter " +
        std::to_string(parts.max_moment) + " does not match max_moment " +
        std::to_string(max_moment));
  for (Letter l : j.letters())
    if (l < time_letter || l > max_moment)
      throw std::invalid_argument("measure_change_word: word " +
                                  j.to_string() +
                                  " has letters outside the moment alphabet");
  TranslateContext ctx = make_context(spec, parts.jumps, max_moment);
  return translate(j, ctx);
}

MeasureChangeResult measure_change_translate(const SigModelParams& params,
                                             const MeasureChangeSpec& spec,
                                             const LevyTriplet& triplet) {
  const PrimaryParts parts =
      split_primary(triplet, "measure_change_translate");
  if (parts.max_moment != params.max_moment())
    throw std::invalid_argument(
        "measure_change_translate: triplet top letter " +
        std::to_string(parts.max_moment) + " does not match the model's " +
        std::to_string(params.max_moment()));
  TranslateContext ctx =
      make_context(spec, parts.jumps, params.max_moment());

  std::map<Word, WordCombination> translated;
  for (const WordCombination* table : {&params.ell_w(), &params.ell_nu()})
    for (const auto& [word, coeff] : table->terms()) {
      (void)coeff;
      translated.emplace(word, translate(word, ctx));
    }

  std::vector<ScalarJump> jumps = parts.jumps;
  for (std::size_t i = 0; i < jumps.size(); ++i)
    jumps[i].intensity *= std::exp(spec.g[i]);
  LevyTriplet p_triplet =
      primary_process_triplet(parts.max_moment, parts.variance, jumps);

  WordCombination drift = add(shuffle(params.ell_w(), spec.f),
                              scale(params.ell_nu(), ctx.c_g));
  return {std::move(p_triplet), std::move(translated), std::move(drift)};
}

McMoments mc_run(std::uint64_t count, int dim, std::uint64_t master_seed,
                 int threads, const McSample& sample) {
  if (count == 0)
    throw std::invalid_argument("mc_run: needs at least one sample");
  if (dim < 1)
    throw std::invalid_argument("mc_run: sample dimension must be >= 1");

  constexpr std::uint64_t kBlock = 1024;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> block_sum(blocks,
                                             std::vector<double>(dim, 0.0));
  std::vector<std::vector<double>> block_sq(blocks,
                                            std::vector<double>(dim, 0.0));

  // A throwing sample aborts the run: the first exception (in worker order)
  // is rethrown on the calling thread after every worker has stopped.
  std::atomic<bool> bail{false};
  const auto run_blocks = [&](std::uint64_t b0, std::uint64_t b1,
                              std::exception_ptr* error) {
    try {
      std::vector<double> buf(dim);
      for (std::uint64_t b = b0;
           b < b1 && !bail.load(std::memory_order_relaxed); ++b) {
        const std::uint64_t hi = std::min(count, (b + 1) * kBlock);
        for (std::uint64_t i = b * kBlock; i < hi; ++i) {
          sample(i, path_seed(master_seed, i), buf.data());
          for (int d = 0; d < dim; ++d) {
            block_sum[b][d] += buf[d];
            block_sq[b][d] += buf[d] * buf[d];
          }
        }
      }
    } catch (...) {
      *error = std::current_exception();
      bail.store(true, std::memory_order_relaxed);
    }
  };

  const std::uint64_t workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(
                                     blocks, std::uint64_t(std::max(1, threads))));
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    run_blocks(0, blocks, errors.data());
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (blocks + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t b0 = w * chunk;
      const std::uint64_t b1 = std::min(blocks, b0 + chunk);
      if (b0 >= b1) break;
      pool.emplace_back(run_blocks, b0, b1, &errors[w]);
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& error : errors)
    if (error) std::rethrow_exception(error);

  McMoments out;
  out.count = count;
  out.mean.assign(dim, 0.0);
  out.standard_error.assign(dim, 0.0);
  std::vector<double> sq(dim, 0.0);
  for (std::uint64_t b = 0; b < blocks; ++b)
    for (int d = 0; d < dim; ++d) {
      out.mean[d] += block_sum[b][d];
      sq[d] += block_sq[b][d];
    }
  for (int d = 0; d < dim; ++d) {
    out.mean[d] /= double(count);
    if (count > 1) {
      const double var = std::max(
          0.0, (sq[d] - double(count) * out.mean[d] * out.mean[d]) /
                   double(count - 1));
      out.standard_error[d] = std::sqrt(var / double(count));
    }
  }
  return out;
}

}  // namespace sigmkt
