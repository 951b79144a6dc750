#ifndef SIGMKT_MARKET_SIM_HPP
#define SIGMKT_MARKET_SIM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sigmkt/levy.hpp"
#include "sigmkt/path.hpp"
#include "sigmkt/signature.hpp"
#include "sigmkt/word_calculus.hpp"

namespace sigmkt {

// splitmix64 finalizer; the primitive behind all counter-based sub-seeding.
std::uint64_t mix64(std::uint64_t x);
// Sub-seed of Monte Carlo path `index` under a master seed. Independent of
// how paths are sharded over workers.
std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t index);

// One simulated jump event: atom `atom` of the triplet fires at `time`.
struct GridEvent {
  double time = 0.0;
  int atom = 0;
};

// A uniform grid on [0, horizon] merged with jump times simulated by
// exponential clocks per atom (so jump times carry no discretization bias).
// Times are strictly increasing from 0 to horizon; the duplicate-time node
// pairs for jumps are created by the path simulators, not stored here.
// `seed` is the per-path seed: it produced the events and also drives the
// diffusion draws of simulate_levy on this grid.
struct SimulationGrid {
  double horizon = 0.0;
  int steps = 0;
  std::vector<double> times;
  std::vector<GridEvent> events;
  std::uint64_t seed = 0;
};

SimulationGrid simulate_grid(const LevyTriplet& triplet, double horizon,
                             int steps, std::uint64_t seed);

// One sample path of the triplet's Levy process on the grid: per-cell
// Gaussian increments for the diffusion part, continuous drift at rate
// b - sum lambda_i d_i (so that the jumps restore E[X_t] = b t), and the
// grid's events applied as instantaneous displacement jumps. If the clock
// letter -1 is present its component equals time exactly. Deterministic
// given the grid.
CadlagSamplePath simulate_levy(const LevyTriplet& triplet,
                               const SimulationGrid& grid);

// simulate_levy restricted to triplets built by primary_process_triplet.
// The lifted atoms make the moment components coherent pathwise:
// Delta X^k = (Delta X^1)^k at every jump, and letter 1 carries the
// compensated jump sum with continuous drift -t sum lambda_i x_i.
CadlagSamplePath simulate_primary(const LevyTriplet& triplet,
                                  const SimulationGrid& grid);

// Price path of the signature market model driven by a simulated primary
// path: S = s0 + int <ell_w, X_{t-}> dW + int <ell_nu, X_{t-}> d(mu - nu),
// with left-point Ito sums against the Brownian component and exact
// integration of the finite-variation and jump parts. The result is the
// 1-D price extended over the pair alphabet {-1, 1} with the same nodes and
// jump flags as the primary path.
CadlagSamplePath simulate_model_direct(const SigModelParams& params,
                                       const CadlagSamplePath& primary,
                                       const SignaturePath& sig);

// <sig_model_representation(params), sig at node> for every node. The
// signature must be deep enough to pair every representation word (level
// n d + 1 in the standard case).
std::vector<double> evaluate_model_from_signature(const SigModelParams& params,
                                                  const SignaturePath& sig);

// Equivalent change of measure dP = Z dQ with
//   dZ = Z_{t-} (f(t) dW_t + int (e^{g(x)} - 1) (mu - nu)(dt, dx)),
// where f(t) = <f, X-signature at t-> is a word functional over the letters
// {-1, 2, ..., N} (letter 1 is admitted only when allow_letter_one is set;
// letter 0 never), and g is constant on each jump atom. That Z is a true
// martingale is the caller's obligation; it suffices that
// E exp(1/2 int_0^T f(s)^2 ds) is finite, the jump part being finite always
// for finitely many atoms.
struct MeasureChangeSpec {
  WordCombination f;
  std::vector<double> g;  // one value per triplet atom
  bool allow_letter_one = false;
};

struct MeasureChangeResult {
  // Driving triplet of Y under P: same atoms with intensities lambda e^g.
  LevyTriplet p_triplet;
  // e_J -> e_J^P for every word J in the ell tables.
  std::map<Word, WordCombination> translated;
  // Drift rate of the price under P as a functional of the Q-signature:
  // <ell_w shuffle f, X_{t-}> + <ell_nu, X_{t-}> sum lambda_i x_i (e^{g_i}-1).
  WordCombination drift;
};

// The functional e_J^P with <e_J, X-signature> = <e_J^P, Y-signature>, where
// Y is the primary process under P: Brownian part W - int f dt, letter 1
// recentred by its new compensator, moment letters unchanged. Built by
// recursion on the word; throws when a merged letter exceeds max_moment.
WordCombination measure_change_word(const Word& j,
                                    const MeasureChangeSpec& spec,
                                    const LevyTriplet& triplet, int max_moment);

// Translates the whole model: P-triplet, e_J^P for every coefficient word,
// and the P-drift functional of the price.
MeasureChangeResult measure_change_translate(const SigModelParams& params,
                                             const MeasureChangeSpec& spec,
                                             const LevyTriplet& triplet);

// Per-path sample generator: fill out[0..dim) for the given path index,
// using only the supplied sub-seed for randomness.
using McSample =
    std::function<void(std::uint64_t index, std::uint64_t seed, double* out)>;

struct McMoments {
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::uint64_t count = 0;
};

// Runs `count` samples sharded over `threads` workers. Sums are accumulated
// per fixed-size block of consecutive indices and the blocks are reduced in
// index order, so the result is bit-identical for every worker count.
McMoments mc_run(std::uint64_t count, int dim, std::uint64_t master_seed,
                 int threads, const McSample& sample);

}  // namespace sigmkt

#endif
