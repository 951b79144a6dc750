#ifndef SIGMKT_METRICS_HPP
#define SIGMKT_METRICS_HPP

#include <vector>

#include "sigmkt/path.hpp"
#include "sigmkt/tensor.hpp"

namespace sigmkt {

// p-variation of a piecewise-linear cadlag path in the Euclidean metric:
// ( sup over partitions through sample nodes of sum d(X_{t_i}, X_{t_i+1})^p )^(1/p).
// For piecewise-linear paths node partitions attain the supremum. O(M^2)
// dynamic program; paths beyond 10^4 nodes are rejected.
double p_variation(const CadlagSamplePath& path, double p);

// Same dynamic program on a group-valued sequence with the homogeneous norm
// of multiplicative increments g_i^{-1} (x) g_j. All elements must be marked
// group-like and truncated at level >= floor(p).
double rough_p_variation(const std::vector<TensorElement>& points, double p);

// Skorokhod J1 distance: inf over increasing bijections of
// max(|lambda|, sup_s d(a(lambda(s)), b(s))). Computed as a monotone-lattice
// dynamic program over warps anchored at node times, then one local bisection
// refinement of the anchor times. The result is an upper bound on the infimum
// and is exact when some optimal warp aligns node times. Both paths must share
// the alphabet, start time 0 and horizon; sizes are capped at 250 events.
double j1_distance(const CadlagSamplePath& a, const CadlagSamplePath& b);

}  // namespace sigmkt

#endif
